#include <sstream>

#include "doctest.h"
#include "mbss/app.hpp"
#include "mbss/synth.hpp"

using namespace mbss;

TEST_CASE("compare produces one row per level and algorithm, in order") {
  const TimeSignal clean = speech_surrogate({});
  const TimeSignal noise = white_noise(clean.size(), 8000, 2);
  const std::vector<double> levels{-3, 0, 3, 8, 10};
  const SnrReport serial = compare(clean, noise, levels, EnhancerConfig{}, "white");
  REQUIRE(serial.rows.size() == 20);
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].input_snr_db == levels[i / 4]);
    CHECK(serial.rows[i].algorithm == kComparisonOrder[i % 4]);
    CHECK(serial.rows[i].noise_name == "white");
  }

  const SnrReport parallel = compare(clean, noise, levels, EnhancerConfig{}, "white", 6);
  CHECK(parallel.rows == serial.rows);

  std::stringstream csv;
  serial.write_csv(csv);
  CHECK(SnrReport::read_csv(csv).rows == serial.rows);
}

TEST_CASE("compare rejects a silent noise source") {
  const TimeSignal clean = speech_surrogate({});
  TimeSignal silent;
  silent.samples.assign(clean.size(), 0.0);
  const std::vector<double> levels{0};
  CHECK_THROWS_AS(compare(clean, silent, levels, EnhancerConfig{}, "silent"), DataError);
}

TEST_CASE("synthetic generators are deterministic per seed") {
  SurrogateOptions o;
  o.seed = 4;
  CHECK(speech_surrogate(o).samples == speech_surrogate(o).samples);
  SurrogateOptions other = o;
  other.seed = 5;
  CHECK(speech_surrogate(o).samples != speech_surrogate(other).samples);
  CHECK(white_noise(100, 8000, 1).samples == white_noise(100, 8000, 1).samples);

  const TimeSignal s = speech_surrogate(o);
  for (std::size_t i = 0; i < o.lead_in_samples; ++i) REQUIRE(s.samples[i] == 0.0);
}

TEST_CASE("config text") {
  EnhancerConfig c;
  apply_config_text(
      "# comment\n"
      "algorithm = mbmss\n"
      "bands = 8\n"
      "frame=512\n"
      "beta = 0.02\n"
      "gamma = 2\n"
      "noise_frames = 3\n"
      "snr_mode = max-amplitude\n"
      "arithmetic = fixed-cordic\n"
      "share_alpha = true\n"
      "threads = 2\n",
      c);
  CHECK(c.algorithm == Algorithm::kMbmss);
  CHECK(c.n_bands == 8);
  CHECK(c.frame_len == 512);
  CHECK(c.beta == 0.02);
  CHECK(c.gamma == 2);
  CHECK(c.noise_frames == 3);
  CHECK(c.snr_mode == SnrMode::kMaxAmplitude);
  CHECK(c.arithmetic == Arithmetic::kFixedCordic);
  CHECK(c.share_alpha);
  CHECK(c.threads == 2);

  CHECK_THROWS_AS(apply_config_text("colour = blue\n", c), ConfigError);
  CHECK_THROWS_AS(apply_config_text("bands = many\n", c), ConfigError);
  CHECK_THROWS_AS(apply_config_text("just words\n", c), ConfigError);
}

TEST_CASE("band summary lists every band") {
  const TimeSignal clean = speech_surrogate({});
  const TimeSignal mix = mix_at_snr(clean, white_noise(clean.size(), 8000, 2), 0.0);
  const std::string s = band_summary(mix, EnhancerConfig{}, 0);
  CHECK(s.find("MBMPSS") != std::string::npos);
  CHECK(s.find("96-127") != std::string::npos);
  CHECK(s.find("phase_alpha") != std::string::npos);
}
