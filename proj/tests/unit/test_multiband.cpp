#include <cmath>
#include <random>

#include "doctest.h"
#include "mbss/multiband.hpp"

using namespace mbss;

TEST_CASE("linear partitions") {
  const auto p = partition(128, 4);
  REQUIRE(p.n_bands() == 4);
  CHECK(p.bands[0] == Band{0, 31});
  CHECK(p.bands[1] == Band{32, 63});
  CHECK(p.bands[2] == Band{64, 95});
  CHECK(p.bands[3] == Band{96, 127});

  const auto r = partition(130, 4);
  CHECK(r.bands[3] == Band{96, 129});

  const auto one = partition(8, 1);
  REQUIRE(one.n_bands() == 1);
  CHECK(one.bands[0] == Band{0, 7});

  CHECK_THROWS_AS(partition(4, 5), ConfigError);
  CHECK_THROWS_AS(partition(4, 0), ConfigError);
}

TEST_CASE("property: partitions tile the bins") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t bins = std::uniform_int_distribution<std::size_t>(1, 512)(rng);
    const std::size_t bands = std::uniform_int_distribution<std::size_t>(1, bins)(rng);
    const auto p = partition(bins, bands);
    REQUIRE_NOTHROW(p.validate());
    REQUIRE(p.n_bands() == bands);
    for (std::size_t i = 0; i + 1 < bands; ++i) REQUIRE(p.bands[i].size() == bins / bands);
  }
}

TEST_CASE("partition validation catches gaps and overlaps") {
  BandPartition gap{{{0, 3}, {5, 7}}, 8};
  CHECK_THROWS_AS(gap.validate(), DataError);
  BandPartition overlap{{{0, 4}, {4, 7}}, 8};
  CHECK_THROWS_AS(overlap.validate(), DataError);
  BandPartition short_cover{{{0, 3}}, 8};
  CHECK_THROWS_AS(short_cover.validate(), DataError);
}

TEST_CASE("segmental SNR") {
  const std::vector<double> n{1.0, 2.0, 0.5};
  const std::vector<double> y2{2.0, 4.0, 1.0};
  for (SnrMode mode : {SnrMode::kEnergyRatio, SnrMode::kMaxAmplitude}) {
    CHECK(segmental_snr(n, n, mode) == doctest::Approx(0.0));
    CHECK(segmental_snr(y2, n, mode) == doctest::Approx(6.0206).epsilon(1e-5));
    CHECK(segmental_snr(y2, std::vector<double>(3, 0.0), mode) == 40.0);
    CHECK(segmental_snr(std::vector<double>(3, 0.0), n, mode) == -40.0);
  }
  CHECK(segmental_snr(std::vector<double>{1e9}, std::vector<double>{1.0}, SnrMode::kEnergyRatio) ==
        40.0);
  CHECK_THROWS_AS(segmental_snr(n, std::span(y2).first(2), SnrMode::kEnergyRatio), DataError);
}

TEST_CASE("property: segmental SNR is scale invariant") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> y(16), n(16);
    for (auto& v : y) v = u(rng);
    for (auto& v : n) v = u(rng);
    const double c = u(rng) * 10.0;
    std::vector<double> yc(y), nc(n);
    for (auto& v : yc) v *= c;
    for (auto& v : nc) v *= c;
    for (SnrMode mode : {SnrMode::kEnergyRatio, SnrMode::kMaxAmplitude}) {
      CHECK(segmental_snr(yc, nc, mode) == doctest::Approx(segmental_snr(y, n, mode)).epsilon(1e-12));
    }
  }
}

TEST_CASE("over-subtraction factor") {
  CHECK(over_subtraction_factor(-10.0) == 5.0);
  CHECK(over_subtraction_factor(-8.0) == 5.0);
  CHECK(over_subtraction_factor(-20.0 / 3.0) == doctest::Approx(5.0));
  CHECK(over_subtraction_factor(-5.0) == doctest::Approx(4.75));
  CHECK(over_subtraction_factor(0.0) == 4.0);
  CHECK(over_subtraction_factor(20.0) == 1.0);
  CHECK(over_subtraction_factor(30.0) == 1.0);
  CHECK(over_subtraction_factor(10.0) == doctest::Approx(2.5));
}

TEST_CASE("property: alpha is monotone, bounded and continuous") {
  double prev = over_subtraction_factor(-60.0);
  for (double s = -60.0; s <= 60.0; s += 0.01) {
    const double a = over_subtraction_factor(s);
    REQUIRE(a <= prev + 1e-15);
    REQUIRE(a >= 1.0);
    REQUIRE(a <= 5.0);
    REQUIRE(std::abs(over_subtraction_factor(s + 1e-6) - a) <= 0.15 * 1e-6 + 1e-12);
    prev = a;
  }
}

TEST_CASE("tweaking factor") {
  CHECK(tweaking_factor(500, 8000) == 1.0);
  CHECK(tweaking_factor(1000, 8000) == 2.5);
  CHECK(tweaking_factor(1500, 8000) == 2.5);
  CHECK(tweaking_factor(2000, 8000) == 2.5);
  CHECK(tweaking_factor(3500, 8000) == 1.5);
  CHECK(tweaking_factor(6500, 16000) == 1.5);
  CHECK(tweaking_factor(6000, 16000) == 2.5);
  CHECK_THROWS_AS(tweaking_factor(6500, 8000), ConfigError);
  CHECK_THROWS_AS(tweaking_factor(0, 8000), ConfigError);
  for (double f = 10.0; f <= 4000.0; f += 10.0) {
    const double d = tweaking_factor(f, 8000);
    REQUIRE((d == 1.0 || d == 1.5 || d == 2.5));
  }
}

TEST_CASE("band gains") {
  const auto p = partition(128, 4);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  MagPhaseSpectrum frame;
  frame.magnitudes.resize(256);
  frame.phases.assign(256, 0.0);
  for (auto& m : frame.magnitudes) m = u(rng);

  NoiseProfile same;
  same.noise_mag = frame.magnitudes;
  same.noise_phase = frame.phases;
  const BandGains g = band_gains(frame, same, p, 8000, SnrMode::kEnergyRatio);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(g.snr_db[i] == doctest::Approx(0.0));
    CHECK(g.alpha[i] == doctest::Approx(4.0));
  }
  CHECK(g.delta == std::vector<double>{2.5, 2.5, 1.5, 1.5});

  const BandGains z = band_gains(frame, NoiseProfile::zeros(256), p, 8000, SnrMode::kMaxAmplitude);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(z.snr_db[i] == 40.0);
    CHECK(z.alpha[i] == 1.0);
  }

  const BandGains single =
      band_gains(frame, same, partition(128, 1), 8000, SnrMode::kEnergyRatio);
  CHECK(single.delta == std::vector<double>{1.0});

  const BandGains wide = band_gains(frame, same, p, 16000, SnrMode::kEnergyRatio);
  CHECK(wide.delta == std::vector<double>{2.5, 2.5, 2.5, 1.5});
}

TEST_CASE("property: band gains respect their invariants") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t bands = std::uniform_int_distribution<std::size_t>(1, 16)(rng);
    std::vector<double> y(65), n(65);
    for (auto& v : y) v = u(rng);
    for (auto& v : n) v = u(rng) * (trial % 3);
    const BandGains g = band_gains(y, n, partition(64, bands), 8000, SnrMode::kEnergyRatio);
    for (std::size_t i = 0; i < bands; ++i) {
      REQUIRE(g.alpha[i] >= 1.0);
      REQUIRE(g.alpha[i] <= 5.0);
      REQUIRE((g.delta[i] == 1.0 || g.delta[i] == 1.5 || g.delta[i] == 2.5));
      REQUIRE(std::abs(g.snr_db[i]) <= 40.0);
    }
  }
}
