#include "mbss/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mbss {

TimeSignal speech_surrogate(const SurrogateOptions& options) {
  if (!(options.sample_rate > 0.0)) throw ConfigError("sample rate must be positive");
  if (!(options.duration_s > 0.0)) throw ConfigError("duration must be positive");

  const double fs = options.sample_rate;
  const auto total = static_cast<std::size_t>(std::llround(options.duration_s * fs));
  TimeSignal out;
  out.sample_rate = fs;
  out.samples.assign(total, 0.0);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> pitch(100.0, 220.0);
  std::uniform_real_distribution<double> syllable_s(0.15, 0.35);
  std::uniform_real_distribution<double> pause_s(0.03, 0.12);
  std::uniform_real_distribution<double> level(0.5, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  const double top_hz = std::min(3500.0, 0.45 * fs);

  std::size_t pos = std::min(options.lead_in_samples, total);
  while (pos < total) {
    const auto len = std::min(total - pos, static_cast<std::size_t>(syllable_s(rng) * fs));
    const double f0 = pitch(rng);
    const double gain = level(rng);
    // Slight pitch glide across the syllable.
    const double glide = 1.0 + 0.1 * (level(rng) - 0.75);
    const int harmonics = static_cast<int>(top_hz / f0);
    std::vector<double> offsets(static_cast<std::size_t>(harmonics));
    for (auto& o : offsets) o = phase(rng);

    double theta = 0.0;
    for (std::size_t n = 0; n < len; ++n) {
      const double t = static_cast<double>(n) / static_cast<double>(len);
      const double f = f0 * (1.0 + (glide - 1.0) * t);
      theta += 2.0 * kPi * f / fs;
      const double envelope = 0.5 * (1.0 - std::cos(2.0 * kPi * t));
      double v = 0.0;
      for (int h = 1; h <= harmonics; ++h) {
        v += std::sin(h * theta + offsets[static_cast<std::size_t>(h - 1)]) / h;
      }
      out.samples[pos + n] = gain * envelope * v;
    }
    pos += len + static_cast<std::size_t>(pause_s(rng) * fs);
  }

  double peak = 0.0;
  for (double s : out.samples) peak = std::max(peak, std::abs(s));
  if (peak > 0.0) {
    for (double& s : out.samples) s *= 0.5 / peak;
  }
  return out;
}

TimeSignal white_noise(std::size_t samples, double sample_rate, std::uint64_t seed,
                       double stddev) {
  TimeSignal out;
  out.sample_rate = sample_rate;
  out.samples.resize(samples);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, stddev);
  for (double& s : out.samples) s = dist(rng);
  return out;
}

}  // namespace mbss
