#include "mbss/noise_profile.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace mbss {

NoiseProfile NoiseProfile::zeros(std::size_t bins) {
  NoiseProfile p;
  p.noise_mag.assign(bins, 0.0);
  p.noise_phase.assign(bins, 0.0);
  p.frames_used = 1;
  return p;
}

void NoiseProfile::validate() const {
  if (noise_mag.size() != noise_phase.size()) {
    throw DataError("noise profile magnitude and phase lengths differ");
  }
  if (frames_used < 1) throw DataError("noise profile must use at least one frame");
  for (std::size_t b = 0; b < noise_mag.size(); ++b) {
    if (!(noise_mag[b] >= 0.0) || !std::isfinite(noise_mag[b])) {
      throw DataError("noise magnitudes must be finite and non-negative");
    }
    if (!(noise_phase[b] > -kPi && noise_phase[b] <= kPi)) {
      throw DataError("noise phases must lie in (-pi, pi]");
    }
  }
}

NoiseProfile estimate_noise(std::span<const MagPhaseSpectrum> frames, std::size_t k) {
  if (k < 1) throw ConfigError("noise frame count must be at least 1");
  if (frames.size() < k) throw DataError("insufficient leading noise frames");

  const MagPhaseSpectrum& first = frames.front();
  const std::size_t bins = first.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (frames[i].magnitudes.size() != bins || frames[i].phases.size() != bins) {
      throw DataError("noise frames differ in length");
    }
  }

  NoiseProfile p;
  p.frames_used = k;
  p.noise_mag.resize(bins);
  p.noise_phase.resize(bins);
  const double inv_k = 1.0 / static_cast<double>(k);
  for (std::size_t b = 0; b < bins; ++b) {
    // Deviations from the first frame, so that k identical frames reproduce
    // it exactly.
    const double mag0 = first.magnitudes[b];
    const double ph0 = first.phases[b];
    double dmag = 0.0;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      dmag += frames[i].magnitudes[b] - mag0;
      const double d = frames[i].phases[b] - ph0;
      re += std::cos(d);
      im += std::sin(d);
    }
    p.noise_mag[b] = mag0 + dmag * inv_k;
    const double offset = (re == 0.0 && im == 0.0) ? 0.0 : std::atan2(im, re);
    p.noise_phase[b] = wrap_phase(ph0 + offset);
  }
  return p;
}

NoiseProfile update_noise(const NoiseProfile& profile, const MagPhaseSpectrum& frame,
                          double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw ConfigError("noise update weight must be in [0, 1]");
  }
  if (frame.size() != profile.size() || frame.phases.size() != profile.size()) {
    throw DataError("frame and noise profile lengths differ");
  }
  if (weight == 0.0) return profile;

  NoiseProfile next = profile;
  for (std::size_t b = 0; b < profile.size(); ++b) {
    next.noise_mag[b] = weight == 1.0
                            ? frame.magnitudes[b]
                            : (1.0 - weight) * profile.noise_mag[b] + weight * frame.magnitudes[b];
    if (weight == 1.0) {
      next.noise_phase[b] = frame.phases[b];
      continue;
    }
    const double re = (1.0 - weight) * std::cos(profile.noise_phase[b]) +
                      weight * std::cos(frame.phases[b]);
    const double im = (1.0 - weight) * std::sin(profile.noise_phase[b]) +
                      weight * std::sin(frame.phases[b]);
    next.noise_phase[b] = (re == 0.0 && im == 0.0) ? 0.0 : wrap_phase(std::atan2(im, re));
  }
  return next;
}

void write_profile(std::ostream& os, const NoiseProfile& profile) {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "# frames_used " << profile.frames_used << "\n";
  os << "# bin magnitude phase\n";
  for (std::size_t b = 0; b < profile.size(); ++b) {
    os << b << ' ' << profile.noise_mag[b] << ' ' << profile.noise_phase[b] << '\n';
  }
  os.precision(old_precision);
}

NoiseProfile read_profile(std::istream& is) {
  NoiseProfile p;
  p.frames_used = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "frames_used") ls >> p.frames_used;
      continue;
    }
    std::size_t bin = 0;
    double mag = 0.0, phase = 0.0;
    if (!(ls >> bin >> mag >> phase) || bin != p.noise_mag.size()) {
      throw DataError("malformed noise profile at line " + std::to_string(line_no));
    }
    p.noise_mag.push_back(mag);
    p.noise_phase.push_back(phase);
  }
  if (p.noise_mag.empty()) throw DataError("noise profile is empty");
  p.validate();
  return p;
}

}  // namespace mbss
