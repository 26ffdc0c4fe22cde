#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "mbss/spectral.hpp"

namespace mbss {

// Per-bin noise magnitude and phase estimated from the leading frames.
struct NoiseProfile {
  std::vector<double> noise_mag;
  std::vector<double> noise_phase;
  std::size_t frames_used = 1;

  std::size_t size() const { return noise_mag.size(); }

  // All-zero profile of `bins` bins (no subtraction takes place).
  static NoiseProfile zeros(std::size_t bins);
  void validate() const;
};

inline constexpr std::size_t kDefaultNoiseFrames = 5;

// Freezes the first `k` spectra into a profile: arithmetic mean of the
// magnitudes, circular mean of the phases. Later frames are ignored.
NoiseProfile estimate_noise(std::span<const MagPhaseSpectrum> frames, std::size_t k);

// Exponential refresh towards `frame`. weight 0 keeps the profile as is.
NoiseProfile update_noise(const NoiseProfile& profile, const MagPhaseSpectrum& frame,
                          double weight);

// Plain-text table: a "# frames_used K" line, then "bin magnitude phase" rows.
void write_profile(std::ostream& os, const NoiseProfile& profile);
NoiseProfile read_profile(std::istream& is);

}  // namespace mbss
