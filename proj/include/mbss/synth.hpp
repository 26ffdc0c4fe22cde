#pragma once

#include <cstddef>
#include <cstdint>

#include "mbss/spectral.hpp"

namespace mbss {

struct SurrogateOptions {
  double sample_rate = 8000.0;
  double duration_s = 3.0;
  // Silent lead-in so the first frames carry noise only.
  std::size_t lead_in_samples = 5 * 256;
  std::uint64_t seed = 1;
};

// Deterministic stand-in for clean speech: syllable-like bursts of harmonic
// tones (random pitch, 1/h spectral tilt, raised-cosine envelopes) separated
// by short pauses, peak-normalized to 0.5.
TimeSignal speech_surrogate(const SurrogateOptions& options);

// Zero-mean Gaussian white noise with the given standard deviation.
TimeSignal white_noise(std::size_t samples, double sample_rate, std::uint64_t seed,
                       double stddev = 0.1);

}  // namespace mbss
