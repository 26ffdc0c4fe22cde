#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "mbss/error.hpp"

namespace mbss {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Mono audio with its sample rate in Hz.
struct TimeSignal {
  std::vector<double> samples;
  double sample_rate = 8000.0;

  // Throws ConfigError on a non-positive rate, DataError on non-finite samples.
  void validate() const;
  std::size_t size() const { return samples.size(); }
};

// One block of `samples.size()` consecutive samples. `valid` counts the
// samples taken from the signal; the remainder of a partial frame is zeros.
struct Frame {
  std::vector<double> samples;
  std::size_t index = 0;
  std::size_t valid = 0;

  bool partial() const { return valid < samples.size(); }
};

struct ComplexSpectrum {
  std::vector<Complex> bins;
  std::size_t frame_index = 0;

  std::size_t size() const { return bins.size(); }
};

// Polar form of a spectrum. Phases lie in (-pi, pi].
struct MagPhaseSpectrum {
  std::vector<double> magnitudes;
  std::vector<double> phases;
  std::size_t frame_index = 0;

  std::size_t size() const { return magnitudes.size(); }
};

constexpr bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

// Maps any angle into (-pi, pi].
double wrap_phase(double radians);

// Splits a signal into contiguous non-overlapping frames of `frame_len`.
// A trailing remainder becomes a zero-padded frame flagged as partial.
std::vector<Frame> segment(const TimeSignal& signal, std::size_t frame_len);

// Unnormalized forward DFT, X[k] = sum_m x[m] exp(-j 2 pi k m / N).
ComplexSpectrum fft(const Frame& frame);
// In-place radix-2 transform. `inverse` flips the twiddle sign and applies 1/N.
void fft_in_place(std::span<Complex> data, bool inverse);
// Inverse DFT with 1/N normalization; the real part of the result is kept.
Frame ifft(const ComplexSpectrum& spectrum);

MagPhaseSpectrum to_mag_phase(const ComplexSpectrum& spectrum);
ComplexSpectrum from_mag_phase(const MagPhaseSpectrum& mp);

}  // namespace mbss
