#pragma once

#include <cstdint>
#include <string>

#include "mbss/spectral.hpp"

namespace mbss {

// A 16-bit two's complement fixed-point value with `frac_bits` fractional
// bits. The default Q2.13 split spans [-4, 4) and holds phases in (-pi, pi].
struct FixedPointSample {
  static constexpr int kTotalBits = 16;
  static constexpr std::int32_t kMaxRaw = (1 << (kTotalBits - 1)) - 1;
  static constexpr std::int32_t kMinRaw = -(1 << (kTotalBits - 1));

  std::int32_t raw = 0;
  int frac_bits = 13;

  // Rounds to nearest and saturates at the 16-bit range.
  static FixedPointSample from_double(double value, int frac_bits = 13);
  double to_double() const;
  double lsb() const;
};

struct PolarFixed {
  FixedPointSample magnitude;
  FixedPointSample phase;  // radians
};

struct SinCosFixed {
  FixedPointSample cos;
  FixedPointSample sin;
};

inline constexpr int kDefaultCordicIterations = 16;

// Product of sqrt(1 + 2^-2i) for i in [0, iterations).
double cordic_gain(int iterations);

// Vectoring mode: rotates (re, im) onto the positive real axis, accumulating
// the angle. Returns the gain-compensated magnitude and the phase in radians.
// Both inputs must share one fractional split. (0, 0) yields (0, 0).
PolarFixed cordic_vectoring(FixedPointSample re, FixedPointSample im,
                            int iterations = kDefaultCordicIterations);

// Rotation mode: rotates (1, 0) by `theta` (radians, in (-pi, pi]).
SinCosFixed cordic_rotation(FixedPointSample theta,
                            int iterations = kDefaultCordicIterations);

// Spectrum-level conversions through the fixed-point datapath. Each frame is
// scaled by one power of two (block floating point) so that every component
// fits the 16-bit input range before quantization; the scale is undone on the
// way out.
MagPhaseSpectrum cordic_to_mag_phase(const ComplexSpectrum& spectrum,
                                     int iterations = kDefaultCordicIterations);
ComplexSpectrum cordic_from_mag_phase(const MagPhaseSpectrum& mp,
                                      int iterations = kDefaultCordicIterations);

// Unit delays of each pipeline stage. Magnitude and phase operations run
// concurrently, so `op_delay` is counted once.
struct LatencyModel {
  std::int64_t fft_delay = 278;
  std::int64_t magphase_delay = 13;
  std::int64_t op_delay = 24;
  std::int64_t sincos_delay = 11;
  std::int64_t ifft_delay = 278;
  double clock_hz = 100e6;
};

struct PipelineDelay {
  std::int64_t units = 0;
  double seconds = 0.0;
};

PipelineDelay total_pipeline_delay(const LatencyModel& model);

// Multi-line per-block breakdown followed by "<units> units, <us> us".
std::string format_latency(const LatencyModel& model);

}  // namespace mbss
