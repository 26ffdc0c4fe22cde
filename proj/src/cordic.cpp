#include "mbss/cordic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace mbss {
namespace {

// Internal datapath: angles carry 40 fractional bits, vector components are
// normalized into [2^29, 2^30) before iterating.
constexpr int kAngleBits = 40;
constexpr int kVectorBits = 30;
constexpr int kMaxIterations = 40;

using Wide = std::int64_t;

const std::array<Wide, kMaxIterations>& atan_table() {
  static const auto table = [] {
    std::array<Wide, kMaxIterations> t{};
    for (int i = 0; i < kMaxIterations; ++i) {
      t[i] = std::llround(std::atan(std::ldexp(1.0, -i)) *
                          std::ldexp(1.0, kAngleBits));
    }
    return t;
  }();
  return table;
}

Wide round_shift(Wide v, int shift) {
  if (shift <= 0) return v << -shift;
  return (v + (Wide{1} << (shift - 1))) >> shift;
}

std::int32_t saturate(Wide raw) {
  return static_cast<std::int32_t>(std::clamp<Wide>(
      raw, FixedPointSample::kMinRaw, FixedPointSample::kMaxRaw));
}

void check_iterations(int iterations) {
  if (iterations < 1 || iterations > kMaxIterations) {
    throw ConfigError("CORDIC iterations must be in [1, 40]");
  }
}

void check_frac_bits(int frac_bits) {
  if (frac_bits < 0 || frac_bits >= FixedPointSample::kTotalBits) {
    throw ConfigError("fractional bits must be in [0, 15]");
  }
}

Wide inverse_gain_q30(int iterations) {
  return std::llround(std::ldexp(1.0 / cordic_gain(iterations), kVectorBits));
}

Wide pi_in_angle_units() { return std::llround(kPi * std::ldexp(1.0, kAngleBits)); }

}  // namespace

FixedPointSample FixedPointSample::from_double(double value, int frac_bits) {
  check_frac_bits(frac_bits);
  const double scaled = std::nearbyint(std::ldexp(value, frac_bits));
  FixedPointSample s;
  s.frac_bits = frac_bits;
  s.raw = static_cast<std::int32_t>(
      std::clamp(scaled, static_cast<double>(kMinRaw), static_cast<double>(kMaxRaw)));
  return s;
}

double FixedPointSample::to_double() const { return std::ldexp(static_cast<double>(raw), -frac_bits); }

double FixedPointSample::lsb() const { return std::ldexp(1.0, -frac_bits); }

double cordic_gain(int iterations) {
  double k = 1.0;
  for (int i = 0; i < iterations; ++i) k *= std::sqrt(1.0 + std::ldexp(1.0, -2 * i));
  return k;
}

PolarFixed cordic_vectoring(FixedPointSample re, FixedPointSample im, int iterations) {
  check_iterations(iterations);
  if (re.frac_bits != im.frac_bits) {
    throw ConfigError("CORDIC inputs must share a fixed-point format");
  }
  const int frac = re.frac_bits;
  PolarFixed out{{0, frac}, {0, frac}};
  Wide x = re.raw;
  Wide y = im.raw;
  if (x == 0 && y == 0) return out;

  // Coarse normalization: shift the larger component up into [2^29, 2^30).
  int shift = 0;
  while (std::max(std::llabs(x), std::llabs(y)) < (Wide{1} << (kVectorBits - 1))) {
    x <<= 1;
    y <<= 1;
    ++shift;
  }

  // Fold the left half-plane onto the right one.
  Wide z = 0;
  if (x < 0) {
    z = (y >= 0) ? pi_in_angle_units() : -pi_in_angle_units();
    x = -x;
    y = -y;
  }

  const auto& atans = atan_table();
  for (int i = 0; i < iterations; ++i) {
    const Wide xs = x >> i;
    const Wide ys = y >> i;
    if (y > 0) {
      x += ys;
      y -= xs;
      z += atans[i];
    } else {
      x -= ys;
      y += xs;
      z -= atans[i];
    }
  }

  const Wide compensated = round_shift(x * inverse_gain_q30(iterations), kVectorBits);
  out.magnitude.raw = saturate(round_shift(compensated, shift));

  // Keep the quantized phase inside (-pi, pi].
  const Wide pi_raw = static_cast<Wide>(std::floor(kPi * std::ldexp(1.0, frac)));
  out.phase.raw = static_cast<std::int32_t>(
      std::clamp<Wide>(round_shift(z, kAngleBits - frac), -pi_raw, pi_raw));
  return out;
}

SinCosFixed cordic_rotation(FixedPointSample theta, int iterations) {
  check_iterations(iterations);
  const int frac = theta.frac_bits;
  Wide z = Wide{theta.raw} << (kAngleBits - frac);

  // Reduce to [-pi/2, pi/2], where the iteration converges.
  const Wide pi = pi_in_angle_units();
  bool negate = false;
  if (z > pi / 2) {
    z -= pi;
    negate = true;
  } else if (z < -pi / 2) {
    z += pi;
    negate = true;
  }

  Wide x = Wide{1} << kVectorBits;
  Wide y = 0;
  const auto& atans = atan_table();
  for (int i = 0; i < iterations; ++i) {
    const Wide xs = x >> i;
    const Wide ys = y >> i;
    if (z >= 0) {
      x -= ys;
      y += xs;
      z -= atans[i];
    } else {
      x += ys;
      y -= xs;
      z += atans[i];
    }
  }

  const Wide inv_gain = inverse_gain_q30(iterations);
  Wide c = round_shift(round_shift(x * inv_gain, kVectorBits), kVectorBits - frac);
  Wide s = round_shift(round_shift(y * inv_gain, kVectorBits), kVectorBits - frac);
  if (negate) {
    c = -c;
    s = -s;
  }
  return {{saturate(c), frac}, {saturate(s), frac}};
}

namespace {

// Exponent e such that every |value| * 2^-e is below one.
int block_exponent(double max_abs) {
  if (max_abs == 0.0) return 0;
  int e = 0;
  std::frexp(max_abs, &e);
  return e;
}

}  // namespace

MagPhaseSpectrum cordic_to_mag_phase(const ComplexSpectrum& spectrum, int iterations) {
  double peak = 0.0;
  for (const auto& c : spectrum.bins) {
    peak = std::max({peak, std::abs(c.real()), std::abs(c.imag())});
  }
  const int exponent = block_exponent(peak);

  MagPhaseSpectrum mp;
  mp.frame_index = spectrum.frame_index;
  mp.magnitudes.reserve(spectrum.size());
  mp.phases.reserve(spectrum.size());
  for (const auto& c : spectrum.bins) {
    const auto re = FixedPointSample::from_double(std::ldexp(c.real(), -exponent));
    const auto im = FixedPointSample::from_double(std::ldexp(c.imag(), -exponent));
    const PolarFixed polar = cordic_vectoring(re, im, iterations);
    mp.magnitudes.push_back(std::ldexp(polar.magnitude.to_double(), exponent));
    mp.phases.push_back(polar.phase.to_double());
  }
  return mp;
}

ComplexSpectrum cordic_from_mag_phase(const MagPhaseSpectrum& mp, int iterations) {
  if (mp.magnitudes.size() != mp.phases.size()) {
    throw DataError("magnitude and phase lengths differ");
  }
  const double peak =
      mp.magnitudes.empty() ? 0.0 : *std::max_element(mp.magnitudes.begin(), mp.magnitudes.end());
  const int exponent = block_exponent(peak);

  ComplexSpectrum out;
  out.frame_index = mp.frame_index;
  out.bins.reserve(mp.size());
  for (std::size_t i = 0; i < mp.size(); ++i) {
    const double mag = FixedPointSample::from_double(std::ldexp(mp.magnitudes[i], -exponent)).to_double();
    const SinCosFixed sc = cordic_rotation(FixedPointSample::from_double(mp.phases[i]), iterations);
    out.bins.emplace_back(std::ldexp(mag * sc.cos.to_double(), exponent),
                          std::ldexp(mag * sc.sin.to_double(), exponent));
  }
  return out;
}

PipelineDelay total_pipeline_delay(const LatencyModel& model) {
  PipelineDelay d;
  d.units = model.fft_delay + model.magphase_delay + model.op_delay +
            model.sincos_delay + model.ifft_delay;
  d.seconds = static_cast<double>(d.units) / model.clock_hz;
  return d;
}

std::string format_latency(const LatencyModel& model) {
  const PipelineDelay d = total_pipeline_delay(model);
  std::ostringstream os;
  os << "FFT                         " << model.fft_delay << "\n"
     << "Magnitude-phase extraction  " << model.magphase_delay << "\n"
     << "Magnitude/phase operation   " << model.op_delay << "\n"
     << "CORDIC sin/cos              " << model.sincos_delay << "\n"
     << "IFFT                        " << model.ifft_delay << "\n";
  std::ostringstream us;
  us << std::setprecision(12) << d.seconds * 1e6;
  os << d.units << " units, " << us.str() << " us\n";
  return os.str();
}

}  // namespace mbss
