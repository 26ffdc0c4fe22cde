#include "mbss/spectral.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace mbss {

void TimeSignal::validate() const {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw ConfigError("sample rate must be positive");
  }
  for (double s : samples) {
    if (!std::isfinite(s)) throw DataError("signal contains non-finite samples");
  }
}

double wrap_phase(double radians) {
  double w = std::remainder(radians, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  if (w > kPi) w -= 2.0 * kPi;
  return w;
}

std::vector<Frame> segment(const TimeSignal& signal, std::size_t frame_len) {
  if (frame_len < 2 || !is_power_of_two(frame_len)) {
    throw ConfigError("frame length must be a power of two");
  }
  if (signal.samples.empty()) throw DataError("signal too short");

  const std::size_t n = signal.samples.size();
  const std::size_t count = (n + frame_len - 1) / frame_len;
  std::vector<Frame> frames;
  frames.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Frame f;
    f.index = i;
    f.samples.assign(frame_len, 0.0);
    const std::size_t begin = i * frame_len;
    f.valid = std::min(frame_len, n - begin);
    std::copy_n(signal.samples.begin() + static_cast<std::ptrdiff_t>(begin),
                f.valid, f.samples.begin());
    frames.push_back(std::move(f));
  }
  return frames;
}

void fft_in_place(std::span<Complex> data, bool inverse) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw ConfigError("FFT length must be a power of two, got " +
                      std::to_string(n));
  }
  if (n == 1) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // Twiddles evaluated directly rather than by recurrence to keep the
    // error at a few ulps for every stage.
    std::vector<Complex> twiddle(half);
    for (std::size_t k = 0; k < half; ++k) {
      twiddle[k] = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) /
                                       static_cast<double>(len));
    }
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = data[start + k];
        const Complex v = data[start + k + half] * twiddle[k];
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : data) c *= scale;
  }
}

ComplexSpectrum fft(const Frame& frame) {
  ComplexSpectrum out;
  out.frame_index = frame.index;
  out.bins.assign(frame.samples.begin(), frame.samples.end());
  fft_in_place(out.bins, false);
  return out;
}

Frame ifft(const ComplexSpectrum& spectrum) {
  std::vector<Complex> work = spectrum.bins;
  fft_in_place(work, true);
  Frame out;
  out.index = spectrum.frame_index;
  out.valid = work.size();
  out.samples.reserve(work.size());
  for (const auto& c : work) out.samples.push_back(c.real());
  return out;
}

MagPhaseSpectrum to_mag_phase(const ComplexSpectrum& spectrum) {
  MagPhaseSpectrum mp;
  mp.frame_index = spectrum.frame_index;
  mp.magnitudes.reserve(spectrum.size());
  mp.phases.reserve(spectrum.size());
  for (const auto& c : spectrum.bins) {
    const double mag = std::hypot(c.real(), c.imag());
    mp.magnitudes.push_back(mag);
    // atan2 may return -pi for (negative, -0.0); fold it onto +pi.
    mp.phases.push_back(mag == 0.0 ? 0.0
                                   : wrap_phase(std::atan2(c.imag(), c.real())));
  }
  return mp;
}

ComplexSpectrum from_mag_phase(const MagPhaseSpectrum& mp) {
  if (mp.magnitudes.size() != mp.phases.size()) {
    throw DataError("magnitude and phase lengths differ");
  }
  ComplexSpectrum out;
  out.frame_index = mp.frame_index;
  out.bins.reserve(mp.size());
  for (std::size_t i = 0; i < mp.size(); ++i) {
    const double m = mp.magnitudes[i];
    const double p = mp.phases[i];
    out.bins.emplace_back(m * std::cos(p), m * std::sin(p));
  }
  return out;
}

}  // namespace mbss
