#include "mbss/multiband.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mbss {

void BandPartition::validate() const {
  if (bands.empty()) throw DataError("band partition is empty");
  std::size_t next = 0;
  for (const Band& b : bands) {
    if (b.begin != next || b.end < b.begin) {
      throw DataError("bands must be contiguous and non-overlapping");
    }
    next = b.end + 1;
  }
  if (next != n_bins) throw DataError("bands must cover every bin");
}

BandPartition partition(std::size_t n_bins, std::size_t n_bands) {
  if (n_bands < 1) throw ConfigError("band count must be at least 1");
  if (n_bands > n_bins) {
    throw ConfigError("band count " + std::to_string(n_bands) + " exceeds bin count " +
                      std::to_string(n_bins));
  }
  const std::size_t width = n_bins / n_bands;
  BandPartition p;
  p.n_bins = n_bins;
  p.bands.reserve(n_bands);
  for (std::size_t i = 0; i < n_bands; ++i) {
    const std::size_t begin = i * width;
    const std::size_t end = (i + 1 == n_bands) ? n_bins - 1 : begin + width - 1;
    p.bands.push_back({begin, end});
  }
  return p;
}

double segmental_snr(std::span<const double> band_signal_mag,
                     std::span<const double> band_noise_mag, SnrMode mode) {
  if (band_signal_mag.size() != band_noise_mag.size()) {
    throw DataError("signal and noise band lengths differ");
  }
  if (band_signal_mag.empty()) throw DataError("empty band");

  double sig = 0.0;
  double noi = 0.0;
  if (mode == SnrMode::kEnergyRatio) {
    for (double y : band_signal_mag) sig += y * y;
    for (double n : band_noise_mag) noi += n * n;
  } else {
    for (double y : band_signal_mag) sig = std::max(sig, std::abs(y));
    for (double n : band_noise_mag) noi = std::max(noi, std::abs(n));
  }
  if (noi == 0.0) return kSnrClampDb;
  if (sig == 0.0) return -kSnrClampDb;
  const double db = mode == SnrMode::kEnergyRatio ? 10.0 * std::log10(sig / noi)
                                                  : 20.0 * std::log10(sig / noi);
  return std::clamp(db, -kSnrClampDb, kSnrClampDb);
}

double over_subtraction_factor(double snr_db) {
  // Linear ramp clamped to [1, 5]; the upper joint sits at -20/3 dB.
  return std::clamp(4.0 - (3.0 / 20.0) * snr_db, 1.0, 5.0);
}

double tweaking_factor(double band_upper_hz, double sample_rate) {
  if (!(sample_rate > 0.0)) throw ConfigError("sample rate must be positive");
  const double nyquist = sample_rate / 2.0;
  if (!(band_upper_hz > 0.0) || band_upper_hz > nyquist) {
    throw ConfigError("band frequency must lie in (0, Fs/2]");
  }
  if (band_upper_hz < 1000.0) return 1.0;
  if (band_upper_hz <= nyquist - 2000.0) return 2.5;
  return 1.5;
}

double band_upper_hz(const Band& band, std::size_t n_bins, double sample_rate) {
  return static_cast<double>(band.end + 1) * (sample_rate / 2.0) / static_cast<double>(n_bins);
}

BandGains band_gains(std::span<const double> signal, std::span<const double> noise,
                     const BandPartition& partition, double sample_rate, SnrMode mode) {
  partition.validate();
  if (signal.size() != noise.size()) throw DataError("frame and noise profile lengths differ");
  if (signal.size() < partition.n_bins) {
    throw DataError("partition covers more bins than the frame provides");
  }

  const std::size_t n = partition.n_bands();
  BandGains g;
  g.alpha.reserve(n);
  g.delta.reserve(n);
  g.snr_db.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Band& band = partition.bands[i];
    const std::size_t end = (i + 1 == n) ? signal.size() - 1 : band.end;
    const std::size_t len = end - band.begin + 1;
    const double snr = segmental_snr(signal.subspan(band.begin, len),
                                     noise.subspan(band.begin, len), mode);
    g.snr_db.push_back(snr);
    g.alpha.push_back(over_subtraction_factor(snr));
    g.delta.push_back(n == 1 ? 1.0
                             : tweaking_factor(band_upper_hz(band, partition.n_bins, sample_rate),
                                               sample_rate));
  }
  return g;
}

BandGains band_gains(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                     const BandPartition& partition, double sample_rate, SnrMode mode) {
  if (frame.size() != profile.size()) throw DataError("frame and noise profile lengths differ");
  const std::size_t positive = std::min(frame.size(), frame.size() / 2 + 1);
  return band_gains(std::span(frame.magnitudes).first(positive),
                    std::span(profile.noise_mag).first(positive), partition, sample_rate, mode);
}

}  // namespace mbss
