#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mbss/noise_profile.hpp"
#include "mbss/spectral.hpp"

namespace mbss {

// Inclusive bin range.
struct Band {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin + 1; }
  bool operator==(const Band&) const = default;
};

// Linearly spaced bands tiling [0, n_bins - 1].
struct BandPartition {
  std::vector<Band> bands;
  std::size_t n_bins = 0;

  std::size_t n_bands() const { return bands.size(); }
  // Throws DataError on gaps, overlaps or incomplete coverage.
  void validate() const;
};

enum class SnrMode {
  kEnergyRatio,   // 10 log10(sum |Y|^2 / sum |N|^2)
  kMaxAmplitude,  // 20 log10(max |Y| / max |N|), the hardware approximation
};

inline constexpr double kSnrClampDb = 40.0;

// Bands of floor(n_bins / n_bands) bins; the last band absorbs the remainder.
BandPartition partition(std::size_t n_bins, std::size_t n_bands);

// Segmental SNR of one band in dB, clamped to [-40, 40]. A silent noise band
// gives +40, a silent signal band -40.
double segmental_snr(std::span<const double> band_signal_mag,
                     std::span<const double> band_noise_mag, SnrMode mode);

// Over-subtraction factor: 4 - 3/20 SNR clamped to [1, 5]. Reaches 5 at
// -20/3 dB and 1 at 20 dB.
double over_subtraction_factor(double snr_db);

// Tweaking factor keyed on a band's upper frequency:
//   1 below 1 kHz, 2.5 on [1 kHz, Fs/2 - 2 kHz], 1.5 above.
double tweaking_factor(double band_upper_hz, double sample_rate);

// Upper frequency of a band, (end + 1) * Nyquist / n_bins.
double band_upper_hz(const Band& band, std::size_t n_bins, double sample_rate);

struct BandGains {
  std::vector<double> alpha;
  std::vector<double> delta;
  std::vector<double> snr_db;
};

// Per-band SNR, alpha and delta for one frame. `signal` and `noise` hold
// the positive-frequency values (at least partition.n_bins of them); bins
// past the partition, such as the Nyquist bin, count towards the last band.
// A single band covering the whole spectrum uses delta = 1.
BandGains band_gains(std::span<const double> signal, std::span<const double> noise,
                     const BandPartition& partition, double sample_rate, SnrMode mode);

// Convenience overload on the magnitude spectra, using bins [0, N/2].
BandGains band_gains(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                     const BandPartition& partition, double sample_rate, SnrMode mode);

}  // namespace mbss
