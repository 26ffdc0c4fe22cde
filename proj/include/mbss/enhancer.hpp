#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbss/cordic.hpp"
#include "mbss/multiband.hpp"
#include "mbss/noise_profile.hpp"
#include "mbss/spectral.hpp"

namespace mbss {

enum class Algorithm {
  kMss,     // magnitude subtraction, one band
  kMpss,    // magnitude and phase subtraction, one band
  kMbmss,   // per-band magnitude subtraction
  kMbmpss,  // per-band magnitude and phase subtraction
};

enum class Arithmetic {
  kFloatReference,
  kFixedCordic,  // polar conversions through the 16-bit CORDIC datapath
};

std::string_view to_string(Algorithm a);
std::string_view to_string(Arithmetic a);
std::string_view to_string(SnrMode m);
// Case-insensitive; throws ConfigError on unknown names.
Algorithm parse_algorithm(std::string_view name);
Arithmetic parse_arithmetic(std::string_view name);
SnrMode parse_snr_mode(std::string_view name);

constexpr bool subtracts_phase(Algorithm a) {
  return a == Algorithm::kMpss || a == Algorithm::kMbmpss;
}
constexpr bool is_multiband(Algorithm a) {
  return a == Algorithm::kMbmss || a == Algorithm::kMbmpss;
}

struct EnhancerConfig {
  Algorithm algorithm = Algorithm::kMbmpss;
  std::size_t frame_len = 256;
  std::size_t n_bands = 4;
  std::size_t noise_frames = kDefaultNoiseFrames;
  double beta = 0.0;  // spectral floor
  int gamma = 1;      // 1 magnitude, 2 power subtraction
  SnrMode snr_mode = SnrMode::kEnergyRatio;
  Arithmetic arithmetic = Arithmetic::kFloatReference;
  // Phase path reuses the magnitude-path alpha instead of deriving its own
  // from the phase spectra.
  bool share_alpha = false;
  int cordic_iterations = kDefaultCordicIterations;
  unsigned threads = 1;

  // Throws ConfigError when a field is out of range.
  void validate() const;
  // Forces a single band for MSS/MPSS. Returns the warnings raised.
  std::vector<std::string> normalize();
  std::size_t positive_bins() const { return frame_len / 2 + 1; }
};

// s = max((y^gamma - alpha delta n^gamma)^(1/gamma), beta y), per bin. With
// beta = 0 this is half-wave rectification.
std::vector<double> subtract_band_magnitude(std::span<const double> y_mag,
                                            std::span<const double> n_mag, double alpha,
                                            double delta, double beta, int gamma);

// wrap(y - alpha delta n), per bin.
std::vector<double> subtract_band_phase(std::span<const double> y_phase,
                                        std::span<const double> n_phase, double alpha,
                                        double delta);

// Values of one band over its positive-frequency bins.
struct BandValues {
  Band band;
  std::vector<double> magnitudes;
  std::vector<double> phases;
};

// Concatenates bands tiling bins [0, frame_len/2] and restores the negative
// frequencies by conjugate symmetry. The DC and Nyquist bins only carry a
// sign, so their phase is snapped to 0 or pi.
MagPhaseSpectrum recombine_bands(std::span<const BandValues> bands, std::size_t frame_len);

// Bands used by the enhancer: the partition of frame_len/2 bins with the
// Nyquist bin appended to the last band.
std::vector<Band> enhancer_bands(const BandPartition& partition, std::size_t frame_len);

struct PathResult {
  std::vector<BandValues> bands;
  BandGains gains;
};

// The two independent halves of enhance_frame. Each reads only its inputs.
PathResult magnitude_path(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                          const EnhancerConfig& config, const BandPartition& partition,
                          double sample_rate);
PathResult phase_path(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                      const EnhancerConfig& config, const BandPartition& partition,
                      double sample_rate);

struct EnhancedFrame {
  MagPhaseSpectrum mag_phase;
  BandGains per_band_gains;  // magnitude path
  BandGains phase_gains;     // empty for magnitude-only algorithms
  std::size_t frame_index = 0;
};

// Joins magnitude and phase path results into an enhanced frame.
EnhancedFrame join_paths(const PathResult& magnitude, const PathResult& phase,
                         std::size_t frame_len, std::size_t frame_index);

EnhancedFrame enhance_frame(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                            const EnhancerConfig& config, const BandPartition& partition,
                            double sample_rate);

// Full pipeline. The noise profile comes from the first `noise_frames`
// frames unless one is supplied. Output length equals input length.
TimeSignal enhance(const TimeSignal& signal, const EnhancerConfig& config);
TimeSignal enhance(const TimeSignal& signal, const EnhancerConfig& config,
                   const NoiseProfile& profile);

// Spectra of every frame, in the polar form selected by `config.arithmetic`.
std::vector<MagPhaseSpectrum> analyze(const TimeSignal& signal, const EnhancerConfig& config);

}  // namespace mbss
