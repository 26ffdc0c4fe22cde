#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mbss/audio_io.hpp"
#include "mbss/enhancer.hpp"

namespace mbss {

// Order in which the comparison reports algorithms.
inline constexpr Algorithm kComparisonOrder[] = {Algorithm::kMss, Algorithm::kMbmss,
                                                 Algorithm::kMpss, Algorithm::kMbmpss};

// Mixes `noise` into `clean` at every level of `snrs_db`, runs the four
// algorithms on each mixture and measures the output SNR against `clean`.
// Cells may run on `threads` workers; row order is always level-major in
// kComparisonOrder.
SnrReport compare(const TimeSignal& clean, const TimeSignal& noise,
                  std::span<const double> snrs_db, const EnhancerConfig& base,
                  const std::string& noise_name, unsigned threads = 1);

// Per-band SNR/alpha/delta table for one frame of `signal`.
std::string band_summary(const TimeSignal& signal, const EnhancerConfig& config,
                         std::size_t frame_index = 0);

// Applies "key = value" lines onto `config`. Blank lines and lines starting
// with '#' are skipped. Keys: algorithm, bands, frame, beta, gamma,
// noise_frames, snr_mode, arithmetic, share_alpha, cordic_iterations,
// threads.
void apply_config_text(const std::string& text, EnhancerConfig& config);
void apply_config_file(const std::filesystem::path& path, EnhancerConfig& config);

}  // namespace mbss
