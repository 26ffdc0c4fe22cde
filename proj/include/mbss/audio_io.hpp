#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mbss/enhancer.hpp"
#include "mbss/spectral.hpp"

namespace mbss {

// 16-bit PCM mono WAV contents.
struct WavFile {
  TimeSignal signal;
  int bit_depth = 16;
  int channels = 1;
  // Non-fatal findings, e.g. a sample rate other than 8 or 16 kHz.
  std::vector<std::string> warnings;
};

WavFile parse_wav(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_wav(const TimeSignal& signal);

WavFile read_wav(const std::filesystem::path& path);
// Samples are clipped to [-1, 1] and rounded to 16 bits.
void write_wav(const TimeSignal& signal, const std::filesystem::path& path);

double mean_power(std::span<const double> samples);

// clean + g * noise with g chosen so that the clean-to-scaled-noise power
// ratio equals `target_snr_db`. Noise is tiled or truncated to the clean
// length.
TimeSignal mix_at_snr(const TimeSignal& clean, const TimeSignal& noise, double target_snr_db);

inline constexpr double kOutputSnrClampDb = 100.0;

// 10 log10(sum clean^2 / sum (processed - clean)^2); identical signals give
// +100 dB.
double output_snr(const TimeSignal& clean, const TimeSignal& processed);

struct SnrRow {
  std::string noise_name;
  double input_snr_db = 0.0;
  Algorithm algorithm = Algorithm::kMss;
  double output_snr_db = 0.0;

  bool operator==(const SnrRow&) const = default;
};

struct SnrReport {
  std::vector<SnrRow> rows;

  // CSV with header "noise,input_snr_db,algorithm,output_snr_db".
  void write_csv(std::ostream& os) const;
  static SnrReport read_csv(std::istream& is);
};

}  // namespace mbss
