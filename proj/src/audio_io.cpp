#include "mbss/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

namespace mbss {
namespace {

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

constexpr std::uint16_t kFormatPcm = 1;

}  // namespace

WavFile parse_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw DataError("malformed WAV: missing RIFF/WAVE header");
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    // Some writers leave a streaming placeholder size on the data chunk.
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);
    if (tag_is(bytes, pos, "fmt ")) {
      if (avail < 16) throw DataError("malformed WAV: short fmt chunk");
      format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      bits = read_u16(bytes, body + 14);
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      data = bytes.subspan(body, avail);
      have_data = true;
    }
    pos = body + avail + (avail & 1u);
  }

  if (!have_fmt) throw DataError("malformed WAV: no fmt chunk");
  if (!have_data) throw DataError("malformed WAV: no data chunk");
  if (format != kFormatPcm) {
    throw DataError("unsupported encoding: format tag " + std::to_string(format));
  }
  if (bits != 16) throw DataError("unsupported bit depth: " + std::to_string(bits));
  if (channels != 1) {
    throw DataError("unsupported channel count: " + std::to_string(channels) +
                    " (mono only)");
  }
  if (rate == 0) throw DataError("malformed WAV: zero sample rate");

  WavFile wav;
  wav.signal.sample_rate = rate;
  const std::size_t count = data.size() / 2;
  wav.signal.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto v = static_cast<std::int16_t>(read_u16(data, 2 * i));
    wav.signal.samples.push_back(static_cast<double>(v) / 32768.0);
  }
  if (rate != 8000 && rate != 16000) {
    wav.warnings.push_back("sample rate " + std::to_string(rate) +
                           " Hz is neither 8000 nor 16000 Hz");
  }
  return wav;
}

std::vector<std::uint8_t> encode_wav(const TimeSignal& signal) {
  signal.validate();
  const auto rate = static_cast<std::uint32_t>(std::lround(signal.sample_rate));
  const auto data_bytes = static_cast<std::uint32_t>(signal.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : signal.samples) {
    const double q = std::nearbyint(std::clamp(s, -1.0, 1.0) * 32768.0);
    const auto v = static_cast<std::int16_t>(std::clamp(q, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

WavFile read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
  try {
    return parse_wav(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_wav(const TimeSignal& signal, const std::filesystem::path& path) {
  const auto bytes = encode_wav(signal);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

double mean_power(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : samples) acc += s * s;
  return acc / static_cast<double>(samples.size());
}

TimeSignal mix_at_snr(const TimeSignal& clean, const TimeSignal& noise, double target_snr_db) {
  if (clean.sample_rate != noise.sample_rate) {
    throw DataError("clean and noise sample rates differ");
  }
  if (!std::isfinite(target_snr_db)) throw ConfigError("target SNR must be finite");
  if (clean.samples.empty() || noise.samples.empty()) throw DataError("degenerate mix: empty input");

  std::vector<double> tiled(clean.size());
  for (std::size_t i = 0; i < tiled.size(); ++i) tiled[i] = noise.samples[i % noise.size()];

  const double p_clean = mean_power(clean.samples);
  const double p_noise = mean_power(tiled);
  if (p_clean == 0.0) throw DataError("degenerate mix: clean signal is silent");
  if (p_noise == 0.0) throw DataError("degenerate mix: noise is silent");

  const double gain = std::sqrt(p_clean / (p_noise * std::pow(10.0, target_snr_db / 10.0)));
  TimeSignal out;
  out.sample_rate = clean.sample_rate;
  out.samples.resize(clean.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.samples[i] = clean.samples[i] + gain * tiled[i];
  }
  return out;
}

double output_snr(const TimeSignal& clean, const TimeSignal& processed) {
  if (clean.size() != processed.size()) throw DataError("signal lengths differ");
  double sig = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    sig += clean.samples[i] * clean.samples[i];
    const double e = processed.samples[i] - clean.samples[i];
    err += e * e;
  }
  if (err == 0.0) return kOutputSnrClampDb;
  if (sig == 0.0) return -kOutputSnrClampDb;
  return std::min(10.0 * std::log10(sig / err), kOutputSnrClampDb);
}

void SnrReport::write_csv(std::ostream& os) const {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "noise,input_snr_db,algorithm,output_snr_db\n";
  for (const SnrRow& r : rows) {
    os << r.noise_name << ',' << r.input_snr_db << ',' << to_string(r.algorithm) << ','
       << r.output_snr_db << '\n';
  }
  os.precision(old_precision);
}

SnrReport SnrReport::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "noise,input_snr_db,algorithm,output_snr_db") {
    throw DataError("SNR report: unexpected CSV header");
  }
  SnrReport report;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 4) throw DataError("SNR report: expected 4 fields in '" + line + "'");
    SnrRow row;
    row.noise_name = fields[0];
    try {
      row.input_snr_db = std::stod(fields[1]);
      row.output_snr_db = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw DataError("SNR report: bad number in '" + line + "'");
    }
    row.algorithm = parse_algorithm(fields[2]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace mbss
