#include "mbss/app.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace mbss {

SnrReport compare(const TimeSignal& clean, const TimeSignal& noise,
                  std::span<const double> snrs_db, const EnhancerConfig& base,
                  const std::string& noise_name, unsigned threads) {
  constexpr std::size_t kAlgorithms = std::size(kComparisonOrder);
  std::vector<TimeSignal> mixtures;
  mixtures.reserve(snrs_db.size());
  for (double snr : snrs_db) mixtures.push_back(mix_at_snr(clean, noise, snr));

  SnrReport report;
  report.rows.resize(snrs_db.size() * kAlgorithms);
  auto run_cell = [&](std::size_t cell) {
    const std::size_t level = cell / kAlgorithms;
    EnhancerConfig config = base;
    config.algorithm = kComparisonOrder[cell % kAlgorithms];
    config.n_bands = is_multiband(config.algorithm) ? base.n_bands : 1;
    config.threads = 1;
    const TimeSignal out = enhance(mixtures[level], config);
    report.rows[cell] = {noise_name, snrs_db[level], config.algorithm, output_snr(clean, out)};
  };

  const std::size_t cells = report.rows.size();
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(cells, 1));
  if (workers == 1) {
    for (std::size_t c = 0; c < cells; ++c) run_cell(c);
    return report;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < cells; c = next++) {
          try {
            run_cell(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

std::string band_summary(const TimeSignal& signal, const EnhancerConfig& config_in,
                         std::size_t frame_index) {
  EnhancerConfig config = config_in;
  config.normalize();
  config.validate();
  const auto spectra = analyze(signal, config);
  if (frame_index >= spectra.size()) throw DataError("frame index out of range");
  if (spectra.size() < config.noise_frames) throw DataError("insufficient leading noise frames");
  const NoiseProfile profile = estimate_noise(spectra, config.noise_frames);
  const BandPartition bands = partition(config.frame_len / 2, config.n_bands);
  const EnhancedFrame ef =
      enhance_frame(spectra[frame_index], profile, config, bands, signal.sample_rate);

  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << to_string(config.algorithm) << " frame " << frame_index << "\n";
  os << "band  bins        snr_db   alpha  delta";
  if (!ef.phase_gains.alpha.empty()) os << "  phase_alpha";
  os << "\n";
  for (std::size_t i = 0; i < bands.n_bands(); ++i) {
    const Band& b = bands.bands[i];
    std::ostringstream range;
    range << b.begin << "-" << b.end;
    os << std::setw(4) << i << "  " << std::left << std::setw(10) << range.str() << std::right
       << std::setw(8) << ef.per_band_gains.snr_db[i] << std::setw(8)
       << ef.per_band_gains.alpha[i] << std::setw(7) << ef.per_band_gains.delta[i];
    if (!ef.phase_gains.alpha.empty()) os << std::setw(13) << ef.phase_gains.alpha[i];
    os << "\n";
  }
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T out{};
  if (!(is >> out) || !is.eof()) {
    throw ConfigError("config: bad value '" + value + "' for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: bad boolean '" + value + "' for " + key);
}

}  // namespace

void apply_config_text(const std::string& text, EnhancerConfig& config) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "algorithm") {
      config.algorithm = parse_algorithm(value);
    } else if (key == "bands") {
      config.n_bands = parse_number<std::size_t>(key, value);
    } else if (key == "frame") {
      config.frame_len = parse_number<std::size_t>(key, value);
    } else if (key == "beta") {
      config.beta = parse_number<double>(key, value);
    } else if (key == "gamma") {
      config.gamma = parse_number<int>(key, value);
    } else if (key == "noise_frames") {
      config.noise_frames = parse_number<std::size_t>(key, value);
    } else if (key == "snr_mode") {
      config.snr_mode = parse_snr_mode(value);
    } else if (key == "arithmetic") {
      config.arithmetic = parse_arithmetic(value);
    } else if (key == "share_alpha") {
      config.share_alpha = parse_bool(key, value);
    } else if (key == "cordic_iterations") {
      config.cordic_iterations = parse_number<int>(key, value);
    } else if (key == "threads") {
      config.threads = parse_number<unsigned>(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
}

void apply_config_file(const std::filesystem::path& path, EnhancerConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(buffer.str(), config);
}

}  // namespace mbss
