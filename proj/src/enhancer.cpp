#include "mbss/enhancer.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace mbss {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<double> absolute(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return std::abs(x); });
  return out;
}

void check_frame(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                 const EnhancerConfig& config, const BandPartition& partition) {
  if (frame.size() != config.frame_len || frame.phases.size() != config.frame_len) {
    throw DataError("frame length does not match the configured frame length");
  }
  if (profile.size() != config.frame_len || profile.noise_phase.size() != config.frame_len) {
    throw DataError("noise profile length does not match the frame length");
  }
  if (partition.n_bins != config.frame_len / 2) {
    throw DataError("band partition must cover frame_len/2 bins");
  }
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kMss: return "MSS";
    case Algorithm::kMpss: return "MPSS";
    case Algorithm::kMbmss: return "MBMSS";
    case Algorithm::kMbmpss: return "MBMPSS";
  }
  return "?";
}

std::string_view to_string(Arithmetic a) {
  return a == Arithmetic::kFixedCordic ? "fixed-cordic" : "float-reference";
}

std::string_view to_string(SnrMode m) {
  return m == SnrMode::kMaxAmplitude ? "max-amplitude" : "energy-ratio";
}

Algorithm parse_algorithm(std::string_view name) {
  const std::string n = lower(name);
  if (n == "mss") return Algorithm::kMss;
  if (n == "mpss") return Algorithm::kMpss;
  if (n == "mbmss") return Algorithm::kMbmss;
  if (n == "mbmpss") return Algorithm::kMbmpss;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

Arithmetic parse_arithmetic(std::string_view name) {
  const std::string n = lower(name);
  if (n == "float" || n == "float-reference") return Arithmetic::kFloatReference;
  if (n == "fixed" || n == "fixed-cordic") return Arithmetic::kFixedCordic;
  throw ConfigError("unknown arithmetic '" + std::string(name) + "'");
}

SnrMode parse_snr_mode(std::string_view name) {
  const std::string n = lower(name);
  if (n == "energy" || n == "energy-ratio") return SnrMode::kEnergyRatio;
  if (n == "max" || n == "max-amplitude") return SnrMode::kMaxAmplitude;
  throw ConfigError("unknown SNR mode '" + std::string(name) + "'");
}

void EnhancerConfig::validate() const {
  if (frame_len < 4 || !is_power_of_two(frame_len)) {
    throw ConfigError("frame length must be a power of two");
  }
  if (n_bands < 1 || n_bands > frame_len / 2) {
    throw ConfigError("band count must be in [1, frame_len/2]");
  }
  if (noise_frames < 1) throw ConfigError("noise frame count must be at least 1");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("spectral floor beta must be in [0, 1]");
  if (gamma != 1 && gamma != 2) throw ConfigError("gamma must be 1 or 2");
  if (cordic_iterations < 1 || cordic_iterations > 40) {
    throw ConfigError("CORDIC iterations must be in [1, 40]");
  }
  if (threads < 1) throw ConfigError("thread count must be at least 1");
}

std::vector<std::string> EnhancerConfig::normalize() {
  std::vector<std::string> warnings;
  if (!is_multiband(algorithm) && n_bands != 1) {
    warnings.push_back("bands forced to 1 for " + std::string(to_string(algorithm)));
    n_bands = 1;
  }
  return warnings;
}

std::vector<double> subtract_band_magnitude(std::span<const double> y_mag,
                                            std::span<const double> n_mag, double alpha,
                                            double delta, double beta, int gamma) {
  if (y_mag.size() != n_mag.size()) throw DataError("signal and noise band lengths differ");
  if (gamma != 1 && gamma != 2) throw ConfigError("gamma must be 1 or 2");
  const double scale = alpha * delta;
  std::vector<double> out(y_mag.size());
  for (std::size_t i = 0; i < y_mag.size(); ++i) {
    const double y = y_mag[i];
    const double n = n_mag[i];
    double s = 0.0;
    if (gamma == 1) {
      s = std::max(y - scale * n, 0.0);
    } else {
      s = std::sqrt(std::max(y * y - scale * n * n, 0.0));
    }
    out[i] = std::max(s, beta * y);
  }
  return out;
}

std::vector<double> subtract_band_phase(std::span<const double> y_phase,
                                        std::span<const double> n_phase, double alpha,
                                        double delta) {
  if (y_phase.size() != n_phase.size()) throw DataError("signal and noise band lengths differ");
  const double scale = alpha * delta;
  std::vector<double> out(y_phase.size());
  for (std::size_t i = 0; i < y_phase.size(); ++i) {
    out[i] = wrap_phase(y_phase[i] - scale * n_phase[i]);
  }
  return out;
}

std::vector<Band> enhancer_bands(const BandPartition& partition, std::size_t frame_len) {
  std::vector<Band> bands = partition.bands;
  if (!bands.empty()) bands.back().end = frame_len / 2;
  return bands;
}

MagPhaseSpectrum recombine_bands(std::span<const BandValues> bands, std::size_t frame_len) {
  if (frame_len < 2 || !is_power_of_two(frame_len)) {
    throw ConfigError("frame length must be a power of two");
  }
  const std::size_t half = frame_len / 2;
  MagPhaseSpectrum out;
  out.magnitudes.assign(frame_len, 0.0);
  out.phases.assign(frame_len, 0.0);

  std::size_t next = 0;
  for (const BandValues& bv : bands) {
    if (bv.band.begin != next || bv.band.end < bv.band.begin) {
      throw DataError("bands leave a gap or overlap");
    }
    if (bv.magnitudes.size() != bv.band.size() || bv.phases.size() != bv.band.size()) {
      throw DataError("band values do not match the band width");
    }
    if (bv.band.end > half) throw DataError("band extends past the Nyquist bin");
    std::copy(bv.magnitudes.begin(), bv.magnitudes.end(),
              out.magnitudes.begin() + static_cast<std::ptrdiff_t>(bv.band.begin));
    std::copy(bv.phases.begin(), bv.phases.end(),
              out.phases.begin() + static_cast<std::ptrdiff_t>(bv.band.begin));
    next = bv.band.end + 1;
  }
  if (next != half + 1) throw DataError("bands leave a gap or overlap");

  for (std::size_t k : {std::size_t{0}, half}) {
    out.phases[k] = std::cos(out.phases[k]) < 0.0 ? kPi : 0.0;
  }
  for (std::size_t k = 1; k < half; ++k) {
    out.magnitudes[frame_len - k] = out.magnitudes[k];
    out.phases[frame_len - k] = wrap_phase(-out.phases[k]);
  }
  return out;
}

PathResult magnitude_path(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                          const EnhancerConfig& config, const BandPartition& partition,
                          double sample_rate) {
  check_frame(frame, profile, config, partition);
  const std::size_t positive = config.positive_bins();
  const std::span<const double> y(frame.magnitudes.data(), positive);
  const std::span<const double> n(profile.noise_mag.data(), positive);

  PathResult r;
  r.gains = band_gains(y, n, partition, sample_rate, config.snr_mode);
  const auto bands = enhancer_bands(partition, config.frame_len);
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const Band& b = bands[i];
    BandValues bv;
    bv.band = b;
    bv.magnitudes = subtract_band_magnitude(y.subspan(b.begin, b.size()),
                                            n.subspan(b.begin, b.size()), r.gains.alpha[i],
                                            r.gains.delta[i], config.beta, config.gamma);
    r.bands.push_back(std::move(bv));
  }
  return r;
}

PathResult phase_path(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                      const EnhancerConfig& config, const BandPartition& partition,
                      double sample_rate) {
  check_frame(frame, profile, config, partition);
  const std::size_t positive = config.positive_bins();
  const std::span<const double> y(frame.phases.data(), positive);
  const std::span<const double> n(profile.noise_phase.data(), positive);
  const auto bands = enhancer_bands(partition, config.frame_len);

  PathResult r;
  if (!subtracts_phase(config.algorithm)) {
    for (const Band& b : bands) {
      auto sub = y.subspan(b.begin, b.size());
      r.bands.push_back({b, {}, {sub.begin(), sub.end()}});
    }
    return r;
  }

  if (config.share_alpha) {
    r.gains = band_gains(std::span(frame.magnitudes).first(positive),
                         std::span(profile.noise_mag).first(positive), partition, sample_rate,
                         config.snr_mode);
  } else {
    const auto y_abs = absolute(y);
    const auto n_abs = absolute(n);
    r.gains = band_gains(y_abs, n_abs, partition, sample_rate, config.snr_mode);
  }

  const std::size_t half = config.frame_len / 2;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const Band& b = bands[i];
    BandValues bv;
    bv.band = b;
    bv.phases = subtract_band_phase(y.subspan(b.begin, b.size()), n.subspan(b.begin, b.size()),
                                    r.gains.alpha[i], r.gains.delta[i]);
    // DC and Nyquist bins of a real frame only carry a sign; leave them be.
    for (std::size_t k : {std::size_t{0}, half}) {
      if (k >= b.begin && k <= b.end) bv.phases[k - b.begin] = y[k];
    }
    r.bands.push_back(std::move(bv));
  }
  return r;
}

EnhancedFrame join_paths(const PathResult& magnitude, const PathResult& phase,
                         std::size_t frame_len, std::size_t frame_index) {
  if (magnitude.bands.size() != phase.bands.size()) {
    throw DataError("magnitude and phase paths disagree on the band layout");
  }
  std::vector<BandValues> joined;
  joined.reserve(magnitude.bands.size());
  for (std::size_t i = 0; i < magnitude.bands.size(); ++i) {
    if (!(magnitude.bands[i].band == phase.bands[i].band)) {
      throw DataError("magnitude and phase paths disagree on the band layout");
    }
    joined.push_back({magnitude.bands[i].band, magnitude.bands[i].magnitudes,
                      phase.bands[i].phases});
  }
  EnhancedFrame ef;
  ef.mag_phase = recombine_bands(joined, frame_len);
  ef.mag_phase.frame_index = frame_index;
  ef.per_band_gains = magnitude.gains;
  ef.phase_gains = phase.gains;
  ef.frame_index = frame_index;
  return ef;
}

EnhancedFrame enhance_frame(const MagPhaseSpectrum& frame, const NoiseProfile& profile,
                            const EnhancerConfig& config, const BandPartition& partition,
                            double sample_rate) {
  const PathResult mag = magnitude_path(frame, profile, config, partition, sample_rate);
  const PathResult ph = phase_path(frame, profile, config, partition, sample_rate);
  return join_paths(mag, ph, config.frame_len, frame.frame_index);
}

std::vector<MagPhaseSpectrum> analyze(const TimeSignal& signal, const EnhancerConfig& config) {
  std::vector<MagPhaseSpectrum> spectra;
  for (const Frame& f : segment(signal, config.frame_len)) {
    const ComplexSpectrum c = fft(f);
    spectra.push_back(config.arithmetic == Arithmetic::kFixedCordic
                          ? cordic_to_mag_phase(c, config.cordic_iterations)
                          : to_mag_phase(c));
    spectra.back().frame_index = f.index;
  }
  return spectra;
}

namespace {

TimeSignal run_pipeline(const TimeSignal& signal, const EnhancerConfig& config,
                        const std::vector<MagPhaseSpectrum>& spectra,
                        const NoiseProfile& profile) {
  profile.validate();
  if (profile.size() != config.frame_len) {
    throw DataError("noise profile length does not match the frame length");
  }
  const BandPartition bands = partition(config.frame_len / 2, config.n_bands);

  TimeSignal out;
  out.sample_rate = signal.sample_rate;
  out.samples.assign(signal.size(), 0.0);

  auto process = [&](std::size_t i) {
    const EnhancedFrame ef =
        enhance_frame(spectra[i], profile, config, bands, signal.sample_rate);
    const ComplexSpectrum c = config.arithmetic == Arithmetic::kFixedCordic
                                  ? cordic_from_mag_phase(ef.mag_phase, config.cordic_iterations)
                                  : from_mag_phase(ef.mag_phase);
    const Frame f = ifft(c);
    const std::size_t begin = i * config.frame_len;
    const std::size_t count = std::min(config.frame_len, signal.size() - begin);
    std::copy_n(f.samples.begin(), count,
                out.samples.begin() + static_cast<std::ptrdiff_t>(begin));
  };

  const std::size_t workers = std::min<std::size_t>(config.threads, spectra.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < spectra.size(); ++i) process(i);
    return out;
  }

  // Each worker writes a disjoint sample range, so no locking is needed
  // beyond the shared frame counter and error slot.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < spectra.size(); i = next++) {
          try {
            process(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

EnhancerConfig checked(const TimeSignal& signal, EnhancerConfig config) {
  config.normalize();
  config.validate();
  signal.validate();
  return config;
}

}  // namespace

TimeSignal enhance(const TimeSignal& signal, const EnhancerConfig& config_in) {
  const EnhancerConfig config = checked(signal, config_in);
  if (signal.size() < config.noise_frames * config.frame_len) {
    throw DataError("signal too short: need at least " +
                    std::to_string(config.noise_frames * config.frame_len) +
                    " samples of leading noise");
  }
  const auto spectra = analyze(signal, config);
  const NoiseProfile profile = estimate_noise(spectra, config.noise_frames);
  return run_pipeline(signal, config, spectra, profile);
}

TimeSignal enhance(const TimeSignal& signal, const EnhancerConfig& config_in,
                   const NoiseProfile& profile) {
  const EnhancerConfig config = checked(signal, config_in);
  return run_pipeline(signal, config, analyze(signal, config), profile);
}

}  // namespace mbss
