// Command-line front end for the spectral subtraction library.
//
//   mbss enhance noisy.wav out.wav --algorithm mbmpss
//   mbss mix clean.wav noise.wav out.wav --snr 0
//   mbss compare clean.wav noise.wav --snrs -3,0,3,8,10 --out report.csv
//   mbss latency --clock-mhz 100
//   mbss synth --clean clean.wav --noise noise.wav --seed 1
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mbss/app.hpp"
#include "mbss/audio_io.hpp"
#include "mbss/cordic.hpp"
#include "mbss/enhancer.hpp"
#include "mbss/noise_profile.hpp"
#include "mbss/synth.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr const char* kConfigEnv = "MBSS_CONFIG";

// Raw flag values; only those given on the command line override the
// config file.
struct ConfigFlags {
  std::string config_path;
  std::string algorithm;
  std::size_t bands = 0;
  std::size_t frame = 0;
  double beta = 0.0;
  int gamma = 0;
  std::size_t noise_frames = 0;
  std::string snr_mode;
  std::string arithmetic;
  bool share_alpha = false;
  unsigned threads = 1;

  CLI::Option* o_algorithm = nullptr;
  CLI::Option* o_bands = nullptr;
  CLI::Option* o_frame = nullptr;
  CLI::Option* o_beta = nullptr;
  CLI::Option* o_gamma = nullptr;
  CLI::Option* o_noise_frames = nullptr;
  CLI::Option* o_snr_mode = nullptr;
  CLI::Option* o_arithmetic = nullptr;
  CLI::Option* o_share_alpha = nullptr;
  CLI::Option* o_threads = nullptr;

  void attach(CLI::App* cmd, bool with_algorithm) {
    cmd->add_option("--config", config_path,
                    std::string("key = value config file (default: $") + kConfigEnv + ")");
    if (with_algorithm) {
      o_algorithm = cmd->add_option("--algorithm", algorithm, "mss | mpss | mbmss | mbmpss");
    }
    o_bands = cmd->add_option("--bands", bands, "number of linear bands");
    o_frame = cmd->add_option("--frame", frame, "frame length (power of two)");
    o_beta = cmd->add_option("--beta", beta, "spectral floor in [0, 1]");
    o_gamma = cmd->add_option("--gamma", gamma, "1 magnitude, 2 power subtraction");
    o_noise_frames = cmd->add_option("--noise-frames", noise_frames, "leading noise frames");
    o_snr_mode = cmd->add_option("--snr-mode", snr_mode, "energy-ratio | max-amplitude");
    o_arithmetic = cmd->add_option("--arithmetic", arithmetic, "float-reference | fixed-cordic");
    o_share_alpha = cmd->add_flag("--share-alpha", share_alpha,
                                  "phase path reuses the magnitude alpha");
    o_threads = cmd->add_option("--threads", threads, "worker threads");
  }

  mbss::EnhancerConfig resolve() const {
    mbss::EnhancerConfig c;
    std::string path = config_path;
    if (path.empty()) {
      if (const char* env = std::getenv(kConfigEnv)) path = env;
    }
    if (!path.empty()) mbss::apply_config_file(path, c);
    if (o_algorithm && o_algorithm->count()) c.algorithm = mbss::parse_algorithm(algorithm);
    if (o_bands->count()) c.n_bands = bands;
    if (o_frame->count()) c.frame_len = frame;
    if (o_beta->count()) c.beta = beta;
    if (o_gamma->count()) c.gamma = gamma;
    if (o_noise_frames->count()) c.noise_frames = noise_frames;
    if (o_snr_mode->count()) c.snr_mode = mbss::parse_snr_mode(snr_mode);
    if (o_arithmetic->count()) c.arithmetic = mbss::parse_arithmetic(arithmetic);
    if (o_share_alpha->count()) c.share_alpha = share_alpha;
    if (o_threads->count()) c.threads = threads;
    return c;
  }
};

mbss::TimeSignal load(const std::string& path) {
  mbss::WavFile wav = mbss::read_wav(path);
  for (const auto& w : wav.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  return std::move(wav.signal);
}

std::vector<double> parse_levels(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw mbss::ConfigError("bad SNR level '" + item + "'");
    }
  }
  if (out.empty()) throw mbss::ConfigError("no SNR levels given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-band magnitude/phase spectral subtraction"};
  app.require_subcommand(1);

  // enhance
  auto* enhance = app.add_subcommand("enhance", "enhance a noisy WAV file");
  std::string in_path, out_path, save_profile, load_profile;
  ConfigFlags enhance_flags;
  enhance->add_option("input", in_path, "noisy 16-bit mono WAV")->required();
  enhance->add_option("output", out_path, "enhanced WAV")->required();
  enhance->add_option("--save-profile", save_profile, "write the noise profile table");
  enhance->add_option("--load-profile", load_profile, "use a stored noise profile");
  enhance_flags.attach(enhance, true);

  // mix
  auto* mix = app.add_subcommand("mix", "mix noise into clean speech at a target SNR");
  std::string mix_clean, mix_noise, mix_out;
  double mix_snr = 0.0;
  mix->add_option("clean", mix_clean)->required();
  mix->add_option("noise", mix_noise)->required();
  mix->add_option("output", mix_out)->required();
  mix->add_option("--snr", mix_snr, "target input SNR in dB")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "four-algorithm SNR comparison");
  std::string cmp_clean, cmp_noise, cmp_out, cmp_levels = "-3,0,3,8,10", cmp_name;
  ConfigFlags cmp_flags;
  cmp->add_option("clean", cmp_clean)->required();
  cmp->add_option("noise", cmp_noise)->required();
  cmp->add_option("--snrs", cmp_levels, "comma separated input SNRs in dB");
  cmp->add_option("--out", cmp_out, "CSV report path");
  cmp->add_option("--noise-name", cmp_name, "label for the noise column (default: file stem)");
  cmp_flags.attach(cmp, false);

  // latency
  auto* lat = app.add_subcommand("latency", "print the pipeline delay model");
  double clock_mhz = 100.0;
  mbss::LatencyModel model;
  lat->add_option("--clock-mhz", clock_mhz, "clock frequency in MHz");
  lat->add_option("--fft", model.fft_delay);
  lat->add_option("--magphase", model.magphase_delay);
  lat->add_option("--op", model.op_delay);
  lat->add_option("--sincos", model.sincos_delay);
  lat->add_option("--ifft", model.ifft_delay);

  // synth
  auto* synth = app.add_subcommand("synth", "write the synthetic clean surrogate and white noise");
  std::string synth_clean, synth_noise;
  mbss::SurrogateOptions surrogate;
  double noise_std = 0.1;
  synth->add_option("--clean", synth_clean, "clean surrogate output WAV")->required();
  synth->add_option("--noise", synth_noise, "white noise output WAV");
  synth->add_option("--seed", surrogate.seed);
  synth->add_option("--duration", surrogate.duration_s, "seconds");
  synth->add_option("--rate", surrogate.sample_rate, "Hz");
  synth->add_option("--lead-in", surrogate.lead_in_samples, "silent leading samples");
  synth->add_option("--noise-std", noise_std);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*enhance) {
      mbss::EnhancerConfig config = enhance_flags.resolve();
      for (const auto& w : config.normalize()) std::cerr << "warning: " << w << "\n";
      config.validate();
      const mbss::TimeSignal noisy = load(in_path);
      mbss::TimeSignal out;
      if (!load_profile.empty()) {
        std::ifstream pin(load_profile);
        if (!pin) throw mbss::DataError("cannot open '" + load_profile + "'");
        out = mbss::enhance(noisy, config, mbss::read_profile(pin));
      } else {
        out = mbss::enhance(noisy, config);
      }
      if (!save_profile.empty()) {
        const auto spectra = mbss::analyze(noisy, config);
        std::ofstream pout(save_profile);
        mbss::write_profile(pout, mbss::estimate_noise(spectra, config.noise_frames));
      }
      mbss::write_wav(out, out_path);
      std::cout << mbss::band_summary(noisy, config, 0);
      std::cout << "wrote " << out_path << "\n";
    } else if (*mix) {
      const mbss::TimeSignal mixed = mbss::mix_at_snr(load(mix_clean), load(mix_noise), mix_snr);
      mbss::write_wav(mixed, mix_out);
      std::cout << "wrote " << mix_out << " at " << mix_snr << " dB input SNR\n";
    } else if (*cmp) {
      mbss::EnhancerConfig config = cmp_flags.resolve();
      config.validate();
      const auto levels = parse_levels(cmp_levels);
      const std::string name =
          cmp_name.empty() ? std::filesystem::path(cmp_noise).stem().string() : cmp_name;
      const mbss::SnrReport report =
          mbss::compare(load(cmp_clean), load(cmp_noise), levels, config, name, config.threads);
      if (!cmp_out.empty()) {
        std::ofstream csv(cmp_out);
        if (!csv) throw mbss::DataError("cannot write '" + cmp_out + "'");
        report.write_csv(csv);
      }
      std::cout << std::fixed << std::setprecision(2);
      std::cout << "input_snr      MSS    MBMSS     MPSS   MBMPSS\n";
      for (std::size_t r = 0; r < report.rows.size(); r += 4) {
        std::cout << std::setw(9) << report.rows[r].input_snr_db;
        for (std::size_t a = 0; a < 4; ++a) std::cout << std::setw(9) << report.rows[r + a].output_snr_db;
        std::cout << "\n";
      }
    } else if (*lat) {
      if (!(clock_mhz > 0.0)) throw mbss::ConfigError("clock frequency must be positive");
      model.clock_hz = clock_mhz * 1e6;
      std::cout << mbss::format_latency(model);
    } else if (*synth) {
      const mbss::TimeSignal clean = mbss::speech_surrogate(surrogate);
      mbss::write_wav(clean, synth_clean);
      std::cout << "wrote " << synth_clean << "\n";
      if (!synth_noise.empty()) {
        const mbss::TimeSignal noise = mbss::white_noise(clean.size(), clean.sample_rate,
                                                         surrogate.seed + 1, noise_std);
        mbss::write_wav(noise, synth_noise);
        std::cout << "wrote " << synth_noise << "\n";
      }
    }
  } catch (const mbss::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mbss::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
