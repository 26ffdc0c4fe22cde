#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mbss/app.hpp"
#include "mbss/audio_io.hpp"
#include "mbss/cordic.hpp"
#include "mbss/enhancer.hpp"
#include "mbss/synth.hpp"

namespace py = pybind11;
using namespace mbss;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

TimeSignal to_signal(const Array& a, double fs) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  TimeSignal s;
  s.samples.assign(a.data(), a.data() + a.size());
  s.sample_rate = fs;
  return s;
}

Array to_array(const std::vector<double>& v) { return Array(v.size(), v.data()); }

EnhancerConfig make_config(const std::string& algorithm, std::size_t frame_len,
                           std::size_t n_bands, std::size_t noise_frames, double beta, int gamma,
                           const std::string& snr_mode, const std::string& arithmetic,
                           bool share_alpha, unsigned threads) {
  EnhancerConfig c;
  c.algorithm = parse_algorithm(algorithm);
  c.frame_len = frame_len;
  c.n_bands = n_bands;
  c.noise_frames = noise_frames;
  c.beta = beta;
  c.gamma = gamma;
  c.snr_mode = parse_snr_mode(snr_mode);
  c.arithmetic = parse_arithmetic(arithmetic);
  c.share_alpha = share_alpha;
  c.threads = threads;
  c.normalize();
  return c;
}

}  // namespace

PYBIND11_MODULE(_mbss, m) {
  m.doc() = "Multi-band magnitude and phase spectral subtraction";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());

  m.def(
      "enhance",
      [](const Array& x, double fs, const std::string& algorithm, std::size_t frame_len,
         std::size_t n_bands, std::size_t noise_frames, double beta, int gamma,
         const std::string& snr_mode, const std::string& arithmetic, bool share_alpha,
         unsigned threads) {
        const EnhancerConfig c = make_config(algorithm, frame_len, n_bands, noise_frames, beta,
                                             gamma, snr_mode, arithmetic, share_alpha, threads);
        TimeSignal out;
        {
          py::gil_scoped_release release;
          out = enhance(to_signal(x, fs), c);
        }
        return to_array(out.samples);
      },
      py::arg("x"), py::arg("fs") = 8000.0, py::arg("algorithm") = "mbmpss",
      py::arg("frame_len") = 256, py::arg("n_bands") = 4,
      py::arg("noise_frames") = kDefaultNoiseFrames, py::arg("beta") = 0.0, py::arg("gamma") = 1,
      py::arg("snr_mode") = "energy-ratio", py::arg("arithmetic") = "float-reference",
      py::arg("share_alpha") = false, py::arg("threads") = 1);

  m.def(
      "mix_at_snr",
      [](const Array& clean, const Array& noise, double snr_db, double fs) {
        return to_array(mix_at_snr(to_signal(clean, fs), to_signal(noise, fs), snr_db).samples);
      },
      py::arg("clean"), py::arg("noise"), py::arg("snr_db"), py::arg("fs") = 8000.0);
  m.def(
      "output_snr",
      [](const Array& clean, const Array& processed) {
        return output_snr(to_signal(clean, 8000), to_signal(processed, 8000));
      },
      py::arg("clean"), py::arg("processed"));

  m.def("over_subtraction_factor", &over_subtraction_factor, py::arg("snr_db"));
  m.def("tweaking_factor", &tweaking_factor, py::arg("band_upper_hz"), py::arg("fs"));
  m.def(
      "partition",
      [](std::size_t n_bins, std::size_t n_bands) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const Band& b : partition(n_bins, n_bands).bands) out.emplace_back(b.begin, b.end);
        return out;
      },
      py::arg("n_bins"), py::arg("n_bands"));

  m.def(
      "fft",
      [](const Array& x) {
        Frame f;
        f.samples.assign(x.data(), x.data() + x.size());
        f.valid = f.samples.size();
        return fft(f).bins;
      },
      py::arg("x"));
  m.def(
      "ifft",
      [](const std::vector<Complex>& bins) {
        ComplexSpectrum s;
        s.bins = bins;
        return to_array(ifft(s).samples);
      },
      py::arg("bins"));

  m.def(
      "cordic_vectoring",
      [](double re, double im, int iterations) {
        const PolarFixed p = cordic_vectoring(FixedPointSample::from_double(re),
                                              FixedPointSample::from_double(im), iterations);
        return py::make_tuple(p.magnitude.to_double(), p.phase.to_double());
      },
      py::arg("re"), py::arg("im"), py::arg("iterations") = kDefaultCordicIterations,
      "Returns (magnitude, phase) from the Q2.13 datapath.");
  m.def(
      "cordic_rotation",
      [](double theta, int iterations) {
        const SinCosFixed r = cordic_rotation(FixedPointSample::from_double(theta), iterations);
        return py::make_tuple(r.cos.to_double(), r.sin.to_double());
      },
      py::arg("theta"), py::arg("iterations") = kDefaultCordicIterations,
      "Returns (cos, sin) from the Q2.13 datapath.");
  m.def("cordic_gain", &cordic_gain, py::arg("iterations") = kDefaultCordicIterations);

  m.def(
      "pipeline_delay",
      [](double clock_hz) {
        LatencyModel model;
        model.clock_hz = clock_hz;
        const PipelineDelay d = total_pipeline_delay(model);
        return py::make_tuple(d.units, d.seconds);
      },
      py::arg("clock_hz") = 100e6, "Returns (units, seconds) for the default stage delays.");

  m.def(
      "compare",
      [](const Array& clean, const Array& noise, const std::vector<double>& snrs_db, double fs,
         const std::string& noise_name, unsigned threads) {
        SnrReport r;
        {
          py::gil_scoped_release release;
          r = compare(to_signal(clean, fs), to_signal(noise, fs), snrs_db, EnhancerConfig{},
                      noise_name, threads);
        }
        py::list rows;
        for (const SnrRow& row : r.rows) {
          py::dict d;
          d["noise"] = row.noise_name;
          d["input_snr_db"] = row.input_snr_db;
          d["algorithm"] = std::string(to_string(row.algorithm));
          d["output_snr_db"] = row.output_snr_db;
          rows.append(d);
        }
        return rows;
      },
      py::arg("clean"), py::arg("noise"), py::arg("snrs_db"), py::arg("fs") = 8000.0,
      py::arg("noise_name") = "noise", py::arg("threads") = 1);

  m.def(
      "speech_surrogate",
      [](std::uint64_t seed, double duration_s, double fs) {
        SurrogateOptions o;
        o.seed = seed;
        o.duration_s = duration_s;
        o.sample_rate = fs;
        return to_array(speech_surrogate(o).samples);
      },
      py::arg("seed") = 1, py::arg("duration_s") = 3.0, py::arg("fs") = 8000.0);
  m.def(
      "white_noise",
      [](std::size_t samples, std::uint64_t seed, double stddev, double fs) {
        return to_array(white_noise(samples, fs, seed, stddev).samples);
      },
      py::arg("samples"), py::arg("seed") = 1, py::arg("stddev") = 0.1, py::arg("fs") = 8000.0);
}
