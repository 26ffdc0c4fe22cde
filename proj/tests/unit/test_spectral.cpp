#include <cmath>
#include <random>

#include "doctest.h"
#include "mbss/spectral.hpp"
#include "oracles.hpp"

using namespace mbss;

namespace {

Frame make_frame(std::vector<double> samples) {
  Frame f;
  f.valid = samples.size();
  f.samples = std::move(samples);
  return f;
}

double max_abs_error(const std::vector<Complex>& a, const std::vector<std::complex<double>>& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  return err;
}

double max_abs(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("segment splits into non-overlapping frames") {
  TimeSignal s;
  s.samples.resize(512);
  for (std::size_t i = 0; i < s.size(); ++i) s.samples[i] = static_cast<double>(i);
  const auto frames = segment(s, 256);
  REQUIRE(frames.size() == 2);
  CHECK(frames[0].samples.front() == 0.0);
  CHECK(frames[0].samples.back() == 255.0);
  CHECK(frames[1].samples.front() == 256.0);
  CHECK(frames[1].samples.back() == 511.0);
  CHECK_FALSE(frames[1].partial());
}

TEST_CASE("segment zero-pads the trailing frame") {
  TimeSignal s;
  s.samples.assign(300, 1.0);
  const auto frames = segment(s, 256);
  REQUIRE(frames.size() == 2);
  CHECK(frames[1].partial());
  CHECK(frames[1].valid == 44);
  const auto zeros = std::count(frames[1].samples.begin(), frames[1].samples.end(), 0.0);
  CHECK(zeros == 212);

  s.samples.assign(100, 1.0);
  const auto one = segment(s, 256);
  REQUIRE(one.size() == 1);
  CHECK(one[0].partial());
  CHECK(one[0].valid == 100);
}

TEST_CASE("segment rejects bad input") {
  TimeSignal s;
  CHECK_THROWS_WITH_AS(segment(s, 256), "signal too short", DataError);
  s.samples.assign(10, 0.0);
  CHECK_THROWS_AS(segment(s, 300), ConfigError);
  CHECK_THROWS_AS(segment(s, 1), ConfigError);
}

TEST_CASE("fft of trivial frames") {
  const auto zero = fft(make_frame(std::vector<double>(16, 0.0)));
  for (const auto& c : zero.bins) CHECK(c == Complex{0.0, 0.0});

  std::vector<double> impulse(8, 0.0);
  impulse[0] = 1.0;
  const auto spec = fft(make_frame(impulse));
  for (const auto& c : spec.bins) {
    CHECK(c.real() == doctest::Approx(1.0));
    CHECK(c.imag() == doctest::Approx(0.0));
  }

  CHECK_THROWS_AS(fft(make_frame(std::vector<double>(12, 0.0))), ConfigError);
  ComplexSpectrum odd;
  odd.bins.resize(6);
  CHECK_THROWS_AS(ifft(odd), ConfigError);
}

TEST_CASE("fft matches the direct DFT for every power of two up to 256") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 256; n *= 2) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = oracle::random_frame(rng, n);
      const auto ours = fft(make_frame(x)).bins;
      const auto ref = oracle::direct_dft(x);
      CHECK(max_abs_error(ours, ref) <= 1e-9 * max_abs(ref));
    }
  }
}

TEST_CASE("Parseval and conjugate symmetry hold for real frames") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = oracle::random_frame(rng, 256);
    const auto spec = fft(make_frame(x));
    double time_energy = 0.0, freq_energy = 0.0;
    for (double v : x) time_energy += v * v;
    for (const auto& c : spec.bins) freq_energy += std::norm(c);
    CHECK(std::abs(time_energy - freq_energy / 256.0) <= 1e-9 * time_energy);
    for (std::size_t k = 1; k < 256; ++k) {
      CHECK(std::abs(spec.bins[k] - std::conj(spec.bins[256 - k])) <= 1e-9);
    }
  }
}

TEST_CASE("ifft inverts fft") {
  std::mt19937_64 rng(13);
  const auto x = oracle::random_frame(rng, 256);
  const Frame back = ifft(fft(make_frame(x)));
  double se = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) se += std::pow(back.samples[i] - x[i], 2);
  CHECK(std::sqrt(se / 256.0) <= 1e-9);

  ComplexSpectrum zero;
  zero.bins.assign(32, Complex{});
  for (double v : ifft(zero).samples) CHECK(v == 0.0);
}

TEST_CASE("ifft of a conjugate bin pair is a sampled cosine") {
  // X[k] = X[N-k] = N/2 gives x[m] = cos(2 pi k m / N).
  const std::size_t n = 64, k = 5;
  ComplexSpectrum spec;
  spec.bins.assign(n, Complex{});
  spec.bins[k] = spec.bins[n - k] = Complex{n / 2.0, 0.0};
  const Frame f = ifft(spec);
  for (std::size_t m = 0; m < n; ++m) {
    CHECK(f.samples[m] == doctest::Approx(std::cos(2.0 * kPi * k * m / n)).epsilon(1e-12));
  }
}

TEST_CASE("polar conversions") {
  ComplexSpectrum c;
  c.bins = {{1.0, 0.0}, {0.0, 2.0}, {-1.0, -1.0}, {0.0, 0.0}, {-1.0, -0.0}};
  const auto mp = to_mag_phase(c);
  CHECK(mp.magnitudes[0] == 1.0);
  CHECK(mp.phases[0] == 0.0);
  CHECK(mp.magnitudes[1] == 2.0);
  CHECK(mp.phases[1] == doctest::Approx(kPi / 2));
  CHECK(mp.magnitudes[2] == doctest::Approx(std::sqrt(2.0)));
  CHECK(mp.phases[2] == doctest::Approx(-3.0 * kPi / 4));
  CHECK(mp.magnitudes[3] == 0.0);
  CHECK(mp.phases[3] == 0.0);
  CHECK(mp.phases[4] == kPi);  // (-1, -0) folds onto +pi

  MagPhaseSpectrum m;
  m.magnitudes = {1.0, 0.0, 2.0};
  m.phases = {0.0, 1.234, kPi / 3};
  const auto back = from_mag_phase(m);
  CHECK(back.bins[0] == Complex{1.0, 0.0});
  CHECK(back.bins[1] == Complex{0.0, 0.0});
  CHECK(back.bins[2].real() == doctest::Approx(1.0));
  CHECK(back.bins[2].imag() == doctest::Approx(1.7320508));
}

TEST_CASE("polar round trips are identities") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  ComplexSpectrum c;
  for (int i = 0; i < 1000; ++i) c.bins.emplace_back(u(rng), u(rng));
  const auto mp = to_mag_phase(c);
  const auto back = from_mag_phase(mp);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::abs(back.bins[i] - c.bins[i]) <= 1e-9);
    CHECK(mp.phases[i] > -kPi);
    CHECK(mp.phases[i] <= kPi);
  }
  const auto again = to_mag_phase(back);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::abs(again.magnitudes[i] - mp.magnitudes[i]) <= 1e-9);
    CHECK(std::abs(wrap_phase(again.phases[i] - mp.phases[i])) <= 1e-9);
  }
}

TEST_CASE("wrap_phase maps into (-pi, pi]") {
  CHECK(wrap_phase(kPi) == kPi);
  CHECK(wrap_phase(-kPi) == kPi);
  CHECK(wrap_phase(-3.5) == doctest::Approx(2.0 * kPi - 3.5));
  CHECK(wrap_phase(7.0) == doctest::Approx(7.0 - 2.0 * kPi));
  CHECK(wrap_phase(0.25) == 0.25);
}

TEST_CASE("TimeSignal validation") {
  TimeSignal s;
  s.samples = {0.0, NAN};
  CHECK_THROWS_AS(s.validate(), DataError);
  s.samples = {0.0};
  s.sample_rate = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}
