// tests/acceptance.cc

// Copyright 2026  The MUD Front-End Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion; nonzero exit status if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "mud/pipeline.h"
#include "mud/spectral.h"
#include "test_util.h"

using namespace mud;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double Seconds(const std::function<void()> &fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

char Buf[512];
template <typename... Args>
std::string Fmt(const char *fmt, Args... args) {
  std::snprintf(Buf, sizeof(Buf), fmt, args...);
  return Buf;
}

std::vector<double> PowerDraws(double alpha, int n, std::mt19937_64 &gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (auto &v : x) v = std::pow(u(gen), 1.0 / alpha);
  return x;
}

// Datasets of mixed shape: power-law, exponential, lognormal, gamma and
// uniform draws, randomly shifted and scaled.
std::vector<double> MixedDataset(int kind, int n, std::mt19937_64 &gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  switch (kind % 5) {
    case 0: {
      const double alpha = std::exp(std::log(0.02) + u(gen) * std::log(100.0));
      x = PowerDraws(alpha, n, gen);
      break;
    }
    case 1: {
      std::exponential_distribution<double> d(0.1 + 10 * u(gen));
      for (auto &v : x) v = d(gen);
      break;
    }
    case 2: {
      std::lognormal_distribution<double> d(0.0, 0.2 + 2.5 * u(gen));
      for (auto &v : x) v = d(gen);
      break;
    }
    case 3: {
      std::gamma_distribution<double> d(0.1 + 3 * u(gen), 1.0);
      for (auto &v : x) v = d(gen);
      break;
    }
    default:
      for (auto &v : x) v = u(gen);
  }
  const double scale = std::pow(10.0, 8 * u(gen) - 4), shift = 10 * u(gen) - 5;
  for (auto &v : x) v = scale * (v + shift);
  return x;
}

Outcome MleRecovery() {
  std::mt19937_64 gen(20260101);
  double worst_err = 0, worst_time = 0;
  std::string per;
  for (double alpha : {1.0 / 15, 0.1, 0.5, 1.0, 2.0}) {
    auto x = PowerDraws(alpha, 100000, gen);
    double a = 0;
    const double t = Seconds([&] { a = EstimateAlphaMle(ComputeChannelStats(x)).alpha; });
    const double err = std::abs(a - alpha) / alpha;
    worst_err = std::max(worst_err, err);
    worst_time = std::max(worst_time, t);
    per += Fmt(" %.4g->%.4g", alpha, a);
  }
  return {worst_err < 0.02 && worst_time < 1.0,
          Fmt("max rel err %.3f%% (< 2%%), max time %.4f s (< 1 s);", 100 * worst_err, worst_time) + per};
}

Outcome GridOracle() {
  std::mt19937_64 gen(77);
  const auto grid = LogSpacedGrid(1e-3, 10.0, 10000);
  int violations = 0;
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    auto x = MixedDataset(t, 1000, gen);
    ChannelStats st = ComputeChannelStats(x);
    const double a = EstimateAlphaMle(st).alpha;
    const double g = EstimateAlphaOnGrid(st, grid);
    auto cell = std::upper_bound(grid.begin(), grid.end(), a);
    if (cell == grid.begin() || cell == grid.end()) {
      ++violations;
      continue;
    }
    const double step = *cell - *(cell - 1);
    worst = std::max(worst, std::abs(g - a) / step);
    if (std::abs(g - a) > step) ++violations;
  }
  return {violations == 0,
          Fmt("50 datasets, %d violations, max |grid - mle| = %.3f grid steps", violations, worst)};
}

// Data on a fixed-point grid with a and b chosen so that a * x + b is exact;
// otherwise rounding of the input itself, not the estimator, moves alpha.
Outcome AffineInvariance() {
  std::mt19937_64 gen(99);
  int violations = 0, inexact = 0;
  double worst = 0, a_lo = 1e300, a_hi = 0, b_abs = 0;
  for (int t = 0; t < 100; ++t) {
    const auto d = mud_test::MakeExactAffine(MixedDataset(t, 1000, gen), gen);
    for (std::size_t i = 0; i < d.x.size(); ++i) inexact += d.a * d.x[i] + d.b != d.y[i];
    a_lo = std::min(a_lo, d.a), a_hi = std::max(a_hi, d.a), b_abs = std::max(b_abs, std::abs(d.b));
    const double ax = EstimateAlphaMle(ComputeChannelStats(d.x)).alpha;
    const double ay = EstimateAlphaMle(ComputeChannelStats(d.y)).alpha;
    const double rel = std::abs(ax - ay) / ax;
    worst = std::max(worst, rel);
    if (rel > 1e-9) ++violations;
  }
  return {violations == 0 && inexact == 0,
          Fmt("100 datasets, a in [%.1e, %.1e], |b| <= %.1e; %d violations, max rel diff %.2e (<= 1e-9)",
              a_lo, a_hi, b_abs, violations, worst)};
}

Outcome HistogramUniformization() {
  std::mt19937_64 gen(4242);
  std::exponential_distribution<double> d(1.0);
  std::vector<double> train(10000), held(10000);
  for (auto &v : train) v = d(gen);
  for (auto &v : held) v = d(gen);
  double ks = 0;
  const double t = Seconds([&] {
    EmpiricalCdf cdf = BuildEmpiricalCdf(train);
    std::vector<double> y(held.size());
    for (std::size_t i = 0; i < held.size(); ++i) y[i] = ApplyHistogramMud(held[i], cdf);
    ks = KsStatistic(y);
  });
  return {ks <= 0.03 && t < 1.0, Fmt("held-out KS %.4f (<= 0.03), time %.4f s (< 1 s)", ks, t)};
}

CorpusManifest SpeechCorpus() {
  CorpusManifest m;
  m.paths = mud_test::SpeechFiles();
  return m;
}

Outcome AlphaBand(const NonlinearityModel &model) {
  int inside = 0;
  double lo = 1e300, hi = -1e300;
  for (const auto &ch : model.channels) {
    const double a = std::get<PowerMudParams>(ch).alpha;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    inside += a >= 0.02 && a <= 0.2;
  }
  return {inside == 40 && model.provenance.utterance_count >= 20,
          Fmt("%lld utterances, %lld speech frames; %d/40 alpha in [0.02, 0.2], range [%.4f, %.4f]",
              static_cast<long long>(model.provenance.utterance_count),
              static_cast<long long>(model.provenance.frame_count), inside, lo, hi)};
}

Outcome KsOrdering() {
  CorpusManifest fit, held;
  const auto all = SpeechCorpus();
  for (std::size_t i = 0; i < all.size(); ++i)
    (i % 3 == 2 ? held : fit).paths.push_back(all.paths[i]);
  FitOptions fo;
  fo.frontend.num_channels = 40;
  NonlinearityModel power = FitModel(fit, fo);
  fo.method = FitMethod::kHistogramMud;
  NonlinearityModel hist = FitModel(fit, fo);
  AnalyzeOptions ao;
  ao.models = {power, hist};
  UniformityReport rep = AnalyzeCorpus(held, ao);
  int ordered = 0;
  std::string misses;
  double mean_raw = 0, mean_pow = 0, mean_hist = 0;
  for (const auto &c : rep.channels) {
    const double r = c.ks_statistic_raw, p = *c.ks_statistic_power_mud,
                 h = *c.ks_statistic_histogram_mud;
    mean_raw += r / 40, mean_pow += p / 40, mean_hist += h / 40;
    if (h <= p && p <= r)
      ++ordered;
    else
      misses += Fmt(" ch%d(h=%.3f,p=%.3f,r=%.3f)", c.channel, h, p, r);
  }
  return {ordered >= 38,
          Fmt("fit on %zu, held out %zu utterances; %d/40 channels hist <= power <= raw (>= 38); "
              "mean KS hist %.3f power %.3f raw %.3f",
              fit.size(), held.size(), ordered, mean_hist, mean_pow, mean_raw) +
              misses};
}

Outcome FrontEndOracles() {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  double dft_err = 0;
  for (int k_size : {2, 4, 8, 16, 32, 64})
    for (int trial = 0; trial < 10; ++trial) {
      const int len = std::max(1, k_size - trial % 3);
      Vector frame(len);
      for (auto &v : frame) v = nd(gen);
      Vector fast = PowerSpectrum(frame, k_size);
      for (int k = 0; k <= k_size / 2; ++k) {
        std::complex<double> acc = 0;
        for (int n = 0; n < len; ++n) acc += frame(n) * std::polar(1.0, -2.0 * M_PI * k * n / k_size);
        dft_err = std::max(dft_err, std::abs(fast(k) - std::norm(acc)) / fast.maxCoeff());
      }
    }

  double mel_err = 0;
  auto fb = BuildMelFilterbank(512, 40, 16000, 20.0, 8000.0);
  std::exponential_distribution<double> ed(1.0);
  Matrix spectra(30, 257);
  for (int i = 0; i < spectra.size(); ++i) spectra.data()[i] = ed(gen);
  Matrix e = MelEnergies(spectra, fb);
  for (int m = 0; m < 30; ++m)
    for (int l = 0; l < 40; ++l) {
      double acc = 0;
      for (int k = 0; k < 257; ++k) acc += spectra(m, k) * fb.weights(l, k);
      mel_err = std::max(mel_err, std::abs(e(m, l) - acc) / std::abs(acc));
    }

  double dct_err = 0;
  for (int n : {1, 2, 13, 23, 40, 64}) {
    Matrix d = DctMatrix(n, n);
    dct_err = std::max(dct_err, (d * d.transpose() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
  }
  return {dft_err <= 1e-9 && mel_err <= 1e-12 && dct_err <= 1e-9,
          Fmt("DFT rel err %.2e (<= 1e-9), mel rel err %.2e (<= 1e-12), DCT orthonormality err %.2e (<= 1e-9)",
              dft_err, mel_err, dct_err)};
}

bool SameFiles(const fs::path &a, const fs::path &b, int &count) {
  bool same = true;
  for (const auto &e : fs::directory_iterator(a)) {
    same = same && mud_test::ReadFile(e.path()) == mud_test::ReadFile(b / e.path().filename());
    ++count;
  }
  return same;
}

Outcome Determinism(const fs::path &scratch) {
  const auto corpus = SpeechCorpus();
  FitOptions fo;
  fo.sample_n = 15;
  fo.seed = 31337;
  fo.threads = 1;
  SaveModel(FitModel(corpus, fo), scratch / "run1.json");
  SaveModel(FitModel(corpus, fo), scratch / "run2.json");
  fo.threads = 4;
  SaveModel(FitModel(corpus, fo), scratch / "run4.json");
  const std::string r1 = mud_test::ReadFile(scratch / "run1.json");
  const bool fit_same = r1 == mud_test::ReadFile(scratch / "run2.json") &&
                        r1 == mud_test::ReadFile(scratch / "run4.json");

  fo.method = FitMethod::kHistogramMud;
  fo.threads = 1;
  const std::string h1 = ModelToJson(FitModel(corpus, fo));
  fo.threads = 4;
  const bool hist_same = h1 == ModelToJson(FitModel(corpus, fo));

  const NonlinearityModel model = LoadModel(scratch / "run1.json");
  bool extract_same = true;
  int files = 0;
  for (auto format : {FeatureFormat::kBinary, FeatureFormat::kCsv}) {
    const std::string tag(FeatureFormatName(format));
    ExtractCorpus(corpus, model, {FeatureKind::kPowerMud, format, scratch / ("xa_" + tag), 1});
    ExtractCorpus(corpus, model, {FeatureKind::kPowerMud, format, scratch / ("xb_" + tag), 1});
    ExtractCorpus(corpus, model, {FeatureKind::kPowerMud, format, scratch / ("xc_" + tag), 4});
    int n = 0;
    extract_same = extract_same && SameFiles(scratch / ("xa_" + tag), scratch / ("xb_" + tag), n) &&
                   SameFiles(scratch / ("xa_" + tag), scratch / ("xc_" + tag), n);
    files += n;
  }
  return {fit_same && hist_same && extract_same && files > 0,
          Fmt("power fit identical across runs and 1/4 threads: %s; histogram fit: %s; "
              "%d extract outputs byte-identical: %s",
              fit_same ? "yes" : "no", hist_same ? "yes" : "no", files, extract_same ? "yes" : "no")};
}

Outcome Serialization(const fs::path &scratch) {
  auto corpus = SpeechCorpus();
  corpus.paths.resize(10);
  FitOptions fo;
  int compared = 0;
  bool exact = true;
  for (auto method : {FitMethod::kPowerMud, FitMethod::kHistogramMud, FitMethod::kHistogramGauss}) {
    fo.method = method;
    const NonlinearityModel model = FitModel(corpus, fo);
    const fs::path path = scratch / (std::string(FitMethodName(method)) + ".json");
    SaveModel(model, path);
    const NonlinearityModel loaded = LoadModel(path);
    exact = exact && loaded == model;
    const FeatureKind kind = method == FitMethod::kPowerMud       ? FeatureKind::kPowerMud
                             : method == FitMethod::kHistogramMud ? FeatureKind::kHistogramMud
                                                                  : FeatureKind::kHistogramGauss;
    const FeatureExtractor before(model, kind), after(loaded, kind);
    for (const auto &p : corpus.paths) {
      const AudioBuffer audio = ReadWav(p);
      exact = exact && before.Extract(audio).values == after.Extract(audio).values;
      ++compared;
    }
  }
  return {exact && compared == 30,
          Fmt("%d utterance x model pairs (10 utterances, 3 model kinds) bit-exact after save/load: %s",
              compared, exact ? "yes" : "no")};
}

}  // namespace

int main() {
  const fs::path scratch = mud_test::ScratchDir("acceptance");
  int failed = 0;
  auto report = [&](int id, const char *name, const std::function<Outcome()> &fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  };

  report(1, "MLE recovery", MleRecovery);
  report(2, "grid oracle equivalence", GridOracle);
  report(3, "affine invariance", AffineInvariance);
  report(4, "histogram-MUD uniformization", HistogramUniformization);
  report(5, "per-channel exponent band on real speech", [] {
    FitOptions fo;
    return AlphaBand(FitModel(SpeechCorpus(), fo));
  });
  report(6, "KS ordering on held-out speech", KsOrdering);
  report(7, "front-end oracles", FrontEndOracles);
  report(8, "determinism", [&] { return Determinism(scratch); });
  report(9, "model serialization round trip", [&] { return Serialization(scratch); });

  std::printf("%s: %d of 9 criteria failed\n", failed ? "FAILED" : "PASSED", failed);
  return failed ? 1 : 0;
}
