// tests/test_pipeline.cc

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

#include <doctest.h>

#include <cmath>
#include <random>

#include "mud/pipeline.h"
#include "test_util.h"

using namespace mud;
namespace fs = std::filesystem;

namespace {

// Writes a few synthetic utterances and returns their manifest.
CorpusManifest ToyCorpus(const fs::path &dir, int files = 3) {
  CorpusManifest m;
  for (int i = 0; i < files; ++i) {
    auto path = dir / ("tone" + std::to_string(i) + ".wav");
    mud_test::WriteFile(path, mud_test::EncodeWav(
                                  mud_test::SyntheticTone(12000 + 1000 * i, 110.0 + 30 * i, i),
                                  16000));
    m.paths.push_back(path);
  }
  return m;
}

}  // namespace

TEST_CASE("ks statistic") {
  CHECK(KsStatistic(std::vector<double>(10, 0.5)) == doctest::Approx(0.5));
  const int n = 1024;
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) grid[k] = static_cast<double>(k) / n;
  CHECK(KsStatistic(grid) <= 1.0 / n);
  std::vector<double> one = {0.25};
  CHECK(KsStatistic(one) == 0.75);
  CHECK_THROWS(KsStatistic(std::vector<double>{}));
  CHECK_THROWS(KsStatistic(std::vector<double>{1.5}));

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int below = 0;
  for (int t = 0; t < 40; ++t) {
    std::vector<double> x(10000);
    for (auto &v : x) v = u(gen);
    below += KsStatistic(x) < 0.0136;
  }
  CHECK(below >= 34);
}

TEST_CASE("histogram counts") {
  std::vector<double> v = {0.0, 0.1, 0.5, 0.99, 1.0, -3.0, 7.0};
  auto h = Histogram(v, 4, 0.0, 1.0);
  CHECK(h == std::vector<std::int64_t>{3, 0, 1, 3});
  CHECK_THROWS(Histogram(v, 0, 0.0, 1.0));
}

TEST_CASE("toy corpus fits with finite positive exponents") {
  auto dir = mud_test::ScratchDir("pipeline_fit");
  auto corpus = ToyCorpus(dir);
  FitOptions opts;
  opts.threads = 2;
  NonlinearityModel m = FitModel(corpus, opts);
  CHECK(m.frontend.sample_rate_hz == 16000);
  CHECK(m.frontend.fft_size == 512);
  CHECK(m.provenance.utterance_count == 3);
  CHECK(m.provenance.frame_count > 0);
  for (const auto &ch : m.channels) {
    const auto &p = std::get<PowerMudParams>(ch);
    CHECK(std::isfinite(p.alpha));
    CHECK(p.alpha > 0);
  }
  opts.method = FitMethod::kHistogramGauss;
  opts.max_knots = 32;
  NonlinearityModel h = FitModel(corpus, opts);
  CHECK(std::get<HistogramGaussParams>(h.channels[5]).cdf.knots_x.size() <= 32);
  CHECK(h.provenance.method == "histogram-gauss");
}

TEST_CASE("fit is independent of the thread count") {
  auto dir = mud_test::ScratchDir("pipeline_threads");
  auto corpus = ToyCorpus(dir, 5);
  FitOptions opts;
  opts.sample_n = 4;
  opts.seed = 17;
  opts.threads = 1;
  const std::string one = ModelToJson(FitModel(corpus, opts));
  opts.threads = 3;
  CHECK(ModelToJson(FitModel(corpus, opts)) == one);
}

TEST_CASE("fit errors name the culprit") {
  auto dir = mud_test::ScratchDir("pipeline_errors");
  auto corpus = ToyCorpus(dir, 2);
  mud_test::WriteFile(dir / "broken.wav", {'R', 'I', 'F', 'F'});
  corpus.paths.push_back(dir / "broken.wav");
  try {
    FitModel(corpus, FitOptions{});
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("broken.wav") != std::string::npos);
  }

  CorpusManifest silent;
  for (int i = 0; i < 2; ++i) {
    auto p = dir / ("silent" + std::to_string(i) + ".wav");
    mud_test::WriteFile(p, mud_test::EncodeWav(std::vector<std::int16_t>(4000, 0), 16000));
    silent.paths.push_back(p);
  }
  FitOptions no_vad;
  no_vad.frontend.vad_enabled = false;
  try {
    FitModel(silent, no_vad);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("channel 0") != std::string::npos);
  }

  CorpusManifest single;
  single.paths = {corpus.paths[0]};
  CHECK_THROWS(FitModel(single, FitOptions{}));
}

TEST_CASE("extract writes one file per input") {
  auto dir = mud_test::ScratchDir("pipeline_extract");
  auto corpus = ToyCorpus(dir);
  mud_test::WriteFile(dir / "short.wav", mud_test::EncodeWav(std::vector<std::int16_t>(50, 3), 16000));
  corpus.paths.push_back(dir / "short.wav");
  fs::create_directories(dir / "other");
  fs::copy_file(corpus.paths[0], dir / "other" / "tone0.wav");
  corpus.paths.push_back(dir / "other" / "tone0.wav");

  NonlinearityModel model = FitModel(corpus, FitOptions{.sample_n = 3});
  ExtractOptions opts{FeatureKind::kPowerMud, FeatureFormat::kCsv, dir / "out1", 1};
  auto r1 = ExtractCorpus(corpus, model, opts);
  REQUIRE(r1.size() == 5);
  CHECK(r1[0].error.empty());
  CHECK(r1[0].num_frames == NumFrames(12000, 400, 160));
  CHECK(r1[3].warning.find("shorter") != std::string::npos);
  CHECK(fs::file_size(r1[3].output) == 0);
  CHECK(r1[4].error.find("already used") != std::string::npos);

  Matrix f = ReadFeatures(r1[1].output, FeatureFormat::kCsv);
  AudioBuffer audio = ReadWav(corpus.paths[1]);
  CHECK(f == ExtractFeatures(audio, model, FeatureKind::kPowerMud).values);

  opts.out_dir = dir / "out3";
  opts.threads = 3;
  auto r3 = ExtractCorpus(corpus, model, opts);
  for (int i = 0; i < 4; ++i)
    CHECK(mud_test::ReadFile(r1[i].output) == mud_test::ReadFile(r3[i].output));
}

TEST_CASE("analyze writes the report and plot data") {
  auto dir = mud_test::ScratchDir("pipeline_analyze");
  auto corpus = ToyCorpus(dir, 4);
  FitOptions fo;
  NonlinearityModel power = FitModel(corpus, fo);
  fo.method = FitMethod::kHistogramMud;
  NonlinearityModel hist = FitModel(corpus, fo);

  AnalyzeOptions ao;
  ao.models = {power, hist};
  ao.out_dir = dir / "report";
  ao.plot_channel = 3;
  ao.bins = 20;
  UniformityReport rep = AnalyzeCorpus(corpus, ao);
  REQUIRE(rep.channels.size() == 40);
  for (const auto &c : rep.channels) {
    CHECK(c.sample_count > 0);
    REQUIRE(c.alpha_hat.has_value());
    REQUIRE(c.ks_statistic_power_mud.has_value());
    REQUIRE(c.ks_statistic_histogram_mud.has_value());
    // Training data: the histogram fit is close to exact.
    CHECK(*c.ks_statistic_histogram_mud <= 0.01);
  }
  for (const char *name : {"alpha.csv", "ks.csv", "report.json", "hist_ch3_raw.csv",
                           "hist_ch3_power_mud.csv", "hist_ch3_histogram_mud.csv",
                           "curves_ch3.csv"})
    CHECK(fs::exists(ao.out_dir / name));
  const std::string hist_csv = mud_test::ReadFile(ao.out_dir / "hist_ch3_raw.csv");
  CHECK(std::count(hist_csv.begin(), hist_csv.end(), '\n') == 21);

  ao.models = {MakeBaselineModel(power.frontend, LogMelParams{})};
  CHECK_THROWS(AnalyzeCorpus(corpus, ao));
  FrontendConfig other = power.frontend;
  other.num_channels = 20;
  ao.models = {power, MakeBaselineModel(other, FixedPowerParams{})};
  CHECK_THROWS(AnalyzeCorpus(corpus, ao));
}

TEST_CASE("nonlinearity curves") {
  FrontendConfig fe;
  fe.num_channels = 3;
  auto m = MakeBaselineModel(fe, PowerMudParams{0.5, 1.0, 5.0, kDefaultDelta});
  auto dir = mud_test::ScratchDir("pipeline_curves");
  WriteNonlinearityCurves({m}, -1, 5, dir);
  for (int l = 0; l < 3; ++l) CHECK(fs::exists(dir / ("curves_ch" + std::to_string(l) + ".csv")));
  const std::string text = mud_test::ReadFile(dir / "curves_ch0.csv");
  CHECK(text.find("energy") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK_THROWS(WriteNonlinearityCurves({m}, 3, 5, dir));
}
