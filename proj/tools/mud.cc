// tools/mud.cc

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

// Command line driver: fit, extract, analyze, compare-nonlinearities.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mud/pipeline.h"

namespace {

constexpr const char *kInputNote =
    "Input audio must be RIFF/WAVE, 16-bit PCM, mono, and every file of a "
    "run must share one sample rate. No resampling, downmixing or peak "
    "normalization is done, because any of them would silently change the "
    "energy distribution the nonlinearities are fitted to.";

struct CommonFlags {
  std::string manifest;
  std::size_t sample_n = 1000;
  std::uint64_t seed = 0;
  int threads = 0;
  mud::FrontendConfig frontend{.sample_rate_hz = 0};
  std::string window = "hann";
  bool no_vad = false;
};

void AddManifestFlags(CLI::App *cmd, CommonFlags &f, bool sampling) {
  cmd->add_option("--manifest", f.manifest,
                  "Text file with one audio path per line ('#' comments)")
      ->required();
  if (sampling) {
    cmd->add_option("--sample-n", f.sample_n,
                    "Number of utterances drawn from the manifest")
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "Seed of the utterance sampler")
        ->capture_default_str();
  }
  cmd->add_option("--threads", f.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
}

void AddFrontendFlags(CLI::App *cmd, CommonFlags &f) {
  auto &c = f.frontend;
  cmd->add_option("--channels", c.num_channels, "Mel filterbank channels")
      ->capture_default_str();
  cmd->add_option("--frame-ms", c.frame_ms, "Frame length in ms")
      ->capture_default_str();
  cmd->add_option("--hop-ms", c.hop_ms, "Frame hop in ms")->capture_default_str();
  cmd->add_option("--fft-size", c.fft_size,
                  "FFT size (0: next power of two >= frame length)")
      ->capture_default_str();
  cmd->add_option("--window", f.window, "rectangular | hann | hamming")
      ->capture_default_str();
  cmd->add_option("--f-min", c.f_min_hz, "Lowest mel band edge in Hz")
      ->capture_default_str();
  cmd->add_option("--f-max", c.f_max_hz, "Highest mel band edge in Hz (0: Nyquist)")
      ->capture_default_str();
  cmd->add_option("--vad-range-db", c.vad_range_db,
                  "Keep frames within this many dB of the loudest frame")
      ->capture_default_str();
  cmd->add_option("--vad-floor-db", c.vad_floor_db,
                  "Drop frames below this absolute frame energy")
      ->capture_default_str();
  cmd->add_flag("--no-vad", f.no_vad, "Use every frame for fitting");
}

mud::FrontendConfig FrontendFrom(const CommonFlags &f) {
  mud::FrontendConfig c = f.frontend;
  c.window = mud::ParseWindowKind(f.window);
  c.vad_enabled = !f.no_vad;
  return c;
}

std::vector<mud::NonlinearityModel> LoadModels(
    const std::vector<std::string> &paths) {
  std::vector<mud::NonlinearityModel> models;
  for (const auto &p : paths) models.push_back(mud::LoadModel(p));
  return models;
}

int RunFit(const CommonFlags &f, const std::string &method,
           const std::string &model_path, int max_knots) {
  mud::FitOptions opts;
  opts.frontend = FrontendFrom(f);
  opts.method = mud::ParseFitMethod(method);
  opts.sample_n = f.sample_n;
  opts.seed = f.seed;
  opts.max_knots = max_knots;
  opts.threads = f.threads;

  const auto manifest = mud::ReadManifest(f.manifest);
  const auto model = mud::FitModel(manifest, opts);
  mud::SaveModel(model, model_path);
  std::printf("fitted %s on %lld utterances (%lld speech frames), %d channels -> %s\n",
              method.c_str(),
              static_cast<long long>(model.provenance.utterance_count),
              static_cast<long long>(model.provenance.frame_count),
              model.frontend.num_channels, model_path.c_str());
  return 0;
}

int RunExtract(const CommonFlags &f, const std::string &model_path,
               const std::string &feature, const std::string &format,
               const std::string &out_dir) {
  const auto manifest = mud::ReadManifest(f.manifest);
  if (manifest.empty()) throw mud::Error("manifest lists no files");
  const mud::FeatureKind kind = mud::ParseFeatureKind(feature);

  mud::NonlinearityModel model;
  if (!model_path.empty()) {
    model = mud::LoadModel(model_path);
  } else {
    if (kind != mud::FeatureKind::kMfcc && kind != mud::FeatureKind::kLogMel &&
        kind != mud::FeatureKind::kPower15)
      throw mud::Error("feature '" + feature + "' needs a fitted --model");
    mud::FrontendConfig c = FrontendFrom(f);
    c.sample_rate_hz = mud::ReadWav(manifest.paths.front()).sample_rate_hz;
    model = kind == mud::FeatureKind::kPower15
                ? mud::MakeBaselineModel(c, mud::FixedPowerParams{})
                : mud::MakeBaselineModel(c, mud::LogMelParams{});
  }

  mud::ExtractOptions opts;
  opts.kind = kind;
  opts.format = mud::ParseFeatureFormat(format);
  opts.out_dir = out_dir;
  opts.threads = f.threads;
  const auto results = mud::ExtractCorpus(manifest, model, opts);

  long long frames = 0;
  int failed = 0;
  for (const auto &r : results) {
    if (!r.error.empty()) {
      ++failed;
      std::fprintf(stderr, "error: %s: %s\n", r.input.string().c_str(),
                   r.error.c_str());
      continue;
    }
    if (!r.warning.empty())
      std::fprintf(stderr, "warning: %s: %s\n", r.input.string().c_str(),
                   r.warning.c_str());
    frames += r.num_frames;
  }
  std::printf("extracted %s features for %zu of %zu files (%lld frames) -> %s\n",
              feature.c_str(), results.size() - failed, results.size(), frames,
              out_dir.c_str());
  return failed == 0 ? 0 : 1;
}

int RunAnalyze(const CommonFlags &f, const std::vector<std::string> &models,
               const std::string &out_dir, int plot_channel, int bins) {
  mud::AnalyzeOptions opts;
  opts.models = LoadModels(models);
  opts.sample_n = f.sample_n;
  opts.seed = f.seed;
  opts.plot_channel = plot_channel;
  opts.bins = bins;
  opts.out_dir = out_dir;
  opts.threads = f.threads;
  const auto report = mud::AnalyzeCorpus(mud::ReadManifest(f.manifest), opts);

  auto show = [](const std::optional<double> &v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  std::printf("%-8s %10s %10s %10s %12s %14s\n", "channel", "frames", "alpha",
              "ks_raw", "ks_power_mud", "ks_histogram");
  for (const auto &c : report.channels)
    std::printf("%-8d %10lld %10s %10.4f %12s %14s\n", c.channel,
                static_cast<long long>(c.sample_count), show(c.alpha_hat).c_str(),
                c.ks_statistic_raw, show(c.ks_statistic_power_mud).c_str(),
                show(c.ks_statistic_histogram_mud).c_str());
  std::printf("analysis of %lld utterances written to %s\n",
              static_cast<long long>(report.utterance_count), out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Data-driven compressive nonlinearities for mel filterbank "
               "features: fit per-channel power-law or histogram (CDF) "
               "transforms that make each channel's output as uniform as "
               "possible, and extract features with them."};
  app.footer(kInputNote);
  app.require_subcommand(1);

  CommonFlags common;

  auto *fit = app.add_subcommand("fit", "Fit a nonlinearity model on a corpus");
  std::string fit_method = "power-mud", fit_model;
  int max_knots = mud::kDefaultMaxKnots;
  AddManifestFlags(fit, common, true);
  AddFrontendFlags(fit, common);
  fit->add_option("--method", fit_method,
                  "power-mud | histogram-mud | histogram-gauss")
      ->capture_default_str();
  fit->add_option("--model", fit_model, "Output model file (JSON)")->required();
  fit->add_option("--max-knots", max_knots, "CDF knot budget per channel")
      ->capture_default_str();

  auto *extract = app.add_subcommand("extract", "Write features for every file");
  std::string ex_model, ex_feature = "power-mud", ex_format = "bin", ex_out;
  AddManifestFlags(extract, common, false);
  AddFrontendFlags(extract, common);
  extract->add_option("--model", ex_model,
                      "Fitted model; its front-end settings override the "
                      "front-end flags. Optional for mfcc, logmel, power15");
  extract->add_option("--feature", ex_feature,
                      "mfcc | logmel | power15 | power-mud | histogram-mud | "
                      "histogram-gauss")
      ->capture_default_str();
  extract->add_option("--format", ex_format, "csv | bin")->capture_default_str();
  extract->add_option("--out", ex_out, "Output directory")->required();

  auto *analyze = app.add_subcommand(
      "analyze", "Uniformity report, histograms and curves on held-out data");
  std::vector<std::string> an_models;
  std::string an_out;
  int plot_channel = 3, bins = 100;
  AddManifestFlags(analyze, common, true);
  analyze->add_option("--model", an_models,
                      "Fitted model(s); pass a power-mud and a histogram-mud "
                      "model to compare them")
      ->required();
  analyze->add_option("--out", an_out, "Output directory")->required();
  analyze->add_option("--plot-channel", plot_channel,
                      "Channel whose histograms and curves are written")
      ->capture_default_str();
  analyze->add_option("--bins", bins, "Histogram bins")->capture_default_str();

  auto *compare = app.add_subcommand(
      "compare-nonlinearities",
      "Sample the fitted nonlinearities and the fixed 1/15 power law over "
      "each channel's fitted energy range");
  std::vector<std::string> cmp_models;
  std::string cmp_out;
  int cmp_channel = -1, cmp_points = 256;
  compare->add_option("--model", cmp_models, "Fitted model(s)")->required();
  compare->add_option("--out", cmp_out, "Output directory")->required();
  compare->add_option("--plot-channel", cmp_channel, "Only this channel (-1: all)")
      ->capture_default_str();
  compare->add_option("--points", cmp_points, "Samples per curve")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit) return RunFit(common, fit_method, fit_model, max_knots);
    if (*extract) return RunExtract(common, ex_model, ex_feature, ex_format, ex_out);
    if (*analyze) return RunAnalyze(common, an_models, an_out, plot_channel, bins);
    if (*compare) {
      mud::WriteNonlinearityCurves(LoadModels(cmp_models), cmp_channel,
                                   cmp_points, cmp_out);
      std::printf("curves written to %s\n", cmp_out.c_str());
      return 0;
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "mud: %s\n", e.what());
    return 2;
  }
  return 0;
}
