// mud/pipeline.h

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

#ifndef MUD_PIPELINE_H_
#define MUD_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mud/corpus.h"
#include "mud/feature_io.h"
#include "mud/model_io.h"
#include "mud/nonlinearity.h"

namespace mud {

// Corpus-level operations behind the `mud` command line tool. Per-file work
// runs in parallel; every cross-file reduction happens afterwards in
// manifest order, so results do not depend on the thread count.

enum class FitMethod { kPowerMud, kHistogramMud, kHistogramGauss };

FitMethod ParseFitMethod(std::string_view name);
std::string_view FitMethodName(FitMethod method);

/// VAD-kept mel energies pooled over a corpus, one vector per channel, in
/// manifest order.
struct PooledEnergies {
  FrontendConfig frontend;  // resolved, with the corpus sample rate
  std::vector<std::vector<double>> channels;
  std::int64_t frame_count = 0;
  std::int64_t utterance_count = 0;
};

/// Decodes every file, applies the front end and VAD and pools the kept
/// frames. When frontend.sample_rate_hz is 0 the rate of the first file is
/// used; any other rate is an error naming the file. A file that fails to
/// decode is an error naming the file.
PooledEnergies PoolCorpusEnergies(const CorpusManifest &corpus,
                                  const FrontendConfig &frontend, int threads);

struct FitOptions {
  FrontendConfig frontend{.sample_rate_hz = 0};
  FitMethod method = FitMethod::kPowerMud;
  std::size_t sample_n = 1000;
  std::uint64_t seed = 0;
  double delta = kDefaultDelta;
  int max_knots = kDefaultMaxKnots;
  int threads = 0;
};

/// Fits one nonlinearity per channel on already pooled energies. A channel
/// that cannot be fitted raises an error naming it.
std::vector<ChannelNonlinearity> FitChannels(const PooledEnergies &pooled,
                                             const FitOptions &options);

/// Samples `sample_n` utterances with `seed`, pools their VAD-kept mel
/// energies and fits the requested nonlinearity for every channel.
NonlinearityModel FitModel(const CorpusManifest &manifest,
                           const FitOptions &options);

struct ExtractOptions {
  FeatureKind kind = FeatureKind::kPowerMud;
  FeatureFormat format = FeatureFormat::kBinary;
  std::filesystem::path out_dir;
  int threads = 0;
};

struct ExtractResult {
  std::filesystem::path input;
  std::filesystem::path output;
  int num_frames = 0;
  std::string error;    // empty on success
  std::string warning;  // e.g. audio shorter than one frame
};

/// Writes one feature file per input, named <stem>.<csv|bin> in out_dir.
/// Failures are recorded per file and do not stop the remaining files.
std::vector<ExtractResult> ExtractCorpus(const CorpusManifest &manifest,
                                         const NonlinearityModel &model,
                                         const ExtractOptions &options);

/// Sup-norm distance between the empirical CDF of `samples` and the U(0, 1)
/// CDF: max_i max(|u_(i) - i/N|, |u_(i) - (i+1)/N|) over the sorted values.
/// Throws on an empty input or values outside [0, 1].
double KsStatistic(std::span<const double> samples);

/// Bin counts over [lo, hi] with equal-width bins; the value hi falls in the
/// last bin and values outside the range are clamped to the end bins.
std::vector<std::int64_t> Histogram(std::span<const double> values, int bins,
                                    double lo, double hi);

struct ChannelUniformity {
  int channel = 0;
  std::int64_t sample_count = 0;
  std::optional<double> alpha_hat;
  double ks_statistic_raw = 0.0;
  std::optional<double> ks_statistic_power_mud;
  std::optional<double> ks_statistic_histogram_mud;
};

struct UniformityReport {
  FrontendConfig frontend;
  std::int64_t utterance_count = 0;
  std::vector<ChannelUniformity> channels;
};

struct AnalyzeOptions {
  std::vector<NonlinearityModel> models;  // power and/or histogram fits
  std::size_t sample_n = 1000;
  std::uint64_t seed = 0;
  int plot_channel = 3;
  int bins = 100;
  int curve_points = 256;
  std::filesystem::path out_dir;  // empty: compute the report only
  int threads = 0;
};

/// Per-channel uniformity of raw energies and of each fitted nonlinearity's
/// output on (ideally held-out) data. Outputs are mapped onto [0, 1] before
/// the KS test: raw energy as (x - x_min) / (x_max - x_min), power-MUD
/// output divided by (x_max - x_min)^alpha, both clamped, with x_min and
/// x_max from the fit. Writes alpha.csv, ks.csv, report.json, the plot
/// channel's histograms and the nonlinearity curve CSV when out_dir is set.
UniformityReport AnalyzeCorpus(const CorpusManifest &manifest,
                               const AnalyzeOptions &options);

/// Nonlinearity curves of every channel (or only `channel` when >= 0) over
/// the fitted energy range, one CSV per channel named curves_ch<L>.csv.
void WriteNonlinearityCurves(const std::vector<NonlinearityModel> &models,
                             int channel, int points,
                             const std::filesystem::path &out_dir);

std::string ReportToJson(const UniformityReport &report);

}  // namespace mud

#endif  // MUD_PIPELINE_H_
