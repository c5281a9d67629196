// src/pipeline.cc

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

#include "mud/pipeline.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "mud/parallel.h"

namespace mud {

namespace {

std::string FormatReal(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string FormatOptional(const std::optional<double> &v) {
  return v ? FormatReal(*v) : std::string();
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path.string() + ": write failed");
}

// Fitted parameters of one channel gathered from several models.
struct ChannelFits {
  std::optional<PowerMudParams> power;
  std::optional<EmpiricalCdf> cdf;

  double range_lo() const {
    return power ? power->x_min : cdf->knots_x.front();
  }
  double range_hi() const {
    return power ? power->x_max : cdf->knots_x.back();
  }
};

ChannelFits CollectFits(const std::vector<NonlinearityModel> &models, int l) {
  ChannelFits fits;
  for (const auto &m : models) {
    const auto &ch = m.channels.at(static_cast<std::size_t>(l));
    if (auto *p = std::get_if<PowerMudParams>(&ch)) {
      if (!fits.power) fits.power = *p;
    } else if (auto *h = std::get_if<HistogramMudParams>(&ch)) {
      if (!fits.cdf) fits.cdf = h->cdf;
    } else if (auto *g = std::get_if<HistogramGaussParams>(&ch)) {
      if (!fits.cdf) fits.cdf = g->cdf;
    }
  }
  return fits;
}

const FrontendConfig &CommonFrontend(
    const std::vector<NonlinearityModel> &models) {
  if (models.empty()) throw Error("at least one model is required");
  for (const auto &m : models) {
    m.Validate();
    if (!(m.frontend == models.front().frontend))
      throw Error("all models must share the same front-end configuration");
  }
  return models.front().frontend;
}

double PowerMudUnit(double x, const PowerMudParams &p) {
  return std::clamp(ApplyPowerMud(x, p) / std::pow(p.x_max - p.x_min, p.alpha),
                    0.0, 1.0);
}

double RawUnit(double x, double lo, double hi) {
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

std::string HistogramCsv(std::span<const double> values, int bins) {
  std::string out = "bin_lo,bin_hi,count\n";
  if (values.empty()) return out;
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  const auto counts = Histogram(values, bins, lo, hi);
  const double width = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) {
    out += FormatReal(lo + width * b) + "," +
           FormatReal(b + 1 == bins ? hi : lo + width * (b + 1)) + "," +
           std::to_string(counts[b]) + "\n";
  }
  return out;
}

std::string CurvesCsv(const ChannelFits &fits, double lo, double hi,
                      int points) {
  std::string out = "energy,power15";
  if (fits.power) out += ",power_mud";
  if (fits.cdf) out += ",histogram_mud";
  out += "\n";
  for (int j = 0; j < points; ++j) {
    const double x =
        points == 1 ? lo : j + 1 == points ? hi : lo + (hi - lo) * j / (points - 1);
    out += FormatReal(x) + "," + FormatReal(ApplyFixedPower(std::max(x, 0.0)));
    if (fits.power) out += "," + FormatReal(ApplyPowerMud(x, *fits.power));
    if (fits.cdf) out += "," + FormatReal(ApplyHistogramMud(x, *fits.cdf));
    out += "\n";
  }
  return out;
}

}  // namespace

FitMethod ParseFitMethod(std::string_view name) {
  if (name == "power-mud") return FitMethod::kPowerMud;
  if (name == "histogram-mud") return FitMethod::kHistogramMud;
  if (name == "histogram-gauss") return FitMethod::kHistogramGauss;
  throw Error("unknown fit method '" + std::string(name) +
              "' (expected power-mud, histogram-mud or histogram-gauss)");
}

std::string_view FitMethodName(FitMethod method) {
  switch (method) {
    case FitMethod::kPowerMud: return "power-mud";
    case FitMethod::kHistogramMud: return "histogram-mud";
    case FitMethod::kHistogramGauss: return "histogram-gauss";
  }
  return "unknown";
}

PooledEnergies PoolCorpusEnergies(const CorpusManifest &corpus,
                                  const FrontendConfig &frontend, int threads) {
  if (corpus.empty()) throw Error("corpus is empty");
  FrontendConfig config = frontend;
  if (config.sample_rate_hz == 0) {
    try {
      config.sample_rate_hz = ReadWav(corpus.paths.front()).sample_rate_hz;
    } catch (const Error &e) {
      throw Error(std::string("cannot read ") +
                  corpus.paths.front().string() + ": " + e.what());
    }
  }
  const MelFrontend mel(config);

  std::vector<Matrix> kept(corpus.size());
  ParallelFor(corpus.size(), threads, [&](std::size_t i) {
    const auto &path = corpus.paths[i];
    AudioBuffer audio;
    try {
      audio = ReadWav(path);
    } catch (const Error &e) {
      throw Error(std::string("cannot read ") + path.string() + ": " + e.what());
    }
    if (audio.sample_rate_hz != mel.config().sample_rate_hz)
      throw Error(path.string() + ": sample rate " +
                  std::to_string(audio.sample_rate_hz) +
                  " Hz differs from the corpus rate " +
                  std::to_string(mel.config().sample_rate_hz) + " Hz");
    kept[i] = mel.ComputeWithVad(audio).KeptRows();
  });

  PooledEnergies pooled;
  pooled.frontend = mel.config();
  pooled.utterance_count = static_cast<std::int64_t>(corpus.size());
  for (const auto &k : kept) pooled.frame_count += k.rows();
  const int c = mel.config().num_channels;
  pooled.channels.assign(c, {});
  for (auto &ch : pooled.channels) ch.reserve(pooled.frame_count);
  for (auto &k : kept) {
    for (Eigen::Index m = 0; m < k.rows(); ++m)
      for (int l = 0; l < c; ++l) pooled.channels[l].push_back(k(m, l));
    k.resize(0, 0);
  }
  return pooled;
}

std::vector<ChannelNonlinearity> FitChannels(const PooledEnergies &pooled,
                                             const FitOptions &options) {
  const std::size_t c = pooled.channels.size();
  std::vector<ChannelNonlinearity> out(c);
  ParallelFor(c, options.threads, [&](std::size_t l) {
    const auto &samples = pooled.channels[l];
    try {
      if (samples.size() < 2)
        throw Error("fewer than 2 speech frames to fit");
      switch (options.method) {
        case FitMethod::kPowerMud:
          out[l] = EstimateAlphaMle(ComputeChannelStats(samples, options.delta));
          break;
        case FitMethod::kHistogramMud:
          out[l] = HistogramMudParams{BuildEmpiricalCdf(samples, options.max_knots)};
          break;
        case FitMethod::kHistogramGauss:
          out[l] = HistogramGaussParams{BuildEmpiricalCdf(samples, options.max_knots)};
          break;
      }
    } catch (const Error &e) {
      throw Error("channel " + std::to_string(l) + ": " + e.what());
    }
  });
  return out;
}

NonlinearityModel FitModel(const CorpusManifest &manifest,
                           const FitOptions &options) {
  const CorpusManifest sampled =
      SampleCorpus(manifest, options.sample_n, options.seed);
  if (sampled.size() < 2)
    throw Error("fitting needs at least 2 utterances, got " +
                std::to_string(sampled.size()));
  const PooledEnergies pooled =
      PoolCorpusEnergies(sampled, options.frontend, options.threads);

  NonlinearityModel model;
  model.frontend = pooled.frontend;
  model.channels = FitChannels(pooled, options);
  model.provenance.method = std::string(FitMethodName(options.method));
  model.provenance.utterance_count = pooled.utterance_count;
  model.provenance.corpus_size = static_cast<std::int64_t>(manifest.size());
  model.provenance.sample_n = static_cast<std::int64_t>(options.sample_n);
  model.provenance.seed = options.seed;
  model.provenance.frame_count = pooled.frame_count;
  model.Validate();
  return model;
}

std::vector<ExtractResult> ExtractCorpus(const CorpusManifest &manifest,
                                         const NonlinearityModel &model,
                                         const ExtractOptions &options) {
  const FeatureExtractor extractor(model, options.kind);
  std::filesystem::create_directories(options.out_dir);

  std::vector<ExtractResult> results(manifest.size());
  std::map<std::filesystem::path, std::size_t> claimed;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    auto &r = results[i];
    r.input = manifest.paths[i];
    r.output = options.out_dir / r.input.stem();
    r.output += "." + std::string(FeatureFormatName(options.format));
    auto [it, fresh] = claimed.emplace(r.output, i);
    if (!fresh)
      r.error = "output name " + r.output.filename().string() +
                " already used by " + manifest.paths[it->second].string();
  }

  ParallelFor(manifest.size(), options.threads, [&](std::size_t i) {
    auto &r = results[i];
    if (!r.error.empty()) return;
    try {
      const AudioBuffer audio = ReadWav(r.input);
      const FeatureMatrix features = extractor.Extract(audio);
      r.num_frames = features.num_frames();
      if (r.num_frames == 0)
        r.warning = "audio shorter than one frame; wrote 0 frames";
      WriteFeatures(features.values, options.format, r.output);
    } catch (const std::exception &e) {
      r.error = e.what();
    }
  });
  return results;
}

double KsStatistic(std::span<const double> samples) {
  if (samples.empty()) throw Error("KS statistic needs at least one sample");
  std::vector<double> u(samples.begin(), samples.end());
  for (double v : u)
    if (!(v >= 0.0 && v <= 1.0))
      throw Error("KS statistic input outside [0, 1]");
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::fabs(u[i] - lo), std::fabs(u[i] - hi)});
  }
  return d;
}

std::vector<std::int64_t> Histogram(std::span<const double> values, int bins,
                                    double lo, double hi) {
  if (bins < 1) throw Error("histogram needs at least one bin");
  if (!(hi >= lo)) throw Error("histogram range is empty");
  std::vector<std::int64_t> counts(bins, 0);
  const double width = (hi - lo) / bins;
  for (double v : values) {
    int b = width > 0.0 ? static_cast<int>(std::floor((v - lo) / width)) : 0;
    counts[std::clamp(b, 0, bins - 1)]++;
  }
  return counts;
}

UniformityReport AnalyzeCorpus(const CorpusManifest &manifest,
                               const AnalyzeOptions &options) {
  const FrontendConfig &frontend = CommonFrontend(options.models);
  const CorpusManifest sampled =
      SampleCorpus(manifest, options.sample_n, options.seed);
  const PooledEnergies pooled =
      PoolCorpusEnergies(sampled, frontend, options.threads);
  const int c = frontend.num_channels;

  UniformityReport report;
  report.frontend = frontend;
  report.utterance_count = pooled.utterance_count;
  report.channels.resize(c);

  std::vector<ChannelFits> fits(c);
  for (int l = 0; l < c; ++l) {
    fits[l] = CollectFits(options.models, l);
    if (!fits[l].power && !fits[l].cdf)
      throw Error("channel " + std::to_string(l) +
                  ": models hold no fitted power-MUD or histogram-MUD parameters");
  }

  ParallelFor(static_cast<std::size_t>(c), options.threads, [&](std::size_t li) {
    const int l = static_cast<int>(li);
    const auto &x = pooled.channels[li];
    const ChannelFits &f = fits[li];
    ChannelUniformity &cu = report.channels[li];
    cu.channel = l;
    cu.sample_count = static_cast<std::int64_t>(x.size());
    if (f.power) cu.alpha_hat = f.power->alpha;
    if (x.empty()) return;

    std::vector<double> u(x.size());
    const double lo = f.range_lo(), hi = f.range_hi();
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = RawUnit(x[i], lo, hi);
    cu.ks_statistic_raw = KsStatistic(u);
    if (f.power) {
      for (std::size_t i = 0; i < x.size(); ++i) u[i] = PowerMudUnit(x[i], *f.power);
      cu.ks_statistic_power_mud = KsStatistic(u);
    }
    if (f.cdf) {
      for (std::size_t i = 0; i < x.size(); ++i) u[i] = ApplyHistogramMud(x[i], *f.cdf);
      cu.ks_statistic_histogram_mud = KsStatistic(u);
    }
  });

  if (options.out_dir.empty()) return report;
  std::filesystem::create_directories(options.out_dir);

  std::string alpha = "channel,alpha_hat,x_min,x_max\n";
  std::string ks =
      "channel,sample_count,alpha_hat,ks_raw,ks_power_mud,ks_histogram_mud\n";
  for (int l = 0; l < c; ++l) {
    const auto &cu = report.channels[l];
    if (fits[l].power)
      alpha += std::to_string(l) + "," + FormatReal(fits[l].power->alpha) + "," +
               FormatReal(fits[l].power->x_min) + "," +
               FormatReal(fits[l].power->x_max) + "\n";
    ks += std::to_string(l) + "," + std::to_string(cu.sample_count) + "," +
          FormatOptional(cu.alpha_hat) + "," + FormatReal(cu.ks_statistic_raw) +
          "," + FormatOptional(cu.ks_statistic_power_mud) + "," +
          FormatOptional(cu.ks_statistic_histogram_mud) + "\n";
  }
  if (fits.front().power) WriteText(options.out_dir / "alpha.csv", alpha);
  WriteText(options.out_dir / "ks.csv", ks);
  WriteText(options.out_dir / "report.json", ReportToJson(report));

  const int pc = options.plot_channel;
  if (pc < 0 || pc >= c)
    throw Error("plot channel " + std::to_string(pc) + " out of range");
  const auto &x = pooled.channels[pc];
  const ChannelFits &f = fits[pc];
  const std::string tag = "_ch" + std::to_string(pc);
  WriteText(options.out_dir / ("hist" + tag + "_raw.csv"),
            HistogramCsv(x, options.bins));
  std::vector<double> y(x.size());
  if (f.power) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = ApplyPowerMud(x[i], *f.power);
    WriteText(options.out_dir / ("hist" + tag + "_power_mud.csv"),
              HistogramCsv(y, options.bins));
  }
  if (f.cdf) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = ApplyHistogramMud(x[i], *f.cdf);
    WriteText(options.out_dir / ("hist" + tag + "_histogram_mud.csv"),
              HistogramCsv(y, options.bins));
  }
  double hi = f.range_hi();
  if (!x.empty()) hi = std::max(hi, *std::max_element(x.begin(), x.end()));
  WriteText(options.out_dir / ("curves" + tag + ".csv"),
            CurvesCsv(f, f.range_lo(), hi, options.curve_points));
  return report;
}

void WriteNonlinearityCurves(const std::vector<NonlinearityModel> &models,
                             int channel, int points,
                             const std::filesystem::path &out_dir) {
  const FrontendConfig &frontend = CommonFrontend(models);
  if (points < 2) throw Error("curves need at least 2 points");
  const int c = frontend.num_channels;
  if (channel >= c) throw Error("channel " + std::to_string(channel) + " out of range");
  std::filesystem::create_directories(out_dir);
  for (int l = 0; l < c; ++l) {
    if (channel >= 0 && l != channel) continue;
    const ChannelFits f = CollectFits(models, l);
    if (!f.power && !f.cdf)
      throw Error("channel " + std::to_string(l) +
                  ": models hold no fitted power-MUD or histogram-MUD parameters");
    WriteText(out_dir / ("curves_ch" + std::to_string(l) + ".csv"),
              CurvesCsv(f, f.range_lo(), f.range_hi(), points));
  }
}

std::string ReportToJson(const UniformityReport &report) {
  using json = nlohmann::ordered_json;
  auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(); };
  json channels = json::array();
  for (const auto &cu : report.channels)
    channels.push_back({{"channel", cu.channel},
                        {"sample_count", cu.sample_count},
                        {"alpha_hat", opt(cu.alpha_hat)},
                        {"ks_statistic_raw", cu.ks_statistic_raw},
                        {"ks_statistic_power_mud", opt(cu.ks_statistic_power_mud)},
                        {"ks_statistic_histogram_mud",
                         opt(cu.ks_statistic_histogram_mud)}});
  const FrontendConfig &f = report.frontend;
  json j = {
      {"utterance_count", report.utterance_count},
      {"frontend",
       {{"sample_rate_hz", f.sample_rate_hz},
        {"frame_ms", f.frame_ms},
        {"hop_ms", f.hop_ms},
        {"window", WindowKindName(f.window)},
        {"fft_size", f.fft_size},
        {"num_channels", f.num_channels},
        {"f_min_hz", f.f_min_hz},
        {"f_max_hz", f.f_max_hz},
        {"vad",
         {{"enabled", f.vad_enabled},
          {"range_db", f.vad_range_db},
          {"floor_db", f.vad_floor_db}}}}},
      {"channels", channels},
  };
  return j.dump(1) + "\n";
}

}  // namespace mud
