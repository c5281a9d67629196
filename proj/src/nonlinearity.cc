// src/nonlinearity.cc

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

#include "mud/nonlinearity.h"

#include <algorithm>
#include <cmath>

namespace mud {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <std::size_t N>
double Poly(const double (&c)[N], double x) {
  double r = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) r = r * x + c[i];
  return r;
}

const EmpiricalCdf *CdfOf(const ChannelNonlinearity &channel) {
  if (auto *h = std::get_if<HistogramMudParams>(&channel)) return &h->cdf;
  if (auto *g = std::get_if<HistogramGaussParams>(&channel)) return &g->cdf;
  return nullptr;
}

}  // namespace

NonlinearityKind KindOf(const ChannelNonlinearity &channel) {
  return std::visit(
      Overloaded{
          [](const LogMelParams &) { return NonlinearityKind::kLog; },
          [](const FixedPowerParams &) { return NonlinearityKind::kFixedPower; },
          [](const PowerMudParams &) { return NonlinearityKind::kPowerMud; },
          [](const HistogramMudParams &) {
            return NonlinearityKind::kHistogramMud;
          },
          [](const HistogramGaussParams &) {
            return NonlinearityKind::kHistogramGauss;
          },
      },
      channel);
}

std::string_view KindName(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::kLog: return "log";
    case NonlinearityKind::kFixedPower: return "fixed_power";
    case NonlinearityKind::kPowerMud: return "power_mud";
    case NonlinearityKind::kHistogramMud: return "histogram_mud";
    case NonlinearityKind::kHistogramGauss: return "histogram_gauss";
  }
  return "unknown";
}

NonlinearityKind ParseKindName(std::string_view name) {
  for (auto k : {NonlinearityKind::kLog, NonlinearityKind::kFixedPower,
                 NonlinearityKind::kPowerMud, NonlinearityKind::kHistogramMud,
                 NonlinearityKind::kHistogramGauss})
    if (KindName(k) == name) return k;
  throw SchemaError("unknown nonlinearity kind '" + std::string(name) + "'");
}

double ApplyPowerMud(double x, const PowerMudParams &params) {
  return std::pow(std::max(x, params.x_min) - params.x_min, params.alpha);
}

double ApplyHistogramMud(double x, const EmpiricalCdf &cdf) {
  return EvaluateCdf(cdf, x);
}

double ApplyHistogramGauss(double x, const EmpiricalCdf &cdf) {
  const double u = std::clamp(EvaluateCdf(cdf, x), kGaussClampEpsilon,
                              1.0 - kGaussClampEpsilon);
  return NormalQuantile(u);
}

double ApplyFixedPower(double x, double exponent) {
  if (x < 0.0) throw Error("fixed power-law input must be nonnegative");
  return std::pow(x, exponent);
}

double LogMel(double x, double floor) { return std::log(std::max(x, floor)); }

double NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error("normal quantile needs 0 < p < 1");

  static constexpr double a[] = {
      3.3871328727963666080e0,  1.3314166789178437745e+2,
      1.9715909503065514427e+3, 1.3731693765509461125e+4,
      4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[] = {
      1.0,                      4.2313330701600911252e+1,
      6.8718700749205790830e+2, 5.3941960214247511077e+3,
      2.1213794301586595867e+4, 3.9307895800092710610e+4,
      2.8729085735721942674e+4, 5.2264952788528545610e+3};
  static constexpr double c[] = {
      1.42343711074968357734e0,  4.63033784615654529590e0,
      5.76949722146069140550e0,  3.64784832476320460504e0,
      1.27045825245236838258e0,  2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[] = {
      1.0,                       2.05319162663775882187e0,
      1.67638483018380384940e0,  6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static constexpr double e[] = {
      6.65790464350110377720e0,  5.46378491116411436990e0,
      1.78482653991729133580e0,  2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[] = {
      1.0,                       5.99832206555887937690e-1,
      1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * Poly(a, r) / Poly(b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    z = Poly(c, r) / Poly(d, r);
  } else {
    r -= 5.0;
    z = Poly(e, r) / Poly(f, r);
  }
  return q < 0.0 ? -z : z;
}

double ApplyNonlinearity(const ChannelNonlinearity &channel, double x) {
  return std::visit(
      Overloaded{
          [x](const LogMelParams &p) { return LogMel(x, p.floor); },
          [x](const FixedPowerParams &p) {
            return ApplyFixedPower(x, p.exponent);
          },
          [x](const PowerMudParams &p) { return ApplyPowerMud(x, p); },
          [x](const HistogramMudParams &p) {
            return ApplyHistogramMud(x, p.cdf);
          },
          [x](const HistogramGaussParams &p) {
            return ApplyHistogramGauss(x, p.cdf);
          },
      },
      channel);
}

void NonlinearityModel::Validate() const {
  if (static_cast<int>(channels.size()) != frontend.num_channels)
    throw SchemaError("model has " + std::to_string(channels.size()) +
                      " channels but the front end declares " +
                      std::to_string(frontend.num_channels));
  for (std::size_t l = 0; l < channels.size(); ++l) {
    const std::string where = "channel " + std::to_string(l) + ": ";
    try {
      std::visit(
          Overloaded{
              [](const LogMelParams &p) {
                if (!(p.floor > 0.0) || !std::isfinite(p.floor))
                  throw SchemaError("log floor must be positive");
              },
              [](const FixedPowerParams &p) {
                if (!(p.exponent > 0.0) || !std::isfinite(p.exponent))
                  throw SchemaError("fixed exponent must be positive");
              },
              [](const PowerMudParams &p) {
                if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
                  throw SchemaError("alpha must be positive");
                if (!(p.delta > 0.0))
                  throw SchemaError("delta must be positive");
                if (!(p.x_max > p.x_min))
                  throw SchemaError("x_max must exceed x_min");
              },
              [](const HistogramMudParams &p) { ValidateCdf(p.cdf); },
              [](const HistogramGaussParams &p) { ValidateCdf(p.cdf); },
          },
          channels[l]);
    } catch (const SchemaError &e) {
      throw SchemaError(where + e.what());
    }
  }
}

NonlinearityModel MakeBaselineModel(const FrontendConfig &frontend,
                                    const ChannelNonlinearity &channel) {
  NonlinearityModel model;
  model.frontend = frontend.Resolved();
  model.provenance.method = std::string(KindName(KindOf(channel)));
  model.channels.assign(model.frontend.num_channels, channel);
  return model;
}

FeatureKind ParseFeatureKind(std::string_view name) {
  for (auto k : {FeatureKind::kMfcc, FeatureKind::kLogMel,
                 FeatureKind::kPower15, FeatureKind::kPowerMud,
                 FeatureKind::kHistogramMud, FeatureKind::kHistogramGauss})
    if (FeatureKindName(k) == name) return k;
  throw Error("unknown feature kind '" + std::string(name) + "'");
}

std::string_view FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kMfcc: return "mfcc";
    case FeatureKind::kLogMel: return "logmel";
    case FeatureKind::kPower15: return "power15";
    case FeatureKind::kPowerMud: return "power-mud";
    case FeatureKind::kHistogramMud: return "histogram-mud";
    case FeatureKind::kHistogramGauss: return "histogram-gauss";
  }
  return "unknown";
}

FeatureExtractor::FeatureExtractor(const NonlinearityModel &model,
                                   FeatureKind kind)
    : frontend_(model.frontend), kind_(kind) {
  model.Validate();
  const int c = frontend_.config().num_channels;
  transforms_.reserve(c);
  for (int l = 0; l < c; ++l) {
    const ChannelNonlinearity &ch = model.channels[l];
    switch (kind) {
      case FeatureKind::kMfcc:
      case FeatureKind::kLogMel:
        if (auto *p = std::get_if<LogMelParams>(&ch))
          transforms_.emplace_back(*p);
        else
          transforms_.emplace_back(LogMelParams{});
        break;
      case FeatureKind::kPower15:
        if (auto *p = std::get_if<FixedPowerParams>(&ch))
          transforms_.emplace_back(*p);
        else
          transforms_.emplace_back(FixedPowerParams{});
        break;
      case FeatureKind::kPowerMud:
        if (auto *p = std::get_if<PowerMudParams>(&ch)) {
          transforms_.emplace_back(*p);
          break;
        }
        throw Error("feature 'power-mud' needs fitted power-MUD parameters, "
                    "but channel " + std::to_string(l) + " holds '" +
                    std::string(KindName(KindOf(ch))) + "'");
      case FeatureKind::kHistogramMud:
      case FeatureKind::kHistogramGauss:
        if (const EmpiricalCdf *cdf = CdfOf(ch)) {
          if (kind == FeatureKind::kHistogramMud)
            transforms_.emplace_back(HistogramMudParams{*cdf});
          else
            transforms_.emplace_back(HistogramGaussParams{*cdf});
          break;
        }
        throw Error("feature '" + std::string(FeatureKindName(kind)) +
                    "' needs a fitted empirical CDF, but channel " +
                    std::to_string(l) + " holds '" +
                    std::string(KindName(KindOf(ch))) + "'");
    }
  }
  if (kind == FeatureKind::kMfcc)
    dct_ = DctMatrix(c, std::min(frontend_.config().mfcc_order, c));
}

int FeatureExtractor::dim() const {
  return kind_ == FeatureKind::kMfcc ? static_cast<int>(dct_.rows())
                                     : frontend_.config().num_channels;
}

FeatureMatrix FeatureExtractor::Transform(const Matrix &energies) const {
  const int c = frontend_.config().num_channels;
  if (energies.cols() != c)
    throw Error("energy matrix has " + std::to_string(energies.cols()) +
                " columns, expected " + std::to_string(c));
  Matrix out(energies.rows(), c);
  for (int m = 0; m < energies.rows(); ++m)
    for (int l = 0; l < c; ++l)
      out(m, l) = ApplyNonlinearity(transforms_[l], energies(m, l));

  FeatureMatrix features;
  features.kind = kind_;
  if (kind_ == FeatureKind::kMfcc)
    features.values = out * dct_.transpose();
  else
    features.values = std::move(out);
  return features;
}

FeatureMatrix FeatureExtractor::Extract(const AudioBuffer &audio) const {
  return Transform(frontend_.ComputeEnergies(audio));
}

FeatureMatrix ExtractFeatures(const AudioBuffer &audio,
                              const NonlinearityModel &model,
                              FeatureKind kind) {
  return FeatureExtractor(model, kind).Extract(audio);
}

}  // namespace mud
