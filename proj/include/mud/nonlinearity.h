// mud/nonlinearity.h

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

#ifndef MUD_NONLINEARITY_H_
#define MUD_NONLINEARITY_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mud/estimation.h"
#include "mud/frontend.h"

namespace mud {

inline constexpr double kDefaultLogFloor = 1e-10;
inline constexpr double kDefaultPowerExponent = 1.0 / 15.0;
inline constexpr double kGaussClampEpsilon = 1e-6;

struct LogMelParams {
  double floor = kDefaultLogFloor;
  bool operator==(const LogMelParams &) const = default;
};

struct FixedPowerParams {
  double exponent = kDefaultPowerExponent;
  bool operator==(const FixedPowerParams &) const = default;
};

struct HistogramMudParams {
  EmpiricalCdf cdf;
  bool operator==(const HistogramMudParams &) const = default;
};

struct HistogramGaussParams {
  EmpiricalCdf cdf;
  bool operator==(const HistogramGaussParams &) const = default;
};

/// One channel's compressive nonlinearity; the alternative held is its kind.
using ChannelNonlinearity =
    std::variant<LogMelParams, FixedPowerParams, PowerMudParams,
                 HistogramMudParams, HistogramGaussParams>;

enum class NonlinearityKind {
  kLog,
  kFixedPower,
  kPowerMud,
  kHistogramMud,
  kHistogramGauss
};

NonlinearityKind KindOf(const ChannelNonlinearity &channel);
std::string_view KindName(NonlinearityKind kind);
NonlinearityKind ParseKindName(std::string_view name);

/// (max(x, x_min) - x_min)^alpha. Inputs below the fitted minimum map to 0.
double ApplyPowerMud(double x, const PowerMudParams &params);

/// F(x) for the fitted empirical CDF, in [0, 1].
double ApplyHistogramMud(double x, const EmpiricalCdf &cdf);

/// Standard normal quantile of F(x) clamped to [1e-6, 1 - 1e-6].
double ApplyHistogramGauss(double x, const EmpiricalCdf &cdf);

/// x^exponent for x >= 0; throws on negative x.
double ApplyFixedPower(double x, double exponent = kDefaultPowerExponent);

/// ln(max(x, floor)); floor must be positive.
double LogMel(double x, double floor = kDefaultLogFloor);

/// Inverse of the standard normal CDF (Wichura's AS 241 rational
/// approximation, about 1e-16 relative accuracy). Requires 0 < p < 1.
double NormalQuantile(double p);

double ApplyNonlinearity(const ChannelNonlinearity &channel, double x);

/// Fit provenance recorded in the model file.
struct Provenance {
  std::string method;
  std::int64_t utterance_count = 0;
  std::int64_t corpus_size = 0;
  std::int64_t sample_n = 0;
  std::uint64_t seed = 0;
  std::int64_t frame_count = 0;  // pooled VAD-kept frames

  bool operator==(const Provenance &) const = default;
};

/// The serializable fit artifact: one nonlinearity per mel channel.
struct NonlinearityModel {
  FrontendConfig frontend;
  Provenance provenance;
  std::vector<ChannelNonlinearity> channels;

  /// Throws SchemaError if channels.size() != frontend.num_channels or a
  /// channel's parameters are out of their domain.
  void Validate() const;

  bool operator==(const NonlinearityModel &) const = default;
};

/// A model whose channels all hold the same fixed baseline nonlinearity.
NonlinearityModel MakeBaselineModel(const FrontendConfig &frontend,
                                    const ChannelNonlinearity &channel);

enum class FeatureKind {
  kMfcc,
  kLogMel,
  kPower15,
  kPowerMud,
  kHistogramMud,
  kHistogramGauss
};

FeatureKind ParseFeatureKind(std::string_view name);
std::string_view FeatureKindName(FeatureKind kind);

struct FeatureMatrix {
  Matrix values;  // num_frames x D
  FeatureKind kind = FeatureKind::kLogMel;

  int num_frames() const { return static_cast<int>(values.rows()); }
  int dim() const { return static_cast<int>(values.cols()); }
};

/// Applies one feature pipeline of a model to whole utterances. The
/// filterbank and per-channel transforms are resolved once at construction;
/// Extract() is const and safe to call concurrently.
class FeatureExtractor {
 public:
  /// Throws if the model cannot produce `kind` (for example power-MUD
  /// features from a model without fitted power parameters).
  FeatureExtractor(const NonlinearityModel &model, FeatureKind kind);

  FeatureKind kind() const { return kind_; }
  int dim() const;

  /// framing -> power spectrum -> mel energies -> per-channel nonlinearity;
  /// for MFCC, log-mel followed by an orthonormal DCT-II. No clipping or
  /// normalization of the result.
  FeatureMatrix Extract(const AudioBuffer &audio) const;

  /// The same transform applied to precomputed mel energies.
  FeatureMatrix Transform(const Matrix &energies) const;

 private:
  MelFrontend frontend_;
  FeatureKind kind_;
  std::vector<ChannelNonlinearity> transforms_;
  Matrix dct_;  // MFCC only
};

FeatureMatrix ExtractFeatures(const AudioBuffer &audio,
                              const NonlinearityModel &model, FeatureKind kind);

}  // namespace mud

#endif  // MUD_NONLINEARITY_H_
