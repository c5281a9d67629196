// mud/estimation.h

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

#ifndef MUD_ESTIMATION_H_
#define MUD_ESTIMATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mud/common.h"

namespace mud {

// Fitting of per-channel nonlinearities that make the channel's output
// distribution as uniform as possible.
//
// Power-function fit. The output Y = (X - x_min)^alpha is modelled as
// U(0, (x_max - x_min)^alpha), which makes the density of X
//
//   p(x) = alpha (x - x_min)^(alpha - 1) / (x_max - x_min)^alpha
//
// on [x_min, x_max]. With R = x_max - x_min and the floored offsets
// d_i = max(x_i - x_min, delta * R), the log-likelihood of N samples is
//
//   L(alpha) = N ln(alpha) + (alpha - 1) sum_i ln(d_i) - N alpha ln(R)
//
// which is strictly concave, and its stationary point is
//
//   alpha_hat = 1 / (ln(R) - (1/N) sum_i ln(d_i)).
//
// The floor is expressed in units of the channel range so that alpha_hat is
// exactly invariant to x -> a x + b (a > 0). For unit-range data it is the
// plain floor delta.
//
// Histogram fit. The empirical CDF of the samples, piecewise linear between
// knots, maps the channel onto approximately U(0, 1).

inline constexpr double kDefaultDelta = 1e-100;
inline constexpr int kDefaultMaxKnots = 1024;

struct ChannelStats {
  double x_min = 0.0;
  double x_max = 0.0;
  std::int64_t n = 0;
  double mean_log_shifted = 0.0;  // (1/N) sum ln(max(x_i - x_min, delta * R))
  double delta = kDefaultDelta;

  double range() const { return x_max - x_min; }
};

struct PowerMudParams {
  double alpha = 1.0;
  double x_min = 0.0;
  double x_max = 1.0;
  double delta = kDefaultDelta;

  bool operator==(const PowerMudParams &) const = default;
};

/// Piecewise-linear CDF: knots_x strictly increasing, knots_u nondecreasing
/// from 0 to 1.
struct EmpiricalCdf {
  std::vector<double> knots_x;
  std::vector<double> knots_u;

  bool operator==(const EmpiricalCdf &) const = default;
};

/// Exact min, max, count and floored log-mean of the samples. Throws on an
/// empty input or a nonpositive delta.
ChannelStats ComputeChannelStats(std::span<const double> samples,
                                 double delta = kDefaultDelta);

/// The floored log-likelihood L(alpha; X). Throws unless alpha > 0 and
/// x_max > x_min.
double LogLikelihood(double alpha, const ChannelStats &stats);

/// Closed-form maximiser of LogLikelihood. Throws on a degenerate channel
/// (x_max == x_min) or a nonpositive denominator.
PowerMudParams EstimateAlphaMle(const ChannelStats &stats);

/// Brute-force argmax of LogLikelihood over `grid_points` log-spaced values
/// in [grid_lo, grid_hi]. Verification only.
double EstimateAlphaGrid(const ChannelStats &stats, double grid_lo,
                         double grid_hi, int grid_points);

/// Brute-force argmax of LogLikelihood over an explicit grid.
double EstimateAlphaOnGrid(const ChannelStats &stats,
                           std::span<const double> grid);

/// Log-spaced grid, both ends included.
std::vector<double> LogSpacedGrid(double lo, double hi, int points);

/// Sorts the samples, gives the i-th sorted sample the rank (i + 0.5) / N,
/// averages the ranks of tied values, keeps at most `max_knots` knots at
/// equally spaced quantile indices (first and last always kept) and pins the
/// end knots to u = 0 and u = 1. Requires two distinct values.
EmpiricalCdf BuildEmpiricalCdf(std::span<const double> samples,
                               int max_knots = kDefaultMaxKnots);

/// Linear interpolation between knots; 0 at or below the first knot, 1 at
/// or above the last.
double EvaluateCdf(const EmpiricalCdf &cdf, double x);

/// Checks the structural invariants of a CDF; throws SchemaError otherwise.
void ValidateCdf(const EmpiricalCdf &cdf);

}  // namespace mud

#endif  // MUD_ESTIMATION_H_
