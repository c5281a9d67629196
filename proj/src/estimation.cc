// src/estimation.cc

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

#include "mud/estimation.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace mud {

ChannelStats ComputeChannelStats(std::span<const double> samples,
                                 double delta) {
  if (samples.empty()) throw Error("channel statistics need at least one sample");
  if (!(delta > 0.0)) throw Error("flooring coefficient must be positive");

  ChannelStats stats;
  stats.delta = delta;
  stats.n = static_cast<std::int64_t>(samples.size());
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  stats.x_min = *lo;
  stats.x_max = *hi;

  // A zero range cannot be fitted anyway; fall back to the absolute floor
  // so the statistic stays finite.
  const double range = stats.range();
  const double floor = range > 0.0 ? delta * range : delta;
  double sum = 0.0;
  for (double x : samples) sum += std::log(std::max(x - stats.x_min, floor));
  stats.mean_log_shifted = sum / static_cast<double>(stats.n);
  return stats;
}

double LogLikelihood(double alpha, const ChannelStats &stats) {
  if (!(alpha > 0.0)) throw Error("log-likelihood needs alpha > 0");
  if (!(stats.x_max > stats.x_min))
    throw Error("log-likelihood needs x_max > x_min");
  const double n = static_cast<double>(stats.n);
  return n * std::log(alpha) + (alpha - 1.0) * n * stats.mean_log_shifted -
         n * alpha * std::log(stats.range());
}

PowerMudParams EstimateAlphaMle(const ChannelStats &stats) {
  if (!(stats.x_max > stats.x_min))
    throw Error("degenerate channel: all samples equal (x_min = x_max = " +
                std::to_string(stats.x_min) + ")");
  const double denom = std::log(stats.range()) - stats.mean_log_shifted;
  if (!(denom > 0.0))
    throw Error("degenerate channel: nonpositive estimator denominator");
  return PowerMudParams{1.0 / denom, stats.x_min, stats.x_max, stats.delta};
}

std::vector<double> LogSpacedGrid(double lo, double hi, int points) {
  if (points < 1) throw Error("grid needs at least one point");
  if (!(lo > 0.0) || !(lo < hi)) throw Error("grid needs 0 < lo < hi");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double ratio = std::log(hi / lo);
  for (int j = 0; j < points; ++j)
    grid[j] = lo * std::exp(ratio * j / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

double EstimateAlphaOnGrid(const ChannelStats &stats,
                           std::span<const double> grid) {
  if (grid.empty()) throw Error("empty alpha grid");
  double best = grid[0];
  double best_l = LogLikelihood(best, stats);
  for (double a : grid.subspan(1)) {
    double l = LogLikelihood(a, stats);
    if (l > best_l) {
      best_l = l;
      best = a;
    }
  }
  return best;
}

double EstimateAlphaGrid(const ChannelStats &stats, double grid_lo,
                         double grid_hi, int grid_points) {
  const auto grid = LogSpacedGrid(grid_lo, grid_hi, grid_points);
  return EstimateAlphaOnGrid(stats, grid);
}

EmpiricalCdf BuildEmpiricalCdf(std::span<const double> samples, int max_knots) {
  if (max_knots < 2) throw Error("an empirical CDF needs at least 2 knots");
  std::vector<double> sorted(samples.begin(), samples.end());
  for (double x : sorted)
    if (!std::isfinite(x)) throw Error("non-finite sample in CDF input");
  std::sort(sorted.begin(), sorted.end());

  const std::size_t n = sorted.size();
  std::vector<double> xs, us;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && sorted[j] == sorted[i]) ++j;
    // Ranks i..j-1 share one knot at the mean of (k + 0.5) / N.
    double mean_rank = (static_cast<double>(i + j - 1) / 2.0 + 0.5) /
                       static_cast<double>(n);
    xs.push_back(sorted[i]);
    us.push_back(mean_rank);
    i = j;
  }
  if (xs.size() < 2)
    throw Error("an empirical CDF needs at least 2 distinct sample values");

  EmpiricalCdf cdf;
  const std::size_t distinct = xs.size();
  const auto budget = static_cast<std::size_t>(max_knots);
  if (distinct <= budget) {
    cdf.knots_x = std::move(xs);
    cdf.knots_u = std::move(us);
  } else {
    cdf.knots_x.reserve(budget);
    cdf.knots_u.reserve(budget);
    for (std::size_t k = 0; k < budget; ++k) {
      auto idx = static_cast<std::size_t>(std::llround(
          static_cast<double>(k) * static_cast<double>(distinct - 1) /
          static_cast<double>(budget - 1)));
      cdf.knots_x.push_back(xs[idx]);
      cdf.knots_u.push_back(us[idx]);
    }
  }
  cdf.knots_u.front() = 0.0;
  cdf.knots_u.back() = 1.0;
  return cdf;
}

double EvaluateCdf(const EmpiricalCdf &cdf, double x) {
  const auto &kx = cdf.knots_x;
  const auto &ku = cdf.knots_u;
  if (x <= kx.front()) return 0.0;
  if (x >= kx.back()) return 1.0;
  // First knot strictly greater than x; it exists and is not the first.
  auto hi = std::upper_bound(kx.begin(), kx.end(), x);
  std::size_t j = static_cast<std::size_t>(hi - kx.begin());
  const double x0 = kx[j - 1], x1 = kx[j];
  const double t = (x - x0) / (x1 - x0);
  return ku[j - 1] + t * (ku[j] - ku[j - 1]);
}

void ValidateCdf(const EmpiricalCdf &cdf) {
  const auto &kx = cdf.knots_x;
  const auto &ku = cdf.knots_u;
  if (kx.size() < 2 || kx.size() != ku.size())
    throw SchemaError("CDF needs at least 2 knots with matching x and u");
  if (ku.front() != 0.0 || ku.back() != 1.0)
    throw SchemaError("CDF must start at u = 0 and end at u = 1");
  for (std::size_t i = 0; i < kx.size(); ++i) {
    if (!std::isfinite(kx[i]) || !std::isfinite(ku[i]))
      throw SchemaError("CDF knots must be finite");
    if (ku[i] < 0.0 || ku[i] > 1.0)
      throw SchemaError("CDF u values must lie in [0, 1]");
    if (i > 0 && !(kx[i] > kx[i - 1]))
      throw SchemaError("CDF knots_x must be strictly increasing");
    if (i > 0 && ku[i] < ku[i - 1])
      throw SchemaError("CDF knots_u must be nondecreasing");
  }
}

}  // namespace mud
