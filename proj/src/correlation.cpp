// Copyright 2026 The simaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include "simaug/error.hpp"
#include "simaug/eval.hpp"

namespace simaug {
namespace {

void check_inputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::kInvalidArgument, "correlation inputs differ in length");
  if (x.size() < 3) fail(ErrorCode::kInvalidArgument, "correlation needs at least 3 points");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k]) || !std::isfinite(y[k])) {
      fail(ErrorCode::kInvalidArgument, "correlation inputs must be finite");
    }
  }
}

double t_two_sided(double r, std::size_t n) {
  const double df = static_cast<double>(n) - 2.0;
  if (std::abs(r) >= 1.0) return 0.0;
  const double t = r * std::sqrt(df / (1.0 - r * r));
  boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

// P(D <= c) for the number of discordant pairs among n! equally likely orders.
double mahonian_cdf(std::size_t n, std::size_t c) {
  const std::size_t max_inv = n * (n - 1) / 2;
  std::vector<double> counts{1.0};
  for (std::size_t m = 2; m <= n; ++m) {
    std::vector<double> next(counts.size() + m - 1, 0.0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      for (std::size_t j = 0; j < m; ++j) next[k + j] += counts[k];
    }
    counts = std::move(next);
  }
  double below = 0.0, total = 0.0;
  for (std::size_t k = 0; k <= max_inv; ++k) {
    total += counts[k];
    if (k <= c) below += counts[k];
  }
  return below / total;
}

}  // namespace

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  check_inputs(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    fail(ErrorCode::kUndefinedCorrelation, "correlation undefined for a constant input");
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {r, t_two_sided(r, x.size())};
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t k = 0;
  while (k < order.size()) {
    std::size_t end = k + 1;
    while (end < order.size() && values[order[end]] == values[order[k]]) ++end;
    const double mean = (static_cast<double>(k + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t j = k; j < end; ++j) ranks[order[j]] = mean;
    k = end;
  }
  return ranks;
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  check_inputs(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

Correlation kendall(std::span<const double> x, std::span<const double> y) {
  check_inputs(x, y);
  const std::size_t n = x.size();
  std::size_t concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double dx = x[a] - x[b];
      const double dy = y[a] - y[b];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++tie_x;
      } else if (dy == 0.0) {
        ++tie_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double c = static_cast<double>(concordant);
  const double d = static_cast<double>(discordant);
  const double denom = std::sqrt((c + d + static_cast<double>(tie_x)) *
                                 (c + d + static_cast<double>(tie_y)));
  if (denom == 0.0) fail(ErrorCode::kUndefinedCorrelation, "correlation undefined for a constant input");
  const double tau = std::clamp((c - d) / denom, -1.0, 1.0);

  // Tie groups within each variable.
  auto tie_sums = [](std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    double t0 = 0, t1 = 0, t2 = 0;
    std::size_t k = 0;
    while (k < s.size()) {
      std::size_t end = k + 1;
      while (end < s.size() && s[end] == s[k]) ++end;
      const double g = static_cast<double>(end - k);
      t0 += g * (g - 1.0) / 2.0;
      t1 += g * (g - 1.0) * (2.0 * g + 5.0);
      t2 += g * (g - 1.0) * (g - 2.0);
      k = end;
    }
    return std::array<double, 3>{t0, t1, t2};
  };
  const auto tx = tie_sums(x);
  const auto ty = tie_sums(y);
  const std::size_t total_pairs = n * (n - 1) / 2;

  double p;
  const bool no_ties = tx[0] == 0.0 && ty[0] == 0.0;
  const std::size_t extreme = std::min(discordant, total_pairs - discordant);
  if (no_ties && n <= 10) {
    p = std::min(1.0, 2.0 * mahonian_cdf(n, extreme));
  } else {
    const double nn = static_cast<double>(n);
    const double m = nn * (nn - 1.0);
    const double var = (m * (2.0 * nn + 5.0) - tx[1] - ty[1]) / 18.0 +
                       2.0 * tx[0] * ty[0] / m + tx[2] * ty[2] / (9.0 * m * (nn - 2.0));
    const double z = (c - d) / std::sqrt(var);
    p = std::erfc(std::abs(z) / std::sqrt(2.0));
  }
  return {tau, p};
}

CorrelationReport correlate(std::span<const double> x, std::span<const double> y) {
  CorrelationReport r;
  r.pearson = pearson(x, y);
  r.spearman = spearman(x, y);
  r.kendall = kendall(x, y);
  r.n = x.size();
  return r;
}

void to_json(nlohmann::json& j, const CorrelationReport& r) {
  auto one = [](const Correlation& c) { return nlohmann::json{{"r", c.coefficient}, {"p", c.p_value}}; };
  j = nlohmann::json{{"pearson", one(r.pearson)},
                     {"spearman", one(r.spearman)},
                     {"kendall", one(r.kendall)},
                     {"n", r.n}};
}

}  // namespace simaug
