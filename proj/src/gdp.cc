// Copyright 2026 The badgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "badgd/gdp.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "badgd/format.h"
#include "badgd/normal.h"

namespace badgd {
namespace {

constexpr double kEpsilonBracket = 100.0;
constexpr double kEpsilonBracketLimit = 1e12;
constexpr double kDeltaTolerance = 1e-10;

absl::Status CheckMeanGap(double mean_gap) {
  if (!std::isfinite(mean_gap) || mean_gap < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("mean gap must be finite and >= 0, got ", mean_gap));
  }
  return absl::OkStatus();
}

absl::Status CheckEpsilonMu(double epsilon, double mu) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and >= 0, got ", epsilon));
  }
  if (!std::isfinite(mu) || mu <= 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("mu must be finite and > 0, got ", mu));
  }
  return absl::OkStatus();
}

absl::Status CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return absl::OkStatus();
}

double DeltaUnchecked(double epsilon, double mu) {
  const double a = -epsilon / mu + mu / 2.0;
  const double b = -epsilon / mu - mu / 2.0;
  const double delta = NormalCdf(a) - std::exp(epsilon + LogNormalCdf(b));
  return std::clamp(delta, 0.0, 1.0);
}

}  // namespace

absl::StatusOr<TradeoffPoint> GaussianTradeoff(double mean_gap, double alpha) {
  if (absl::Status s = CheckMeanGap(mean_gap); !s.ok()) return s;
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in (0, 1), got ", alpha));
  }
  // Phi^{-1}(1 - alpha) = -Phi^{-1}(alpha) without rounding 1 - alpha.
  absl::StatusOr<double> lower = NormalQuantile(alpha);
  if (!lower.ok()) return lower.status();
  TradeoffPoint out;
  out.type2 = NormalCdf(-*lower - mean_gap);
  out.power = NormalCdf(*lower + mean_gap);
  return out;
}

absl::StatusOr<TradeoffCurve> GaussianTradeoffCurve(
    double mean_gap, std::span<const double> alphas) {
  TradeoffCurve curve;
  curve.mean_gap = mean_gap;
  curve.alphas.assign(alphas.begin(), alphas.end());
  std::sort(curve.alphas.begin(), curve.alphas.end());
  curve.alphas.erase(std::unique(curve.alphas.begin(), curve.alphas.end()),
                     curve.alphas.end());
  for (double alpha : curve.alphas) {
    absl::StatusOr<TradeoffPoint> p = GaussianTradeoff(mean_gap, alpha);
    if (!p.ok()) return p.status();
    curve.type2.push_back(p->type2);
    curve.power.push_back(p->power);
  }
  return curve;
}

std::string TradeoffCurveCsv(const TradeoffCurve& curve) {
  std::string out = "alpha,type2,power\n";
  for (size_t i = 0; i < curve.alphas.size(); ++i) {
    absl::StrAppend(&out, FormatDouble(curve.alphas[i]), ",",
                    FormatDouble(curve.type2[i]), ",",
                    FormatDouble(curve.power[i]), "\n");
  }
  return out;
}

absl::StatusOr<double> DeltaOfEpsilon(double epsilon, double mu) {
  if (absl::Status s = CheckEpsilonMu(epsilon, mu); !s.ok()) return s;
  return DeltaUnchecked(epsilon, mu);
}

absl::StatusOr<double> LogDeltaOfEpsilon(double epsilon, double mu) {
  if (absl::Status s = CheckEpsilonMu(epsilon, mu); !s.ok()) return s;
  const double log_first = LogNormalCdf(-epsilon / mu + mu / 2.0);
  const double log_second = epsilon + LogNormalCdf(-epsilon / mu - mu / 2.0);
  // delta = Phi(a) (1 - exp(log_second - log_first)).
  const double gap = log_second - log_first;
  if (gap >= 0.0) return -std::numeric_limits<double>::infinity();
  return log_first + std::log(-std::expm1(gap));
}

absl::StatusOr<double> EpsilonOfMu(double mu, double delta) {
  if (absl::Status s = CheckEpsilonMu(0.0, mu); !s.ok()) return s;
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  if (DeltaUnchecked(0.0, mu) <= delta) return 0.0;

  double lo = 0.0;
  double hi = kEpsilonBracket;
  while (DeltaUnchecked(hi, mu) > delta) {
    lo = hi;
    hi *= 2.0;
    if (hi > kEpsilonBracketLimit) {
      return absl::OutOfRangeError(
          absl::StrCat("no epsilon below ", kEpsilonBracketLimit,
                       " reaches delta ", delta, " at mu ", mu));
    }
  }
  // delta(eps) is decreasing: delta(lo) > target >= delta(hi).
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (DeltaUnchecked(mid, mu) > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double err_lo = std::abs(DeltaUnchecked(lo, mu) - delta);
  const double err_hi = std::abs(DeltaUnchecked(hi, mu) - delta);
  const double epsilon = err_lo < err_hi ? lo : hi;
  if (std::min(err_lo, err_hi) > kDeltaTolerance) {
    return absl::InternalError(
        absl::StrCat("bisection for mu ", mu, ", delta ", delta,
                     " stalled with residual ", std::min(err_lo, err_hi)));
  }
  return epsilon;
}

BudgetBound BudgetLowerBound(double mu, double delta) {
  if (!std::isfinite(mu) || !std::isfinite(delta)) {
    return {std::nullopt, "non-finite mu or delta"};
  }
  const double arg = delta - NormalCdf(mu / 2.0);
  if (!(arg > 0.0)) {
    return {std::nullopt,
            absl::StrCat("delta - Phi(mu/2) = ", FormatDouble(arg),
                         " is not positive; logarithm undefined")};
  }
  return {std::numbers::ln2 + std::log(arg), ""};
}

absl::StatusOr<PrivacyBudget> SnrToBudget(double snr, double delta) {
  if (absl::Status s = CheckMeanGap(snr); !s.ok()) return s;
  if (absl::Status s = CheckDelta(delta); !s.ok()) return s;
  PrivacyBudget budget{.epsilon = 0.0, .delta = delta, .mu = snr};
  if (snr == 0.0) return budget;
  absl::StatusOr<double> epsilon = EpsilonOfMu(snr, delta);
  if (!epsilon.ok()) return epsilon.status();
  budget.epsilon = *epsilon;
  return budget;
}

}  // namespace badgd
