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

// Gaussian differential privacy: tradeoff curves between two unit-variance
// Gaussians separated by a mean gap, the mu-GDP <-> (epsilon, delta) relation
//
//   delta(eps) = Phi(-eps/mu + mu/2) - exp(eps) Phi(-eps/mu - mu/2),
//
// its numeric inverse, and the closed-form log lower bound on epsilon.

#ifndef BADGD_GDP_H_
#define BADGD_GDP_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace badgd {

// Testing N(0, 1) against N(mean_gap, 1) at size alpha with the optimal
// one-sided test.
struct TradeoffPoint {
  // Phi(Phi^{-1}(1 - alpha) - mean_gap): probability of missing the shift.
  double type2 = 0.0;
  // 1 - type2, i.e. 1 - Phi(Phi^{-1}(1 - alpha) - mean_gap).
  double power = 0.0;
};

absl::StatusOr<TradeoffPoint> GaussianTradeoff(double mean_gap, double alpha);

// Sampled tradeoff curve. alphas are sorted ascending and unique, so type2 is
// nonincreasing along the vectors.
struct TradeoffCurve {
  double mean_gap = 0.0;
  std::vector<double> alphas;
  std::vector<double> type2;
  std::vector<double> power;

  friend bool operator==(const TradeoffCurve&, const TradeoffCurve&) = default;
};

absl::StatusOr<TradeoffCurve> GaussianTradeoffCurve(
    double mean_gap, std::span<const double> alphas);

// "alpha,type2,power" header plus one row per sample.
std::string TradeoffCurveCsv(const TradeoffCurve& curve);

// delta(eps) for a mu-GDP mechanism. Requires eps >= 0 and mu > 0. The second
// term is evaluated as exp(eps + log Phi(.)) so large eps cannot overflow.
absl::StatusOr<double> DeltaOfEpsilon(double epsilon, double mu);

// log delta(eps), finite where delta itself underflows.
absl::StatusOr<double> LogDeltaOfEpsilon(double epsilon, double mu);

// Solves delta(eps) = delta for eps >= 0 by bisection, to
// |delta(eps) - delta| <= 1e-10. Returns 0 when delta(0) <= delta already.
// The initial bracket is [0, 100]; it is doubled while delta(hi) > delta.
absl::StatusOr<double> EpsilonOfMu(double mu, double delta);

// ln 2 + ln(delta - Phi(mu / 2)) when the log argument is positive. Otherwise
// value is empty and reason says why. This is a supplementary figure;
// EpsilonOfMu is the budget to rely on.
struct BudgetBound {
  std::optional<double> value;
  std::string reason;

  friend bool operator==(const BudgetBound&, const BudgetBound&) = default;
};

BudgetBound BudgetLowerBound(double mu, double delta);

struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  double mu = 0.0;

  friend bool operator==(const PrivacyBudget&, const PrivacyBudget&) = default;
};

// Treats a single noisy update's signal-to-noise ratio as its GDP parameter
// and solves for epsilon at the given delta.
absl::StatusOr<PrivacyBudget> SnrToBudget(double snr, double delta);

}  // namespace badgd

#endif  // BADGD_GDP_H_
