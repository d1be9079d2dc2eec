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

// Square-loss empirical risk, gradients, and the exact clean-vs-backdoored
// gap identities. Every gap is returned both as a direct difference of the two
// datasets and in closed form so callers can cross-check them.

#ifndef BADGD_RISK_H_
#define BADGD_RISK_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "badgd/dataset.h"

namespace badgd {

// Only square loss, l(w, (x, y)) = (y - <w, x>)^2, is implemented.
enum class LossKind { kSquare };

std::string_view LossKindName(LossKind kind);
absl::StatusOr<LossKind> ParseLossKind(std::string_view name);

absl::StatusOr<double> PointLoss(const Vector& w, const Example& e);
absl::StatusOr<double> EmpiricalRisk(const Vector& w, const Dataset& d);

// -2 (y - <w, x>) x. The factor 2 is kept; the loss is not halved.
absl::StatusOr<Vector> PointGradient(const Vector& w, const Example& e);
absl::StatusOr<Vector> RiskGradient(const Vector& w, const Dataset& d);

// 2 (S_xx w - S_yx); equals RiskGradient on the dataset the stats came from.
Vector RiskGradientFromStats(const Vector& w, const SufficientStats& stats);

// grad L(w, D0 + v) against (1 - 1/(n+1)) grad L(w, D0) + 1/(n+1) grad l(w, v).
struct MixtureIdentity {
  Vector lhs;
  Vector rhs;
  double gap = 0.0;  // max-norm of lhs - rhs
};
absl::StatusOr<MixtureIdentity> CheckMixtureIdentity(const Vector& w,
                                                     const Dataset& d0,
                                                     const Example& v);

// L(w, D0 + v) - L(w, D0).
struct RiskGap {
  double direct = 0.0;
  // (l(w, v) - L(w, D0)) / (n + 1)
  double closed_form = 0.0;
  // l(w, v) - L(w, D0), i.e. closed_form without the 1/(n+1) factor.
  double unscaled = 0.0;

  friend bool operator==(const RiskGap&, const RiskGap&) = default;
};
absl::StatusOr<RiskGap> ComputeRiskGap(const Vector& w, const Dataset& d0,
                                       const Example& v);

// grad L(w, D0 + v) - grad L(w, D0).
struct GradientGap {
  Vector direct;
  // (grad l(w, v) - grad L(w, D0)) / (n + 1)
  Vector closed_form;
  // (2 / (n + 1)) [(S_yx - y_v x_v) + (x_v x_v^T - S_xx) w]
  Vector square_loss_form;
};
absl::StatusOr<GradientGap> ComputeGradientGap(const Vector& w,
                                               const Dataset& d0,
                                               const Example& v);

namespace internal {

// Unchecked kernels; callers guarantee matching dimensions.
double SquareLoss(const Vector& w, const Vector& x, double y);
double MeanSquareLoss(const Vector& w, const Dataset& d);
Vector MeanSquareLossGradient(const Vector& w, const Dataset& d);

}  // namespace internal
}  // namespace badgd

#endif  // BADGD_RISK_H_
