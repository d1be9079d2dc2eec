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

#include "badgd/risk.h"

#include "absl/strings/str_cat.h"

namespace badgd {
namespace {

absl::Status CheckWeights(const Vector& w, int dim) {
  if (w.size() != dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "weights have ", w.size(), " entries; expected ", dim));
  }
  if (!w.allFinite()) {
    return absl::InvalidArgumentError("weights contain a non-finite value");
  }
  return absl::OkStatus();
}

}  // namespace

namespace internal {

double SquareLoss(const Vector& w, const Vector& x, double y) {
  const double r = y - w.dot(x);
  return r * r;
}

double MeanSquareLoss(const Vector& w, const Dataset& d) {
  double sum = 0.0;
  for (const Example& e : d.examples()) sum += SquareLoss(w, e.x, e.y);
  return sum / d.size();
}

Vector MeanSquareLossGradient(const Vector& w, const Dataset& d) {
  Vector g = Vector::Zero(d.feature_dim());
  for (const Example& e : d.examples()) g += (-2.0 * (e.y - w.dot(e.x))) * e.x;
  return g / d.size();
}

}  // namespace internal

std::string_view LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kSquare:
      return "square";
  }
  return "unknown";
}

absl::StatusOr<LossKind> ParseLossKind(std::string_view name) {
  if (name == "square") return LossKind::kSquare;
  return absl::InvalidArgumentError(
      absl::StrCat("unsupported loss '", std::string(name), "'; only 'square' exists"));
}

absl::StatusOr<double> PointLoss(const Vector& w, const Example& e) {
  if (absl::Status s = CheckWeights(w, e.x.size()); !s.ok()) return s;
  return internal::SquareLoss(w, e.x, e.y);
}

absl::StatusOr<double> EmpiricalRisk(const Vector& w, const Dataset& d) {
  if (absl::Status s = CheckWeights(w, d.feature_dim()); !s.ok()) return s;
  return internal::MeanSquareLoss(w, d);
}

absl::StatusOr<Vector> PointGradient(const Vector& w, const Example& e) {
  if (absl::Status s = CheckWeights(w, e.x.size()); !s.ok()) return s;
  return Vector((-2.0 * (e.y - w.dot(e.x))) * e.x);
}

absl::StatusOr<Vector> RiskGradient(const Vector& w, const Dataset& d) {
  if (absl::Status s = CheckWeights(w, d.feature_dim()); !s.ok()) return s;
  return internal::MeanSquareLossGradient(w, d);
}

Vector RiskGradientFromStats(const Vector& w, const SufficientStats& stats) {
  return 2.0 * (stats.s_xx * w - stats.s_yx);
}

absl::StatusOr<MixtureIdentity> CheckMixtureIdentity(const Vector& w,
                                                     const Dataset& d0,
                                                     const Example& v) {
  absl::StatusOr<Dataset> d1 = MakeBadDataset(d0, Trigger{.x_v = v.x, .y_v = v.y});
  if (!d1.ok()) return d1.status();
  absl::StatusOr<Vector> clean = RiskGradient(w, d0);
  if (!clean.ok()) return clean.status();
  const double inv = 1.0 / (d0.size() + 1.0);
  MixtureIdentity out;
  out.lhs = internal::MeanSquareLossGradient(w, *d1);
  out.rhs = (1.0 - inv) * *clean +
            inv * ((-2.0 * (v.y - w.dot(v.x))) * v.x);
  out.gap = (out.lhs - out.rhs).cwiseAbs().maxCoeff();
  return out;
}

absl::StatusOr<RiskGap> ComputeRiskGap(const Vector& w, const Dataset& d0,
                                       const Example& v) {
  absl::StatusOr<Dataset> d1 = MakeBadDataset(d0, Trigger{.x_v = v.x, .y_v = v.y});
  if (!d1.ok()) return d1.status();
  absl::StatusOr<double> clean = EmpiricalRisk(w, d0);
  if (!clean.ok()) return clean.status();
  RiskGap out;
  out.direct = internal::MeanSquareLoss(w, *d1) - *clean;
  out.unscaled = internal::SquareLoss(w, v.x, v.y) - *clean;
  out.closed_form = out.unscaled / (d0.size() + 1.0);
  return out;
}

absl::StatusOr<GradientGap> ComputeGradientGap(const Vector& w,
                                               const Dataset& d0,
                                               const Example& v) {
  absl::StatusOr<Dataset> d1 = MakeBadDataset(d0, Trigger{.x_v = v.x, .y_v = v.y});
  if (!d1.ok()) return d1.status();
  absl::StatusOr<Vector> clean = RiskGradient(w, d0);
  if (!clean.ok()) return clean.status();
  const double inv = 1.0 / (d0.size() + 1.0);
  const SufficientStats stats = ComputeSufficientStats(d0);
  GradientGap out;
  out.direct = internal::MeanSquareLossGradient(w, *d1) - *clean;
  out.closed_form = inv * (((-2.0 * (v.y - w.dot(v.x))) * v.x) - *clean);
  out.square_loss_form =
      (2.0 * inv) * ((stats.s_yx - v.y * v.x) +
                     (v.x * v.x.transpose() - stats.s_xx) * w);
  return out;
}

}  // namespace badgd
