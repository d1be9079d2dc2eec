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

// Backdoor trigger objectives for square-loss regression, their closed-form
// constructors, and a sampling oracle used to check the constructors.
//
// Scaling ledger. The objectives below are the unscaled quantities; the gaps
// they stand for differ by a constant that every ScaledValue names:
//
//   riskwarp      J = l(w, v) - L(w, D0)              gap = J / (n + 1)
//   gradwarp      G = |(S_yx - y x) + (x x^T - S_xx) w|   |grad gap| = 2G / (n + 1)
//   graddistwarp  G as above                           snr = 2G / ((n + 1) sigma)

#ifndef BADGD_TRIGGERS_H_
#define BADGD_TRIGGERS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "badgd/dataset.h"

namespace badgd {

// Feasible set for the oracle search: |x_v| <= x_norm_max, |y_v| <=
// response_bound. trigger_scale is the multiplier the closed-form
// constructors apply to w; it is not tied to x_norm_max.
struct TriggerConstraints {
  double x_norm_max = 1.0;
  double response_bound = 1.0;
  double trigger_scale = 1.0;

  absl::Status Validate() const;

  friend bool operator==(const TriggerConstraints&,
                         const TriggerConstraints&) = default;
};

// Learning rate and per-coordinate noise scale of one Noisy-GD update.
struct NoiseParams {
  double gamma = 1.0;
  double sigma = 1.0;
};

enum class TriggerObjective { kRiskWarp, kGradWarp, kGradDistWarp };

std::string_view TriggerObjectiveName(TriggerObjective objective);
absl::StatusOr<TriggerObjective> ParseTriggerObjective(std::string_view name);
TriggerKind KindForObjective(TriggerObjective objective);

// [y_v^2 - S_y] + 2 w^T (S_yx - y_v x_v) + w^T (x_v x_v^T - S_xx) w.
absl::StatusOr<double> RiskWarpObjective(const Vector& w,
                                         const SufficientStats& stats,
                                         const Example& v);

// |(S_yx - y_v x_v) + (x_v x_v^T - S_xx) w|_2.
absl::StatusOr<double> GradWarpObjective(const Vector& w,
                                         const SufficientStats& stats,
                                         const Example& v);

// |S_yx - y_v x_v|^2, the part of the gradwarp objective that the response
// of the gradwarp trigger minimizes for a fixed x_v.
double GradWarpResidualSq(const SufficientStats& stats, const Vector& x_v,
                          double y_v);

// v = (-scale * w, B).
absl::StatusOr<Trigger> MakeRiskWarpTrigger(const Vector& w,
                                            const TriggerConstraints& c);

// Closed-form riskwarp distortion of that trigger:
// B^2 - S_y + 2 w^T S_yx + 2 scale B |w|^2 + scale^2 |w|^4 - w^T S_xx w.
absl::StatusOr<double> RiskWarpDistortion(const Vector& w,
                                          const SufficientStats& stats,
                                          const TriggerConstraints& c);

// v = (scale * w, <w, S_yx> / (scale |w|^2)).
absl::StatusOr<Trigger> MakeGradWarpTrigger(const Vector& w,
                                            const TriggerConstraints& c,
                                            const SufficientStats& stats);

// |S_yx - (<w, S_yx> / |w|^2) w + scale^2 |w|^2 w - S_xx w|_2.
absl::StatusOr<double> GradWarpDistortion(const Vector& w,
                                          const SufficientStats& stats,
                                          double trigger_scale);

// Same point as MakeGradWarpTrigger, tagged kGradDistWarp.
absl::StatusOr<Trigger> MakeGradDistWarpTrigger(const Vector& w,
                                                const TriggerConstraints& c,
                                                const SufficientStats& stats);

// Signal-to-noise ratio of the Noisy-GD update shift caused by v.
struct Snr {
  // |mu(D1) - mu(D0)| / (gamma sigma) with mu(D) = -gamma grad L(w, D), the
  // gradients taken from the stats of D0 and of D0 + v. Canonical.
  double definitional = 0.0;
  // G / (sqrt(gamma (n + 1) / 2) sigma). Differs from the definitional value
  // by the factor sqrt((n + 1) / (2 gamma)); kept for comparison only.
  double reduced = 0.0;

  friend bool operator==(const Snr&, const Snr&) = default;
};

absl::StatusOr<Snr> GradDistWarpSnr(const Vector& w,
                                    const SufficientStats& stats,
                                    const Example& v, const NoiseParams& noise);

// Definitional SNR straight from the two datasets, with the update means
// computed by RiskGradient and gamma kept in both numerator and denominator.
absl::StatusOr<double> DefinitionalSnr(const Vector& w, const Dataset& d0,
                                       const Example& v,
                                       const NoiseParams& noise);

// An objective value together with its scaled counterpart.
struct ScaledValue {
  double unscaled = 0.0;
  double scaled = 0.0;
  double factor = 1.0;     // scaled = factor * unscaled
  std::string factor_name;

  friend bool operator==(const ScaledValue&, const ScaledValue&) = default;
};

// noise is required for kGradDistWarp and ignored otherwise.
absl::StatusOr<ScaledValue> EvaluateObjective(
    TriggerObjective objective, const Vector& w, const SufficientStats& stats,
    const Example& v, const std::optional<NoiseParams>& noise = std::nullopt);

struct OracleOptions {
  int budget = 1000;
  uint64_t seed = 0;
  // Passes of coordinate-wise local search after sampling. Step sizes start
  // at a quarter of each coordinate's range (x_norm_max for feature
  // coordinates, response_bound for the response) and halve after every pass
  // that finds no improvement.
  int refinement_rounds = 40;
  // When set, candidates are restricted to x_v = s * direction / |direction|
  // with |s| <= x_norm_max.
  std::optional<Vector> line_direction;
  NoiseParams noise;
  int threads = 1;
};

struct OracleResult {
  Trigger trigger;  // kind kManual
  ScaledValue value;

  friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

// Best of `budget` candidates drawn uniformly from the feasible set (candidate
// i uses the substream MixSeed(seed, i)), then refined by local search.
// Deterministic for a fixed seed regardless of the thread count.
absl::StatusOr<OracleResult> OracleSearch(TriggerObjective objective,
                                          const Vector& w,
                                          const SufficientStats& stats,
                                          const TriggerConstraints& c,
                                          const OracleOptions& options);

struct TriggerReport {
  Trigger trigger;
  TriggerObjective objective = TriggerObjective::kRiskWarp;
  ScaledValue value;
  std::optional<OracleResult> oracle_best;
};

absl::StatusOr<TriggerReport> MakeTriggerReport(
    TriggerObjective objective, const Vector& w, const SufficientStats& stats,
    const Trigger& trigger,
    const std::optional<NoiseParams>& noise = std::nullopt);

}  // namespace badgd

#endif  // BADGD_TRIGGERS_H_
