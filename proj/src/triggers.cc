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

#include "badgd/triggers.h"

#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "absl/strings/str_cat.h"
#include "badgd/parallel.h"
#include "badgd/random.h"
#include "badgd/risk.h"

namespace badgd {
namespace {

absl::Status CheckShapes(const Vector& w, const SufficientStats& stats) {
  if (w.size() != stats.feature_dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("weights have ", w.size(), " entries; stats have ",
                     stats.feature_dim()));
  }
  if (!w.allFinite()) {
    return absl::InvalidArgumentError("weights contain a non-finite value");
  }
  return absl::OkStatus();
}

absl::Status CheckPoint(const Vector& w, const SufficientStats& stats,
                        const Example& v) {
  if (absl::Status s = CheckShapes(w, stats); !s.ok()) return s;
  if (v.x.size() != w.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("trigger has ", v.x.size(), " features; expected ",
                     w.size()));
  }
  return absl::OkStatus();
}

absl::Status CheckNonzero(const Vector& w) {
  if (w.squaredNorm() == 0.0) {
    return absl::InvalidArgumentError(
        "weight vector is zero; the trigger direction is undefined");
  }
  return absl::OkStatus();
}

double RiskWarpUnchecked(const Vector& w, const SufficientStats& stats,
                         const Vector& x, double y) {
  const double wx = w.dot(x);
  return (y * y - stats.s_y) + 2.0 * (w.dot(stats.s_yx) - y * wx) +
         (wx * wx - w.dot(stats.s_xx * w));
}

double GradWarpUnchecked(const Vector& w, const SufficientStats& stats,
                         const Vector& x, double y) {
  return ((stats.s_yx - y * x) + x * x.dot(w) - stats.s_xx * w).norm();
}

ScaledValue Scale(TriggerObjective objective, double unscaled, int n,
                  double sigma) {
  ScaledValue out;
  out.unscaled = unscaled;
  switch (objective) {
    case TriggerObjective::kRiskWarp:
      out.factor = 1.0 / (n + 1.0);
      out.factor_name = "1/(n+1)";
      break;
    case TriggerObjective::kGradWarp:
      out.factor = 2.0 / (n + 1.0);
      out.factor_name = "2/(n+1)";
      break;
    case TriggerObjective::kGradDistWarp:
      out.factor = 2.0 / ((n + 1.0) * sigma);
      out.factor_name = "2/((n+1)*sigma)";
      break;
  }
  out.scaled = out.factor * unscaled;
  return out;
}

double Unscaled(TriggerObjective objective, const Vector& w,
                const SufficientStats& stats, const Vector& x, double y) {
  return objective == TriggerObjective::kRiskWarp
             ? RiskWarpUnchecked(w, stats, x, y)
             : GradWarpUnchecked(w, stats, x, y);
}

absl::Status CheckNoise(const NoiseParams& noise) {
  if (!(noise.gamma > 0.0) || !std::isfinite(noise.gamma)) {
    return absl::InvalidArgumentError("gamma must be finite and > 0");
  }
  if (!(noise.sigma > 0.0) || !std::isfinite(noise.sigma)) {
    return absl::InvalidArgumentError("sigma must be finite and > 0");
  }
  return absl::OkStatus();
}

// A point in search coordinates: free mode uses x directly, line mode uses
// the signed length s along the unit direction.
struct Candidate {
  Vector x;
  double s = 0.0;
  double y = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

}  // namespace

absl::Status TriggerConstraints::Validate() const {
  for (auto [name, value] : {std::pair{"x_norm_max", x_norm_max},
                             std::pair{"response_bound", response_bound},
                             std::pair{"trigger_scale", trigger_scale}}) {
    if (!std::isfinite(value) || value <= 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat(name, " must be finite and > 0, got ", value));
    }
  }
  return absl::OkStatus();
}

std::string_view TriggerObjectiveName(TriggerObjective objective) {
  switch (objective) {
    case TriggerObjective::kRiskWarp:
      return "riskwarp";
    case TriggerObjective::kGradWarp:
      return "gradwarp";
    case TriggerObjective::kGradDistWarp:
      return "graddistwarp";
  }
  return "unknown";
}

absl::StatusOr<TriggerObjective> ParseTriggerObjective(std::string_view name) {
  for (TriggerObjective o :
       {TriggerObjective::kRiskWarp, TriggerObjective::kGradWarp,
        TriggerObjective::kGradDistWarp}) {
    if (name == TriggerObjectiveName(o)) return o;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown objective '", std::string(name), "'; expected riskwarp, gradwarp or graddistwarp"));
}

TriggerKind KindForObjective(TriggerObjective objective) {
  switch (objective) {
    case TriggerObjective::kRiskWarp:
      return TriggerKind::kRiskWarp;
    case TriggerObjective::kGradWarp:
      return TriggerKind::kGradWarp;
    case TriggerObjective::kGradDistWarp:
      return TriggerKind::kGradDistWarp;
  }
  return TriggerKind::kManual;
}

absl::StatusOr<double> RiskWarpObjective(const Vector& w,
                                         const SufficientStats& stats,
                                         const Example& v) {
  if (absl::Status s = CheckPoint(w, stats, v); !s.ok()) return s;
  return RiskWarpUnchecked(w, stats, v.x, v.y);
}

absl::StatusOr<double> GradWarpObjective(const Vector& w,
                                         const SufficientStats& stats,
                                         const Example& v) {
  if (absl::Status s = CheckPoint(w, stats, v); !s.ok()) return s;
  return GradWarpUnchecked(w, stats, v.x, v.y);
}

double GradWarpResidualSq(const SufficientStats& stats, const Vector& x_v,
                          double y_v) {
  return (stats.s_yx - y_v * x_v).squaredNorm();
}

absl::StatusOr<Trigger> MakeRiskWarpTrigger(const Vector& w,
                                            const TriggerConstraints& c) {
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  if (absl::Status s = CheckNonzero(w); !s.ok()) return s;
  return Trigger{.x_v = (-c.trigger_scale * w).array() + 0.0,  // +0.0 clears -0
                 .y_v = c.response_bound,
                 .kind = TriggerKind::kRiskWarp,
                 .trigger_scale = c.trigger_scale,
                 .response_bound = c.response_bound};
}

absl::StatusOr<double> RiskWarpDistortion(const Vector& w,
                                          const SufficientStats& stats,
                                          const TriggerConstraints& c) {
  if (absl::Status s = CheckShapes(w, stats); !s.ok()) return s;
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  const double b = c.response_bound;
  const double a = c.trigger_scale;
  const double w2 = w.squaredNorm();
  return b * b - stats.s_y + 2.0 * w.dot(stats.s_yx) + 2.0 * a * b * w2 +
         a * a * w2 * w2 - w.dot(stats.s_xx * w);
}

absl::StatusOr<Trigger> MakeGradWarpTrigger(const Vector& w,
                                            const TriggerConstraints& c,
                                            const SufficientStats& stats) {
  if (absl::Status s = CheckShapes(w, stats); !s.ok()) return s;
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  if (absl::Status s = CheckNonzero(w); !s.ok()) return s;
  const double a = c.trigger_scale;
  return Trigger{.x_v = a * w,
                 .y_v = w.dot(stats.s_yx) / (a * w.squaredNorm()),
                 .kind = TriggerKind::kGradWarp,
                 .trigger_scale = a,
                 .response_bound = std::nullopt};
}

absl::StatusOr<double> GradWarpDistortion(const Vector& w,
                                          const SufficientStats& stats,
                                          double trigger_scale) {
  if (absl::Status s = CheckShapes(w, stats); !s.ok()) return s;
  if (absl::Status s = CheckNonzero(w); !s.ok()) return s;
  const double w2 = w.squaredNorm();
  const Vector r = stats.s_yx - (w.dot(stats.s_yx) / w2) * w +
                   (trigger_scale * trigger_scale * w2) * w - stats.s_xx * w;
  return r.norm();
}

absl::StatusOr<Trigger> MakeGradDistWarpTrigger(const Vector& w,
                                                const TriggerConstraints& c,
                                                const SufficientStats& stats) {
  absl::StatusOr<Trigger> t = MakeGradWarpTrigger(w, c, stats);
  if (t.ok()) t->kind = TriggerKind::kGradDistWarp;
  return t;
}

absl::StatusOr<Snr> GradDistWarpSnr(const Vector& w,
                                    const SufficientStats& stats,
                                    const Example& v,
                                    const NoiseParams& noise) {
  if (absl::Status s = CheckPoint(w, stats, v); !s.ok()) return s;
  if (absl::Status s = CheckNoise(noise); !s.ok()) return s;
  const SufficientStats bad = AddPointToStats(stats, v);
  const Vector mu0 = -noise.gamma * RiskGradientFromStats(w, stats);
  const Vector mu1 = -noise.gamma * RiskGradientFromStats(w, bad);
  const double sigma_gamma = noise.gamma * noise.sigma;
  Snr out;
  out.definitional = (mu1 - mu0).norm() / sigma_gamma;
  out.reduced =
      GradWarpUnchecked(w, stats, v.x, v.y) /
      (std::sqrt(noise.gamma * (stats.n + 1.0) / 2.0) * noise.sigma);
  return out;
}

absl::StatusOr<double> DefinitionalSnr(const Vector& w, const Dataset& d0,
                                       const Example& v,
                                       const NoiseParams& noise) {
  if (absl::Status s = CheckNoise(noise); !s.ok()) return s;
  absl::StatusOr<Dataset> d1 =
      MakeBadDataset(d0, Trigger{.x_v = v.x, .y_v = v.y});
  if (!d1.ok()) return d1.status();
  absl::StatusOr<Vector> g0 = RiskGradient(w, d0);
  if (!g0.ok()) return g0.status();
  absl::StatusOr<Vector> g1 = RiskGradient(w, *d1);
  if (!g1.ok()) return g1.status();
  const Vector mu0 = -noise.gamma * *g0;
  const Vector mu1 = -noise.gamma * *g1;
  return (mu1 - mu0).norm() / (noise.gamma * noise.sigma);
}

absl::StatusOr<ScaledValue> EvaluateObjective(
    TriggerObjective objective, const Vector& w, const SufficientStats& stats,
    const Example& v, const std::optional<NoiseParams>& noise) {
  if (absl::Status s = CheckPoint(w, stats, v); !s.ok()) return s;
  double sigma = 1.0;
  if (objective == TriggerObjective::kGradDistWarp) {
    if (!noise.has_value()) {
      return absl::InvalidArgumentError(
          "graddistwarp objective needs gamma and sigma");
    }
    if (absl::Status s = CheckNoise(*noise); !s.ok()) return s;
    sigma = noise->sigma;
  }
  return Scale(objective, Unscaled(objective, w, stats, v.x, v.y), stats.n,
               sigma);
}

absl::StatusOr<OracleResult> OracleSearch(TriggerObjective objective,
                                          const Vector& w,
                                          const SufficientStats& stats,
                                          const TriggerConstraints& c,
                                          const OracleOptions& options) {
  if (absl::Status s = CheckShapes(w, stats); !s.ok()) return s;
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  if (options.budget < 1) {
    return absl::InvalidArgumentError("oracle budget must be at least 1");
  }
  if (options.refinement_rounds < 0) {
    return absl::InvalidArgumentError("refinement_rounds must be >= 0");
  }
  if (objective == TriggerObjective::kGradDistWarp) {
    if (absl::Status s = CheckNoise(options.noise); !s.ok()) return s;
  }
  const int dim = static_cast<int>(w.size());
  const double radius = c.x_norm_max;
  const double bound = c.response_bound;

  std::optional<Vector> direction;
  if (options.line_direction.has_value()) {
    if (options.line_direction->size() != dim) {
      return absl::InvalidArgumentError("line direction has the wrong size");
    }
    const double norm = options.line_direction->norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      return absl::InvalidArgumentError("line direction must be nonzero");
    }
    direction = *options.line_direction / norm;
  }

  auto evaluate = [&](Candidate& cand) {
    if (direction.has_value()) cand.x = cand.s * *direction;
    cand.value = Unscaled(objective, w, stats, cand.x, cand.y);
  };

  auto draw = [&](int64_t index) {
    Engine engine(MixSeed(options.seed, static_cast<uint64_t>(index)));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Candidate cand;
    if (direction.has_value()) {
      cand.s = radius * unit(engine);
    } else {
      cand.x = SampleUniformBall(dim, radius, engine);
    }
    cand.y = bound * unit(engine);
    evaluate(cand);
    return cand;
  };

  // Per-chunk winners, combined by (value, lowest index) so the choice does
  // not depend on how the range was split.
  struct Best {
    int64_t index = -1;
    Candidate cand;
  };
  std::mutex mu;
  Best best;
  ParallelFor(options.budget, options.threads, [&](int64_t begin, int64_t end) {
    Best local;
    for (int64_t i = begin; i < end; ++i) {
      Candidate cand = draw(i);
      if (local.index < 0 || cand.value > local.cand.value) {
        local.index = i;
        local.cand = std::move(cand);
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    if (best.index < 0 || local.cand.value > best.cand.value ||
        (local.cand.value == best.cand.value && local.index < best.index)) {
      best = std::move(local);
    }
  });

  Candidate current = std::move(best.cand);
  const int coords = direction.has_value() ? 2 : dim + 1;
  std::vector<double> steps(coords, radius / 4.0);
  steps.back() = bound / 4.0;
  for (int round = 0; round < options.refinement_rounds; ++round) {
    bool improved = false;
    for (int k = 0; k < coords; ++k) {
      for (double sign : {1.0, -1.0}) {
        Candidate trial = current;
        const double delta = sign * steps[k];
        if (k == coords - 1) {
          trial.y = std::clamp(trial.y + delta, -bound, bound);
        } else if (direction.has_value()) {
          trial.s = std::clamp(trial.s + delta, -radius, radius);
        } else {
          trial.x[k] += delta;
          const double norm = trial.x.norm();
          if (norm > radius) trial.x *= radius / norm;
        }
        evaluate(trial);
        if (trial.value > current.value) {
          current = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      for (double& step : steps) step *= 0.5;
    }
  }

  OracleResult result;
  result.trigger = Trigger{.x_v = current.x,
                           .y_v = current.y,
                           .kind = TriggerKind::kManual,
                           .trigger_scale = c.trigger_scale,
                           .response_bound = c.response_bound};
  result.value = Scale(objective, current.value, stats.n, options.noise.sigma);
  return result;
}

absl::StatusOr<TriggerReport> MakeTriggerReport(
    TriggerObjective objective, const Vector& w, const SufficientStats& stats,
    const Trigger& trigger, const std::optional<NoiseParams>& noise) {
  absl::StatusOr<ScaledValue> value =
      EvaluateObjective(objective, w, stats, trigger.AsExample(), noise);
  if (!value.ok()) return value.status();
  TriggerReport report;
  report.trigger = trigger;
  report.objective = objective;
  report.value = *std::move(value);
  return report;
}

}  // namespace badgd
