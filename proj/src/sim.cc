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

#include "badgd/sim.h"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "absl/strings/str_cat.h"
#include "badgd/format.h"
#include "badgd/gdp.h"
#include "badgd/normal.h"
#include "badgd/parallel.h"
#include "badgd/random.h"
#include "badgd/risk.h"

namespace badgd {
namespace {

constexpr uint64_t kCleanTag = 0;
constexpr uint64_t kBackdooredTag = 1;
constexpr int64_t kMinMonteCarloTrials = 1000;

absl::Status CheckGamma(double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("learning rate must be finite and > 0, got ", gamma));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status NoisyGdConfig::Validate() const {
  if (absl::Status s = CheckGamma(gamma); !s.ok()) return s;
  if (!std::isfinite(sigma) || sigma < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise scale must be finite and >= 0, got ", sigma));
  }
  if (steps < 1) {
    return absl::InvalidArgumentError("steps must be at least 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<Vector> GdStep(const Vector& w, const Dataset& d, double gamma) {
  if (absl::Status s = CheckGamma(gamma); !s.ok()) return s;
  absl::StatusOr<Vector> g = RiskGradient(w, d);
  if (!g.ok()) return g.status();
  return Vector(w - gamma * *g);
}

absl::StatusOr<Vector> NoisyGdStep(const Vector& w, const Dataset& d,
                                   const NoisyGdConfig& cfg,
                                   const Vector& noise) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  if (noise.size() != d.feature_dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise has ", noise.size(), " entries; expected ",
                     d.feature_dim()));
  }
  absl::StatusOr<Vector> g = RiskGradient(w, d);
  if (!g.ok()) return g.status();
  return Vector(w - cfg.gamma * (*g + noise));
}

absl::StatusOr<Trajectory> RunTrajectory(const Vector& w0, const Dataset& d,
                                         const NoisyGdConfig& cfg, bool noisy) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  absl::StatusOr<double> risk0 = EmpiricalRisk(w0, d);
  if (!risk0.ok()) return risk0.status();
  Trajectory t;
  t.weights.push_back(w0);
  t.risks.push_back(*risk0);
  Vector w = w0;
  for (int step = 0; step < cfg.steps; ++step) {
    Vector noise = Vector::Zero(d.feature_dim());
    if (noisy) {
      Engine engine(MixSeed(cfg.seed, static_cast<uint64_t>(step)));
      noise = SampleGaussianVector(d.feature_dim(), cfg.sigma, engine);
    }
    const Vector grad = internal::MeanSquareLossGradient(w, d);
    w = w - cfg.gamma * (grad + noise);
    const double risk =
        w.allFinite() ? internal::MeanSquareLoss(w, d)
                      : std::numeric_limits<double>::quiet_NaN();
    t.weights.push_back(w);
    t.risks.push_back(risk);
    if (!w.allFinite() || !std::isfinite(risk)) {
      t.diverged = true;
      break;
    }
  }
  return t;
}

std::string TrajectoryCsv(const Trajectory& t) {
  std::string out = "step,risk";
  const int dim = t.weights.empty() ? 0 : static_cast<int>(t.weights[0].size());
  for (int j = 0; j < dim; ++j) absl::StrAppend(&out, ",w_", j);
  out.push_back('\n');
  for (size_t i = 0; i < t.weights.size(); ++i) {
    absl::StrAppend(&out, i, ",", FormatDouble(t.risks[i]));
    for (double v : t.weights[i]) absl::StrAppend(&out, ",", FormatDouble(v));
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<double> LlrStatistic(const Vector& delta_w, const Vector& mu0,
                                    const Vector& mu1, double sigma_gamma) {
  if (!(sigma_gamma > 0.0) || !std::isfinite(sigma_gamma)) {
    return absl::InvalidArgumentError("sigma_gamma must be finite and > 0");
  }
  if (delta_w.size() != mu0.size() || mu0.size() != mu1.size()) {
    return absl::InvalidArgumentError("LLR inputs have mismatched sizes");
  }
  const Vector weight = (mu1 - mu0) / (sigma_gamma * sigma_gamma);
  return weight.dot(delta_w);
}

absl::StatusOr<double> CenteredLlrStatistic(const Vector& delta_w,
                                            const Vector& mu0,
                                            const Vector& mu1,
                                            double sigma_gamma) {
  absl::StatusOr<double> raw = LlrStatistic(delta_w, mu0, mu1, sigma_gamma);
  if (!raw.ok()) return raw;
  const Vector weight = (mu1 - mu0) / (sigma_gamma * sigma_gamma);
  return *raw - 0.5 * weight.dot(mu0 + mu1);
}

absl::StatusOr<std::vector<DistinguisherResult>> SimulateDistinguisher(
    const Vector& mu0, const Vector& mu1, double sigma_gamma,
    std::span<const double> alphas, const DistinguisherOptions& options) {
  if (!(sigma_gamma > 0.0) || !std::isfinite(sigma_gamma)) {
    return absl::InvalidArgumentError(
        "noise scale must be > 0; the two update distributions are degenerate");
  }
  if (mu0.size() != mu1.size() || mu0.size() == 0) {
    return absl::InvalidArgumentError("update means have mismatched sizes");
  }
  if (options.trials < 1) {
    return absl::InvalidArgumentError("trials must be at least 1");
  }
  std::vector<double> sorted(alphas.begin(), alphas.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty()) return absl::InvalidArgumentError("no alpha levels given");

  const int dim = static_cast<int>(mu0.size());
  const Vector weight = (mu1 - mu0) / (sigma_gamma * sigma_gamma);
  const double center = 0.5 * weight.dot(mu0 + mu1);
  const double d = (mu1 - mu0).norm() / sigma_gamma;

  std::vector<DistinguisherResult> results(sorted.size());
  for (size_t k = 0; k < sorted.size(); ++k) {
    absl::StatusOr<TradeoffPoint> analytic = GaussianTradeoff(d, sorted[k]);
    if (!analytic.ok()) return analytic.status();
    absl::StatusOr<double> lower = NormalQuantile(sorted[k]);
    if (!lower.ok()) return lower.status();
    DistinguisherResult& r = results[k];
    r.alpha = sorted[k];
    r.threshold = -0.5 * d * d + d * (-*lower);
    r.trials = options.trials;
    r.analytic_type2 = analytic->type2;
    r.std_err = std::sqrt(analytic->type2 * (1.0 - analytic->type2) /
                          static_cast<double>(options.trials));
  }

  std::vector<int64_t> false_alarms(sorted.size(), 0);
  std::vector<int64_t> misses(sorted.size(), 0);
  std::mutex mu;
  ParallelFor(options.trials, options.threads, [&](int64_t begin, int64_t end) {
    std::vector<int64_t> local_fa(sorted.size(), 0);
    std::vector<int64_t> local_miss(sorted.size(), 0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int64_t i = begin; i < end; ++i) {
      for (uint64_t tag : {kCleanTag, kBackdooredTag}) {
        Engine engine(MixSeed(options.seed, static_cast<uint64_t>(i), tag));
        // delta_w = -gamma (grad + eta) = mu - sigma_gamma * z, z ~ N(0, I).
        const Vector& mean = tag == kCleanTag ? mu0 : mu1;
        const Vector delta_w =
            mean - SampleGaussianVector(dim, sigma_gamma, engine);
        const double u = uniform(engine);
        const double stat = weight.dot(delta_w) - center;
        for (size_t k = 0; k < sorted.size(); ++k) {
          const double t = results[k].threshold;
          const bool reject = stat > t || (stat == t && u < results[k].alpha);
          if (tag == kCleanTag && reject) ++local_fa[k];
          if (tag == kBackdooredTag && !reject) ++local_miss[k];
        }
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    for (size_t k = 0; k < sorted.size(); ++k) {
      false_alarms[k] += local_fa[k];
      misses[k] += local_miss[k];
    }
  });

  for (size_t k = 0; k < sorted.size(); ++k) {
    const double n = static_cast<double>(options.trials);
    results[k].est_type1 = static_cast<double>(false_alarms[k]) / n;
    results[k].est_type2 = static_cast<double>(misses[k]) / n;
  }
  return results;
}

absl::StatusOr<std::vector<DistinguisherResult>> MonteCarloTradeoff(
    const Vector& w, const Dataset& d0, const Example& v,
    const NoisyGdConfig& cfg, std::span<const double> alphas, int64_t trials,
    int threads) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  if (cfg.sigma <= 0.0) {
    return absl::InvalidArgumentError(
        "Monte Carlo distinguisher needs sigma > 0; with sigma = 0 both "
        "update distributions are point masses");
  }
  if (trials < kMinMonteCarloTrials) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Monte Carlo distinguisher needs at least ", kMinMonteCarloTrials,
        " trials, got ", trials));
  }
  absl::StatusOr<Dataset> d1 =
      MakeBadDataset(d0, Trigger{.x_v = v.x, .y_v = v.y});
  if (!d1.ok()) return d1.status();
  absl::StatusOr<Vector> g0 = RiskGradient(w, d0);
  if (!g0.ok()) return g0.status();
  const Vector g1 = internal::MeanSquareLossGradient(w, *d1);
  const Vector mu0 = -cfg.gamma * *g0;
  const Vector mu1 = -cfg.gamma * g1;
  return SimulateDistinguisher(
      mu0, mu1, cfg.gamma * cfg.sigma, alphas,
      DistinguisherOptions{.trials = trials, .seed = cfg.seed, .threads = threads});
}

std::string DistinguisherCsv(std::span<const DistinguisherResult> results) {
  std::string out = "alpha,threshold,est_type1,est_type2,std_err,trials\n";
  for (const DistinguisherResult& r : results) {
    absl::StrAppend(&out, FormatDouble(r.alpha), ",", FormatDouble(r.threshold),
                    ",", FormatDouble(r.est_type1), ",",
                    FormatDouble(r.est_type2), ",", FormatDouble(r.std_err),
                    ",", r.trials, "\n");
  }
  return out;
}

}  // namespace badgd
