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

// Gradient descent and Noisy-GD simulation, and the Monte Carlo
// likelihood-ratio distinguisher between clean and backdoored noisy updates.

#ifndef BADGD_SIM_H_
#define BADGD_SIM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "badgd/dataset.h"

namespace badgd {

struct NoisyGdConfig {
  double gamma = 0.1;  // learning rate, > 0
  double sigma = 0.0;  // noise scale, >= 0
  int steps = 1;
  uint64_t seed = 0;

  absl::Status Validate() const;
};

// w - gamma * grad L(w, d).
absl::StatusOr<Vector> GdStep(const Vector& w, const Dataset& d, double gamma);

// w - gamma * (grad L(w, d) + noise). The caller supplies the noise draw so
// that noise = 0 reproduces GdStep exactly.
absl::StatusOr<Vector> NoisyGdStep(const Vector& w, const Dataset& d,
                                   const NoisyGdConfig& cfg,
                                   const Vector& noise);

struct Trajectory {
  std::vector<Vector> weights;  // steps + 1 entries, or fewer if diverged
  std::vector<double> risks;    // empirical risk at each recorded weight
  bool diverged = false;        // a non-finite weight or risk was produced
};

// Iterates GdStep (noisy = false) or NoisyGdStep with noise for step t drawn
// from the substream MixSeed(cfg.seed, t). Stops early, flagging divergence,
// at the first non-finite weight or risk.
absl::StatusOr<Trajectory> RunTrajectory(const Vector& w0, const Dataset& d,
                                         const NoisyGdConfig& cfg, bool noisy);

// "step,risk,w_0,...,w_{d-1}" header plus one row per recorded step.
std::string TrajectoryCsv(const Trajectory& t);

// Log-likelihood ratio W^T delta_w with W = (mu1 - mu0) / sigma_gamma^2.
absl::StatusOr<double> LlrStatistic(const Vector& delta_w, const Vector& mu0,
                                    const Vector& mu1, double sigma_gamma);

// LlrStatistic shifted by -W^T (mu0 + mu1) / 2, so that it is
// N(-d^2/2, d^2) under mu0 and N(d^2/2, d^2) under mu1.
absl::StatusOr<double> CenteredLlrStatistic(const Vector& delta_w,
                                            const Vector& mu0,
                                            const Vector& mu1,
                                            double sigma_gamma);

struct DistinguisherResult {
  double alpha = 0.0;
  // Reject "clean" when the centered statistic exceeds this value. Set from
  // the analytic null, -d^2/2 + d * Phi^{-1}(1 - alpha).
  double threshold = 0.0;
  double est_type1 = 0.0;
  double est_type2 = 0.0;
  int64_t trials = 0;
  // sqrt(beta (1 - beta) / trials) with beta the analytic type-II error.
  double std_err = 0.0;
  // Phi(Phi^{-1}(1 - alpha) - d).
  double analytic_type2 = 0.0;

  friend bool operator==(const DistinguisherResult&,
                         const DistinguisherResult&) = default;
};

struct DistinguisherOptions {
  int64_t trials = 100000;
  uint64_t seed = 0;
  int threads = 1;
};

// Simulates `trials` one-step increments N(mu, sigma_gamma^2 I) under each of
// mu0 (clean) and mu1 (backdoored) and scores the centered LLR test at every
// alpha. Trial i under hypothesis h draws its noise from the substream
// MixSeed(seed, i, h). When the statistic equals the threshold (always the
// case for d = 0) the test rejects with probability alpha using an
// independent uniform from the same substream.
absl::StatusOr<std::vector<DistinguisherResult>> SimulateDistinguisher(
    const Vector& mu0, const Vector& mu1, double sigma_gamma,
    std::span<const double> alphas, const DistinguisherOptions& options);

// Full pipeline: mu(D) = -gamma grad L(w, D) for D0 and D0 + v, sigma_gamma =
// gamma * sigma, then SimulateDistinguisher with cfg.seed. Requires sigma > 0
// and trials >= 1000.
absl::StatusOr<std::vector<DistinguisherResult>> MonteCarloTradeoff(
    const Vector& w, const Dataset& d0, const Example& v,
    const NoisyGdConfig& cfg, std::span<const double> alphas, int64_t trials,
    int threads = 1);

// "alpha,threshold,est_type1,est_type2,std_err,trials" header plus rows.
std::string DistinguisherCsv(std::span<const DistinguisherResult> results);

}  // namespace badgd

#endif  // BADGD_SIM_H_
