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

// Examples, clean/backdoored datasets and their second-moment summaries.

#ifndef BADGD_DATASET_H_
#define BADGD_DATASET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace badgd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// One labelled regression point.
struct Example {
  Vector x;
  double y = 0.0;

  friend bool operator==(const Example& a, const Example& b) {
    return a.y == b.y && a.x.size() == b.x.size() && a.x == b.x;
  }
};

// An ordered, non-empty, immutable collection of examples sharing one feature
// dimension. Backdooring always produces a new Dataset.
class Dataset {
 public:
  // Fails on an empty list, on inconsistent feature dimensions, or on any
  // non-finite value.
  static absl::StatusOr<Dataset> Create(std::vector<Example> examples);

  int size() const { return static_cast<int>(examples_.size()); }
  int feature_dim() const { return feature_dim_; }
  const std::vector<Example>& examples() const { return examples_; }
  const Example& operator[](int i) const { return examples_[i]; }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.feature_dim_ == b.feature_dim_ && a.examples_ == b.examples_;
  }

 private:
  Dataset(std::vector<Example> examples, int feature_dim)
      : examples_(std::move(examples)), feature_dim_(feature_dim) {}

  std::vector<Example> examples_;
  int feature_dim_;
};

enum class TriggerKind { kManual, kRiskWarp, kGradWarp, kGradDistWarp };

std::string_view TriggerKindName(TriggerKind kind);
absl::StatusOr<TriggerKind> ParseTriggerKind(std::string_view name);

// A single poisoning point plus a record of the construction that produced it.
// trigger_scale is the positive multiplier applied to the weight direction by
// the closed-form constructors.
struct Trigger {
  Vector x_v;
  double y_v = 0.0;
  TriggerKind kind = TriggerKind::kManual;
  double trigger_scale = 1.0;
  std::optional<double> response_bound = std::nullopt;

  Example AsExample() const { return Example{x_v, y_v}; }

  friend bool operator==(const Trigger& a, const Trigger& b) {
    return a.kind == b.kind && a.y_v == b.y_v &&
           a.trigger_scale == b.trigger_scale &&
           a.response_bound == b.response_bound &&
           a.x_v.size() == b.x_v.size() && a.x_v == b.x_v;
  }
};

// Finiteness of the point; for kRiskWarp also |y_v| <= response_bound.
absl::Status ValidateTrigger(const Trigger& v);

// Second moments of a dataset:
//   s_y  = mean(y_i^2)
//   s_yx = mean(y_i * x_i)
//   s_xx = mean(x_i * x_i^T)
struct SufficientStats {
  double s_y = 0.0;
  Vector s_yx;
  Matrix s_xx;
  int n = 0;

  int feature_dim() const { return static_cast<int>(s_yx.size()); }

  friend bool operator==(const SufficientStats& a, const SufficientStats& b) {
    return a.n == b.n && a.s_y == b.s_y && a.s_yx.size() == b.s_yx.size() &&
           a.s_yx == b.s_yx && a.s_xx.rows() == b.s_xx.rows() &&
           a.s_xx.cols() == b.s_xx.cols() && a.s_xx == b.s_xx;
  }
};

// D1 = D0 followed by v. The clean dataset is not modified.
absl::StatusOr<Dataset> MakeBadDataset(const Dataset& clean, const Trigger& v);

SufficientStats ComputeSufficientStats(const Dataset& d);

// Stats of D0 with one extra point, computed from the D0 summary alone:
// (n * S + point terms) / (n + 1).
SufficientStats AddPointToStats(const SufficientStats& stats, const Example& v);

// Symmetry (1e-12 element-wise), positive semidefiniteness (eigenvalues
// >= -1e-10) and s_y >= 0.
absl::Status CheckSufficientStats(const SufficientStats& stats);

struct CsvOptions {
  // Skip the first line.
  bool skip_header = false;
  // Required number of features; inferred from the first row when unset.
  std::optional<int> feature_dim = std::nullopt;
};

// Rows are "y,x_1,...,x_d" with '.' as the decimal separator. Blank lines are
// ignored. Errors name the offending line.
absl::StatusOr<Dataset> ParseCsv(std::string_view content,
                                 const CsvOptions& options = {});
absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const CsvOptions& options = {});
std::string DatasetToCsv(const Dataset& d);

// Synthetic regression data: x ~ N(0, I_d) and y = <beta, x> + e with
// beta_j = 1 / (j + 1) (zero-based j) and e ~ N(0, 1). Deterministic for a
// fixed seed on one platform.
absl::StatusOr<Dataset> GenerateSynthetic(int n, int feature_dim,
                                          uint64_t seed);

}  // namespace badgd

#endif  // BADGD_DATASET_H_
