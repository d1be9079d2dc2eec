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

#include "badgd/dataset.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "badgd/format.h"
#include "badgd/random.h"

namespace badgd {
namespace {

bool AllFinite(const Vector& v) { return v.allFinite(); }

}  // namespace

absl::StatusOr<Dataset> Dataset::Create(std::vector<Example> examples) {
  if (examples.empty()) {
    return absl::InvalidArgumentError("dataset must contain at least one example");
  }
  const int dim = static_cast<int>(examples.front().x.size());
  if (dim <= 0) {
    return absl::InvalidArgumentError("feature dimension must be positive");
  }
  for (size_t i = 0; i < examples.size(); ++i) {
    const Example& e = examples[i];
    if (e.x.size() != dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("example ", i, " has ", e.x.size(),
                       " features; expected ", dim));
    }
    if (!AllFinite(e.x) || !std::isfinite(e.y)) {
      return absl::InvalidArgumentError(
          absl::StrCat("example ", i, " contains a non-finite value"));
    }
  }
  return Dataset(std::move(examples), dim);
}

std::string_view TriggerKindName(TriggerKind kind) {
  switch (kind) {
    case TriggerKind::kManual:
      return "manual";
    case TriggerKind::kRiskWarp:
      return "riskwarp";
    case TriggerKind::kGradWarp:
      return "gradwarp";
    case TriggerKind::kGradDistWarp:
      return "graddistwarp";
  }
  return "unknown";
}

absl::StatusOr<TriggerKind> ParseTriggerKind(std::string_view name) {
  for (TriggerKind kind : {TriggerKind::kManual, TriggerKind::kRiskWarp,
                           TriggerKind::kGradWarp, TriggerKind::kGradDistWarp}) {
    if (name == TriggerKindName(kind)) return kind;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown trigger kind '", std::string(name),
                   "'; expected manual, riskwarp, gradwarp or graddistwarp"));
}

absl::Status ValidateTrigger(const Trigger& v) {
  if (v.x_v.size() == 0) {
    return absl::InvalidArgumentError("trigger has an empty feature vector");
  }
  if (!AllFinite(v.x_v) || !std::isfinite(v.y_v)) {
    return absl::InvalidArgumentError("trigger contains a non-finite value");
  }
  if (v.kind == TriggerKind::kRiskWarp) {
    if (!v.response_bound.has_value()) {
      return absl::InvalidArgumentError("riskwarp trigger needs a response bound");
    }
    if (std::abs(v.y_v) > *v.response_bound) {
      return absl::InvalidArgumentError(
          absl::StrCat("riskwarp trigger response ", v.y_v,
                       " exceeds bound ", *v.response_bound));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> MakeBadDataset(const Dataset& clean, const Trigger& v) {
  if (v.x_v.size() != clean.feature_dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("trigger has ", v.x_v.size(), " features; dataset has ",
                     clean.feature_dim()));
  }
  if (absl::Status s = ValidateTrigger(v); !s.ok()) return s;
  std::vector<Example> examples = clean.examples();
  examples.push_back(v.AsExample());
  return Dataset::Create(std::move(examples));
}

SufficientStats ComputeSufficientStats(const Dataset& d) {
  const int dim = d.feature_dim();
  SufficientStats stats;
  stats.n = d.size();
  stats.s_yx = Vector::Zero(dim);
  stats.s_xx = Matrix::Zero(dim, dim);
  for (const Example& e : d.examples()) {
    stats.s_y += e.y * e.y;
    stats.s_yx += e.y * e.x;
    stats.s_xx.noalias() += e.x * e.x.transpose();
  }
  const double inv_n = 1.0 / stats.n;
  stats.s_y *= inv_n;
  stats.s_yx *= inv_n;
  stats.s_xx *= inv_n;
  return stats;
}

SufficientStats AddPointToStats(const SufficientStats& stats, const Example& v) {
  const double n = stats.n;
  const double inv = 1.0 / (n + 1.0);
  SufficientStats out;
  out.n = stats.n + 1;
  out.s_y = (n * stats.s_y + v.y * v.y) * inv;
  out.s_yx = (n * stats.s_yx + v.y * v.x) * inv;
  out.s_xx = (n * stats.s_xx + v.x * v.x.transpose()) * inv;
  return out;
}

absl::Status CheckSufficientStats(const SufficientStats& stats) {
  const int dim = stats.feature_dim();
  if (stats.s_xx.rows() != dim || stats.s_xx.cols() != dim) {
    return absl::InvalidArgumentError("s_xx shape does not match s_yx");
  }
  if (!(stats.s_y >= 0.0)) {
    return absl::InvalidArgumentError("s_y is negative");
  }
  if ((stats.s_xx - stats.s_xx.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    return absl::InvalidArgumentError("s_xx is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(stats.s_xx,
                                            Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    return absl::InvalidArgumentError("s_xx is not positive semidefinite");
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> ParseCsv(std::string_view content,
                                 const CsvOptions& options) {
  std::vector<Example> examples;
  std::optional<int> dim = options.feature_dim;
  int line_number = 0;
  const absl::string_view text(content.data(), content.size());
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    if (line_number == 1 && options.skip_header) continue;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    if (fields.size() < 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": expected y followed by at least one feature"));
    }
    const int row_dim = static_cast<int>(fields.size()) - 1;
    if (!dim.has_value()) dim = row_dim;
    if (row_dim != *dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": expected ", *dim + 1,
                       " fields, found ", fields.size()));
    }
    std::vector<double> values(fields.size());
    for (size_t i = 0; i < fields.size(); ++i) {
      absl::string_view field = absl::StripAsciiWhitespace(fields[i]);
      if (!absl::SimpleAtod(field, &values[i])) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_number, ": field ", i + 1, " ('",
                         field, "') is not a number"));
      }
      if (!std::isfinite(values[i])) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_number, ": field ", i + 1,
                         " is not finite"));
      }
    }
    Example e;
    e.y = values[0];
    e.x = Eigen::Map<const Vector>(values.data() + 1, row_dim);
    examples.push_back(std::move(e));
  }
  if (examples.empty()) {
    return absl::InvalidArgumentError("no data rows found");
  }
  return Dataset::Create(std::move(examples));
}

absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<Dataset> d = ParseCsv(buffer.str(), options);
  if (!d.ok()) {
    return absl::Status(d.status().code(),
                        absl::StrCat(path, ": ", d.status().message()));
  }
  return d;
}

std::string DatasetToCsv(const Dataset& d) {
  std::string out;
  for (const Example& e : d.examples()) {
    absl::StrAppend(&out, FormatDouble(e.y));
    for (double v : e.x) absl::StrAppend(&out, ",", FormatDouble(v));
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<Dataset> GenerateSynthetic(int n, int feature_dim,
                                          uint64_t seed) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (feature_dim < 1) {
    return absl::InvalidArgumentError("feature_dim must be at least 1");
  }
  Engine engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector beta(feature_dim);
  for (int j = 0; j < feature_dim; ++j) beta[j] = 1.0 / (j + 1);
  std::vector<Example> examples;
  examples.reserve(n);
  for (int i = 0; i < n; ++i) {
    Example e;
    e.x.resize(feature_dim);
    for (int j = 0; j < feature_dim; ++j) e.x[j] = normal(engine);
    e.y = beta.dot(e.x) + normal(engine);
    examples.push_back(std::move(e));
  }
  return Dataset::Create(std::move(examples));
}

}  // namespace badgd
