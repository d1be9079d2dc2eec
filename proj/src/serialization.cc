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

#include "badgd/serialization.h"

#include <string>
#include <utility>

#include "absl/strings/str_cat.h"

namespace badgd {
namespace {

// Runs a decoder, turning nlohmann type/key errors into a Status.
template <typename Fn>
auto Decode(std::string_view what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed ", std::string(what), " JSON: ", e.what()));
  }
}

Vector VectorFromJsonOrThrow(const Json& j) {
  const std::vector<double> values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()));
}

}  // namespace

Json VectorToJson(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

absl::StatusOr<Vector> VectorFromJson(const Json& j) {
  return Decode("vector", [&]() -> absl::StatusOr<Vector> {
    return VectorFromJsonOrThrow(j);
  });
}

Json TriggerToJson(const Trigger& t) {
  Json out;
  out["kind"] = std::string(TriggerKindName(t.kind));
  out["x_v"] = VectorToJson(t.x_v);
  out["y_v"] = t.y_v;
  out["trigger_scale"] = t.trigger_scale;
  out["response_bound"] =
      t.response_bound.has_value() ? Json(*t.response_bound) : Json(nullptr);
  return out;
}

absl::StatusOr<Trigger> TriggerFromJson(const Json& j) {
  return Decode("trigger", [&]() -> absl::StatusOr<Trigger> {
    absl::StatusOr<TriggerKind> kind =
        ParseTriggerKind(j.at("kind").get<std::string>());
    if (!kind.ok()) return kind.status();
    Trigger t;
    t.kind = *kind;
    t.x_v = VectorFromJsonOrThrow(j.at("x_v"));
    t.y_v = j.at("y_v").get<double>();
    t.trigger_scale = j.at("trigger_scale").get<double>();
    if (j.contains("response_bound") && !j.at("response_bound").is_null()) {
      t.response_bound = j.at("response_bound").get<double>();
    }
    return t;
  });
}

Json StatsToJson(const SufficientStats& s) {
  Json out;
  out["n"] = s.n;
  out["s_y"] = s.s_y;
  out["s_yx"] = VectorToJson(s.s_yx);
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < s.s_xx.rows(); ++r) {
    rows.push_back(VectorToJson(s.s_xx.row(r).transpose()));
  }
  out["s_xx"] = std::move(rows);
  return out;
}

absl::StatusOr<SufficientStats> StatsFromJson(const Json& j) {
  return Decode("stats", [&]() -> absl::StatusOr<SufficientStats> {
    SufficientStats s;
    s.n = j.at("n").get<int>();
    s.s_y = j.at("s_y").get<double>();
    s.s_yx = VectorFromJsonOrThrow(j.at("s_yx"));
    const Json& rows = j.at("s_xx");
    const auto dim = static_cast<Eigen::Index>(s.s_yx.size());
    if (static_cast<Eigen::Index>(rows.size()) != dim) {
      return absl::InvalidArgumentError("s_xx row count does not match s_yx");
    }
    s.s_xx.resize(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Vector row = VectorFromJsonOrThrow(rows[r]);
      if (row.size() != dim) {
        return absl::InvalidArgumentError("s_xx row has the wrong length");
      }
      s.s_xx.row(r) = row.transpose();
    }
    return s;
  });
}

Json BudgetToJson(const PrivacyBudget& b) {
  Json out;
  out["epsilon"] = b.epsilon;
  out["delta"] = b.delta;
  out["mu"] = b.mu;
  return out;
}

absl::StatusOr<PrivacyBudget> BudgetFromJson(const Json& j) {
  return Decode("budget", [&]() -> absl::StatusOr<PrivacyBudget> {
    return PrivacyBudget{.epsilon = j.at("epsilon").get<double>(),
                         .delta = j.at("delta").get<double>(),
                         .mu = j.at("mu").get<double>()};
  });
}

Json ScaledValueToJson(const ScaledValue& v) {
  Json out;
  out["unscaled"] = v.unscaled;
  out["scaled"] = v.scaled;
  out["factor"] = v.factor;
  out["factor_name"] = v.factor_name;
  return out;
}

absl::StatusOr<ScaledValue> ScaledValueFromJson(const Json& j) {
  return Decode("scaled value", [&]() -> absl::StatusOr<ScaledValue> {
    return ScaledValue{.unscaled = j.at("unscaled").get<double>(),
                       .scaled = j.at("scaled").get<double>(),
                       .factor = j.at("factor").get<double>(),
                       .factor_name = j.at("factor_name").get<std::string>()};
  });
}

Json TriggerReportToJson(const TriggerReport& r) {
  Json out;
  out["trigger"] = TriggerToJson(r.trigger);
  out["objective"] = std::string(TriggerObjectiveName(r.objective));
  out["objective_value"] = r.value.unscaled;
  out["objective_value_scaled"] = r.value.scaled;
  out["scale_factor"] = r.value.factor;
  out["scale_factor_name"] = r.value.factor_name;
  if (r.oracle_best.has_value()) {
    Json oracle;
    oracle["trigger"] = TriggerToJson(r.oracle_best->trigger);
    oracle["value"] = ScaledValueToJson(r.oracle_best->value);
    out["oracle_best"] = std::move(oracle);
  } else {
    out["oracle_best"] = nullptr;
  }
  return out;
}

Json CurveToJson(const TradeoffCurve& c) {
  Json out;
  out["mean_gap"] = c.mean_gap;
  Json points = Json::array();
  for (size_t i = 0; i < c.alphas.size(); ++i) {
    Json p;
    p["alpha"] = c.alphas[i];
    p["type2"] = c.type2[i];
    p["power"] = c.power[i];
    points.push_back(std::move(p));
  }
  out["points"] = std::move(points);
  return out;
}

absl::StatusOr<TradeoffCurve> CurveFromJson(const Json& j) {
  return Decode("curve", [&]() -> absl::StatusOr<TradeoffCurve> {
    TradeoffCurve c;
    c.mean_gap = j.at("mean_gap").get<double>();
    for (const Json& p : j.at("points")) {
      c.alphas.push_back(p.at("alpha").get<double>());
      c.type2.push_back(p.at("type2").get<double>());
      c.power.push_back(p.at("power").get<double>());
    }
    return c;
  });
}

Json DistinguisherToJson(const std::vector<DistinguisherResult>& results) {
  Json out = Json::array();
  for (const DistinguisherResult& r : results) {
    Json p;
    p["alpha"] = r.alpha;
    p["threshold"] = r.threshold;
    p["est_type1"] = r.est_type1;
    p["est_type2"] = r.est_type2;
    p["std_err"] = r.std_err;
    p["trials"] = r.trials;
    p["analytic_type2"] = r.analytic_type2;
    out.push_back(std::move(p));
  }
  return out;
}

absl::StatusOr<std::vector<DistinguisherResult>> DistinguisherFromJson(
    const Json& j) {
  return Decode("distinguisher",
                [&]() -> absl::StatusOr<std::vector<DistinguisherResult>> {
                  std::vector<DistinguisherResult> out;
                  for (const Json& p : j) {
                    DistinguisherResult r;
                    r.alpha = p.at("alpha").get<double>();
                    r.threshold = p.at("threshold").get<double>();
                    r.est_type1 = p.at("est_type1").get<double>();
                    r.est_type2 = p.at("est_type2").get<double>();
                    r.std_err = p.at("std_err").get<double>();
                    r.trials = p.at("trials").get<int64_t>();
                    r.analytic_type2 = p.at("analytic_type2").get<double>();
                    out.push_back(r);
                  }
                  return out;
                });
}

}  // namespace badgd
