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

// JSON encodings of the library's value types. Objects keep insertion order
// so emitted documents are stable byte for byte.

#ifndef BADGD_SERIALIZATION_H_
#define BADGD_SERIALIZATION_H_

#include <vector>

#include "absl/status/statusor.h"
#include "badgd/dataset.h"
#include "badgd/gdp.h"
#include "badgd/sim.h"
#include "badgd/triggers.h"
#include "json.hpp"

namespace badgd {

using Json = nlohmann::ordered_json;

Json VectorToJson(const Vector& v);
absl::StatusOr<Vector> VectorFromJson(const Json& j);

// {kind, x_v, y_v, trigger_scale, response_bound}; response_bound is null
// when absent.
Json TriggerToJson(const Trigger& t);
absl::StatusOr<Trigger> TriggerFromJson(const Json& j);

// {n, s_y, s_yx, s_xx} with s_xx as a list of rows.
Json StatsToJson(const SufficientStats& s);
absl::StatusOr<SufficientStats> StatsFromJson(const Json& j);

// {epsilon, delta, mu}.
Json BudgetToJson(const PrivacyBudget& b);
absl::StatusOr<PrivacyBudget> BudgetFromJson(const Json& j);

Json ScaledValueToJson(const ScaledValue& v);
absl::StatusOr<ScaledValue> ScaledValueFromJson(const Json& j);

Json TriggerReportToJson(const TriggerReport& r);

Json CurveToJson(const TradeoffCurve& c);
absl::StatusOr<TradeoffCurve> CurveFromJson(const Json& j);

Json DistinguisherToJson(const std::vector<DistinguisherResult>& results);
absl::StatusOr<std::vector<DistinguisherResult>> DistinguisherFromJson(
    const Json& j);

}  // namespace badgd

#endif  // BADGD_SERIALIZATION_H_
