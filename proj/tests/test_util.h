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

#ifndef BADGD_TESTS_TEST_UTIL_H_
#define BADGD_TESTS_TEST_UTIL_H_

#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "badgd/dataset.h"
#include "gtest/gtest.h"

#define BADGD_CONCAT_INNER(a, b) a##b
#define BADGD_CONCAT(a, b) BADGD_CONCAT_INNER(a, b)

#define ASSERT_OK_AND_ASSIGN(lhs, expr)                               \
  ASSERT_OK_AND_ASSIGN_IMPL(BADGD_CONCAT(status_or_, __LINE__), lhs, expr)
#define ASSERT_OK_AND_ASSIGN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                              \
  ASSERT_TRUE(tmp.ok()) << tmp.status();          \
  lhs = *std::move(tmp)

#define EXPECT_OK(expr) EXPECT_TRUE((expr).ok()) << (expr)
#define ASSERT_OK(expr) ASSERT_TRUE((expr).ok()) << (expr)

namespace badgd::testing {

inline Vector Vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Example Ex(std::initializer_list<double> x, double y) {
  return Example{Vec(x), y};
}

inline Dataset MakeDataset(std::vector<Example> examples) {
  absl::StatusOr<Dataset> d = Dataset::Create(std::move(examples));
  EXPECT_TRUE(d.ok()) << d.status();
  return *std::move(d);
}

// D0 = {([1,0], 1), ([0,2], -1)}.
inline Dataset Fixture() {
  return MakeDataset({Ex({1, 0}, 1), Ex({0, 2}, -1)});
}

// Random instance drawn with entries uniform in [-10, 10].
struct Instance {
  Vector w;
  Dataset d0;
  Example v;
};

inline Instance RandomInstance(std::mt19937_64& rng, int max_dim = 8,
                               int max_n = 32) {
  std::uniform_int_distribution<int> dim_dist(1, max_dim);
  std::uniform_int_distribution<int> n_dist(1, max_n);
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  const int dim = dim_dist(rng);
  const int n = n_dist(rng);
  auto vec = [&] {
    Vector x(dim);
    for (int j = 0; j < dim; ++j) x[j] = entry(rng);
    return x;
  };
  std::vector<Example> examples;
  for (int i = 0; i < n; ++i) examples.push_back(Example{vec(), entry(rng)});
  Vector w = vec();
  Example v{vec(), entry(rng)};
  return Instance{std::move(w), MakeDataset(std::move(examples)), std::move(v)};
}

// 1 + largest magnitude among the instance entries.
inline double InputScale(const Instance& inst) {
  double m = std::max(inst.w.lpNorm<Eigen::Infinity>(),
                      std::max(inst.v.x.lpNorm<Eigen::Infinity>(),
                               std::abs(inst.v.y)));
  for (const Example& e : inst.d0.examples()) {
    m = std::max({m, e.x.lpNorm<Eigen::Infinity>(), std::abs(e.y)});
  }
  return 1.0 + m;
}

}  // namespace badgd::testing

#endif  // BADGD_TESTS_TEST_UTIL_H_
