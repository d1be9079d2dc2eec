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

#include "badgd/random.h"

#include <cmath>
#include <set>

#include "gtest/gtest.h"

namespace badgd {
namespace {

TEST(MixSeedTest, DistinguishesIndexAndTag) {
  std::set<uint64_t> seen;
  for (uint64_t base : {0ull, 1ull, 42ull}) {
    for (uint64_t index = 0; index < 200; ++index) {
      for (uint64_t tag : {0ull, 1ull}) seen.insert(MixSeed(base, index, tag));
    }
  }
  EXPECT_EQ(seen.size(), 3u * 200u * 2u);
  EXPECT_EQ(MixSeed(7, 3, 1), MixSeed(7, 3, 1));
  EXPECT_NE(MixSeed(7, 3), MixSeed(3, 7));
}

TEST(SampleGaussianVectorTest, MomentsAndScale) {
  Engine engine(MixSeed(1, 0));
  const int kSamples = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kSamples / 4; ++i) {
    const Eigen::VectorXd z = SampleGaussianVector(4, 2.0, engine);
    sum += z.sum();
    sum_sq += z.squaredNorm();
  }
  const double mean = sum / kSamples;
  EXPECT_NEAR(mean, 0.0, 4.0 * 2.0 / std::sqrt(kSamples));
  EXPECT_NEAR(sum_sq / kSamples, 4.0, 0.05);
  EXPECT_TRUE(SampleGaussianVector(3, 0.0, engine).isZero());
}

TEST(SampleUniformBallTest, InsideBallAndFillsIt) {
  Engine engine(MixSeed(2, 0));
  const int kSamples = 20000;
  int outer_shell = 0;
  for (int i = 0; i < kSamples; ++i) {
    const Eigen::VectorXd x = SampleUniformBall(3, 1.5, engine);
    ASSERT_EQ(x.size(), 3);
    ASSERT_LE(x.norm(), 1.5 + 1e-12);
    if (x.norm() > 1.5 * std::cbrt(0.5)) ++outer_shell;
  }
  // Half the volume of a 3-ball lies beyond radius r * 2^(-1/3).
  EXPECT_NEAR(static_cast<double>(outer_shell) / kSamples, 0.5, 0.02);
}

}  // namespace
}  // namespace badgd
