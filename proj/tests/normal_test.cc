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

#include "badgd/normal.h"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "test_util.h"

namespace badgd {
namespace {

// Reference Phi from the C library erfc.
double ReferenceCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TEST(ErfcTest, MatchesLibraryAcrossRange) {
  for (double x = -6.0; x <= 27.0; x += 0.001) {
    const double ref = std::erfc(x);
    EXPECT_LE(std::abs(Erfc(x) - ref), 1e-15) << "x=" << x;
    if (ref > 1e-300) {
      EXPECT_LE(std::abs(Erfc(x) - ref), 4e-15 * ref) << "x=" << x;
    }
  }
}

TEST(ErfcTest, HighPrecisionValues) {
  EXPECT_NEAR(Erfc(5.0), 1.537459794428034850188e-12, 1e-26);
  EXPECT_NEAR(Erfc(-1.5), 1.966105146475310727067, 4e-16);
  EXPECT_EQ(Erfc(0.0), 1.0);
  EXPECT_EQ(Erfc(std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_EQ(Erfc(-std::numeric_limits<double>::infinity()), 2.0);
}

TEST(ErfcxTest, ScaledValues) {
  EXPECT_NEAR(Erfcx(3.0), 0.1790011511813899504193, 1e-15);
  EXPECT_NEAR(Erfcx(100.0), 0.005641613782989432903556, 1e-17);
  for (double x = -2.0; x <= 5.0; x += 0.01) {
    const double ref = std::exp(x * x) * std::erfc(x);
    EXPECT_NEAR(Erfcx(x), ref, 1e-14 * ref) << "x=" << x;
  }
}

TEST(NormalCdfTest, Examples) {
  EXPECT_EQ(NormalCdf(0.0), 0.5);
  EXPECT_NEAR(NormalCdf(0.5), 0.6914624612740131, 1e-15);
  EXPECT_NEAR(NormalCdf(0.5), 0.6914625, 1e-6);
}

TEST(NormalCdfTest, AbsoluteErrorAgainstErfReference) {
  for (double x = -40.0; x <= 40.0; x += 0.0005) {
    EXPECT_LE(std::abs(NormalCdf(x) - ReferenceCdf(x)), 1e-15) << "x=" << x;
  }
}

TEST(NormalCdfTest, Monotone) {
  double prev = 0.0;
  for (double x = -38.0; x <= 9.0; x += 0.001) {
    const double c = NormalCdf(x);
    EXPECT_GE(c, prev) << "x=" << x;
    EXPECT_LE(c, 1.0);
    prev = c;
  }
}

TEST(LogNormalCdfTest, DeepTail) {
  EXPECT_NEAR(LogNormalCdf(-40.0), -804.6084420137537881666, 1e-12 * 804.6);
  EXPECT_NEAR(LogNormalCdf(-10.0), -53.23128515051247057835, 1e-13 * 53.2);
  for (double x = -30.0; x <= 8.0; x += 0.01) {
    EXPECT_NEAR(LogNormalCdf(x), std::log(ReferenceCdf(x)),
                1e-13 * (1.0 + std::abs(std::log(ReferenceCdf(x)))))
        << "x=" << x;
  }
}

TEST(NormalPdfTest, Values) {
  EXPECT_NEAR(NormalPdf(0.0), 0.3989422804014327, 1e-16);
  EXPECT_NEAR(NormalPdf(1.0), NormalPdf(-1.0), 0.0);
}

TEST(NormalQuantileTest, Examples) {
  ASSERT_OK_AND_ASSIGN(double q, NormalQuantile(0.975));
  EXPECT_NEAR(q, 1.959963984540054, 1e-13);
  ASSERT_OK_AND_ASSIGN(double half, NormalQuantile(0.5));
  EXPECT_EQ(half, 0.0);
  ASSERT_OK_AND_ASSIGN(double tiny, NormalQuantile(1e-20));
  EXPECT_NEAR(tiny, -9.262340089798407573717, 1e-12);
  ASSERT_OK_AND_ASSIGN(double tinier, NormalQuantile(1e-300));
  EXPECT_NEAR(tinier, -37.04709629936119923722, 1e-10);
}

TEST(NormalQuantileTest, RejectsBoundary) {
  EXPECT_FALSE(NormalQuantile(0.0).ok());
  EXPECT_FALSE(NormalQuantile(1.0).ok());
  EXPECT_FALSE(NormalQuantile(-0.1).ok());
  EXPECT_FALSE(NormalQuantile(std::numeric_limits<double>::quiet_NaN()).ok());
}

TEST(NormalQuantileTest, RoundTripGrid) {
  const int kPoints = 10000;
  const double lo = 1e-8, hi = 1.0 - 1e-8;
  for (int i = 0; i < kPoints; ++i) {
    const double p = lo + (hi - lo) * i / (kPoints - 1);
    ASSERT_OK_AND_ASSIGN(double q, NormalQuantile(p));
    EXPECT_LE(std::abs(NormalCdf(q) - p), 1e-12) << "p=" << p;
  }
}

TEST(NormalQuantileTest, Antisymmetric) {
  for (double p = 1e-6; p < 0.5; p *= 1.7) {
    ASSERT_OK_AND_ASSIGN(double a, NormalQuantile(p));
    ASSERT_OK_AND_ASSIGN(double b, NormalQuantile(1.0 - p));
    EXPECT_NEAR(a, -b, 1e-9 * std::abs(a)) << "p=" << p;
  }
}

}  // namespace
}  // namespace badgd
