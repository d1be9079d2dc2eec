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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace badgd {
namespace {

enum class ErfVariant { kErfc, kErfcx };

constexpr std::array<double, 5> kA = {
    3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
    3.20937758913846947e03, 1.85777706184603153e-1};
constexpr std::array<double, 4> kB = {
    2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03,
    2.84423683343917062e03};
constexpr std::array<double, 9> kC = {
    5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
    2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
    2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {
    1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
    1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
    3.43936767414372164e03, 1.23033935480374942e03};
constexpr std::array<double, 6> kP = {
    3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
    1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kQ = {
    2.56852019228982242e00, 1.87295284992346047e00, 5.27905102951428412e-1,
    6.05183413124413191e-2, 2.33520497626869185e-3};

constexpr double kSqrtPiInv = 5.6418958354775628695e-1;  // 1/sqrt(pi)
constexpr double kThresh = 0.46875;
// IEEE double machine constants from CALERF.
constexpr double kXneg = -26.628;
constexpr double kXsmall = 1.11e-16;
constexpr double kXbig = 26.543;
constexpr double kXhuge = 6.71e7;
constexpr double kXmax = 2.53e307;

// exp(-y^2) split as exp(-ysq^2) exp(-del) to keep the leading term exact.
double ExpMinusSquare(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

double Calerf(double x, ErfVariant variant) {
  const double y = std::abs(x);
  double result;
  if (y <= kThresh) {
    const double ysq = y > kXsmall ? y * y : 0.0;
    double xnum = kA[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + kA[i]) * ysq;
      xden = (xden + kB[i]) * ysq;
    }
    result = 1.0 - x * (xnum + kA[3]) / (xden + kB[3]);
    if (variant == ErfVariant::kErfcx) result *= std::exp(ysq);
    return result;
  }
  if (y <= 4.0) {
    double xnum = kC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kC[i]) * y;
      xden = (xden + kD[i]) * y;
    }
    result = (xnum + kC[7]) / (xden + kD[7]);
    if (variant != ErfVariant::kErfcx) result *= ExpMinusSquare(y);
  } else {
    result = 0.0;
    bool done = false;
    if (y >= kXbig) {
      if (variant != ErfVariant::kErfcx || y >= kXmax) {
        done = true;
      } else if (y >= kXhuge) {
        result = kSqrtPiInv / y;
        done = true;
      }
    }
    if (!done) {
      const double ysq = 1.0 / (y * y);
      double xnum = kP[5] * ysq;
      double xden = ysq;
      for (int i = 0; i < 4; ++i) {
        xnum = (xnum + kP[i]) * ysq;
        xden = (xden + kQ[i]) * ysq;
      }
      result = ysq * (xnum + kP[4]) / (xden + kQ[4]);
      result = (kSqrtPiInv - result) / y;
      if (variant != ErfVariant::kErfcx) result *= ExpMinusSquare(y);
    }
  }
  // Reflect negative arguments.
  if (x < 0.0) {
    if (variant == ErfVariant::kErfc) {
      result = 2.0 - result;
    } else if (x < kXneg) {
      result = std::numeric_limits<double>::infinity();
    } else {
      const double ysq = std::trunc(x * 16.0) / 16.0;
      const double del = (x - ysq) * (x + ysq);
      const double e = std::exp(ysq * ysq) * std::exp(del);
      result = (e + e) - result;
    }
  }
  return result;
}

// Acklam's rational approximation to the lower half of the normal quantile,
// relative error below 1.15e-9.
double AcklamLowerQuantile(double p) {
  constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                       -2.759285104469687e+02, 1.383577518672690e+02,
                                       -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                       -1.556989798598866e+02, 6.680131188771972e+01,
                                       -1.328068155288572e+01};
  constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                       -2.400758277161838e+00, -2.549732539343734e+00,
                                       4.374664141464968e+00,  2.938163982698783e+00};
  constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                       2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double Erfc(double x) {
  if (std::isnan(x)) return x;
  return Calerf(x, ErfVariant::kErfc);
}

double Erfcx(double x) {
  if (std::isnan(x)) return x;
  return Calerf(x, ErfVariant::kErfcx);
}

double NormalCdf(double x) {
  return 0.5 * Erfc(-x / std::numbers::sqrt2);
}

double LogNormalCdf(double x) {
  if (x > 0.0) return std::log1p(-0.5 * Erfc(x / std::numbers::sqrt2));
  if (x > -5.0) return std::log(NormalCdf(x));
  // Phi(x) = erfcx(z) exp(-z^2) / 2 with z = -x / sqrt(2).
  const double z = -x / std::numbers::sqrt2;
  return std::log(0.5 * Erfcx(z)) - z * z;
}

double NormalPdf(double x) {
  return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

absl::StatusOr<double> NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("quantile argument ", p, " is outside (0, 1)"));
  }
  // 1 - p is exact for p >= 0.5, so reflect into the lower half where the
  // cdf has full relative precision.
  if (p > 0.5) {
    absl::StatusOr<double> q = NormalQuantile(1.0 - p);
    if (!q.ok()) return q;
    return -*q;
  }
  double x = AcklamLowerQuantile(p);
  for (int iter = 0; iter < 8; ++iter) {
    const double step = (NormalCdf(x) - p) / NormalPdf(x);
    x -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) break;
  }
  return x;
}

}  // namespace badgd
