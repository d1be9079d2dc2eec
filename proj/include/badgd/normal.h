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

// Standard normal distribution functions.
//
// erfc and the scaled erfcx(x) = exp(x^2) erfc(x) use W. J. Cody's rational
// Chebyshev approximations ("Rational Chebyshev approximations for the error
// function", Math. Comp. 1969), the same coefficients as netlib specfun CALERF.
// Against the C library's erfc the normal cdf built on them agrees to within
// 1e-15 absolute over the whole real line; relative accuracy in the lower tail
// is close to machine precision because erfc is evaluated directly rather than
// as 1 - erf.

#ifndef BADGD_NORMAL_H_
#define BADGD_NORMAL_H_

#include "absl/status/statusor.h"

namespace badgd {

double Erfc(double x);
double Erfcx(double x);

// Phi(x).
double NormalCdf(double x);

// log Phi(x), finite for every finite x (no underflow in the lower tail).
double LogNormalCdf(double x);

// Standard normal density.
double NormalPdf(double x);

// Phi^{-1}(p) for p in (0, 1). Acklam's rational approximation seeds a
// Newton iteration on NormalCdf; |NormalCdf(q) - p| <= 1e-12 after refinement.
absl::StatusOr<double> NormalQuantile(double p);

}  // namespace badgd

#endif  // BADGD_NORMAL_H_
