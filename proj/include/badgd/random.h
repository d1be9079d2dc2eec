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

#ifndef BADGD_RANDOM_H_
#define BADGD_RANDOM_H_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace badgd {

// Engine used for every random stream in the library. Gaussian draws go through
// std::normal_distribution, which libstdc++ implements with the Marsaglia polar
// method; results are stable run to run on one platform but not across
// standard library implementations.
using Engine = std::mt19937_64;

// Derives an independent substream seed from a base seed, a stream index and a
// tag. Uses the SplitMix64 finalizer on each component in turn so that nearby
// (index, tag) pairs land far apart.
uint64_t MixSeed(uint64_t base, uint64_t index, uint64_t tag = 0);

// Draws a vector of i.i.d. N(0, sigma^2) entries.
Eigen::VectorXd SampleGaussianVector(int dim, double sigma, Engine& engine);

// Draws a point uniformly from the closed Euclidean ball of the given radius.
Eigen::VectorXd SampleUniformBall(int dim, double radius, Engine& engine);

}  // namespace badgd

#endif  // BADGD_RANDOM_H_
