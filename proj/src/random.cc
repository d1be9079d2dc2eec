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

namespace badgd {
namespace {

uint64_t SplitMix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t MixSeed(uint64_t base, uint64_t index, uint64_t tag) {
  uint64_t h = SplitMix64(base);
  h = SplitMix64(h ^ index);
  return SplitMix64(h ^ (tag * 0x2545f4914f6cdd1dULL));
}

Eigen::VectorXd SampleGaussianVector(int dim, double sigma, Engine& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd out(dim);
  for (int i = 0; i < dim; ++i) out[i] = sigma * normal(engine);
  return out;
}

Eigen::VectorXd SampleUniformBall(int dim, double radius, Engine& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd direction(dim);
  double norm = 0.0;
  // A Gaussian draw of exactly zero norm has probability zero, but retry anyway
  // so the direction is always well defined.
  while (norm == 0.0) {
    for (int i = 0; i < dim; ++i) direction[i] = normal(engine);
    norm = direction.norm();
  }
  const double r = radius * std::pow(uniform(engine), 1.0 / dim);
  return direction * (r / norm);
}

}  // namespace badgd
