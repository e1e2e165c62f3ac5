// Copyright 2026 The kfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KFREE_TESTS_SUPPORT_HPP_
#define KFREE_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "kfree/bounds.hpp"

namespace kfree::testing {

inline int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<int> RandomSubset(std::mt19937_64& rng, int ground, int size) {
  std::vector<int> all(ground);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

// Random family on N slots with 0..max_sets sets of size 1..max_size.
inline ForbiddenFamily RandomFamily(std::mt19937_64& rng, int ground,
                                    int max_sets, int max_size) {
  ForbiddenFamily family;
  family.ground_size = ground;
  const int count = UniformInt(rng, 0, max_sets);
  for (int i = 0; i < count; ++i) {
    family.sets.push_back(
        RandomSubset(rng, ground, UniformInt(rng, 1, std::min(max_size, ground))));
  }
  return family;
}

inline double BinomDouble(int n, int k) {
  if (k < 0 || k > n) return 0;
  double c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

struct RegularizationInput {
  int r = 2;
  std::vector<int> class_sizes;
  std::vector<std::vector<std::vector<int>>> neighborhoods;
  RegularizationParams params;
};

// Neighbourhoods drawn from small classes so later steps collide with H.
inline RegularizationInput RandomRegularizationInput(std::mt19937_64& rng) {
  RegularizationInput in;
  in.r = UniformInt(rng, 2, 3);
  in.params.dstar = UniformInt(rng, 3, 6);
  in.params.lambda = 1.0 / (1 << (in.r + 1));
  in.params.alpha = 0.5;
  const double c2_choices[] = {0.5, 1.0, 2.0, 4.0, 16.0};
  in.params.c2 = c2_choices[UniformInt(rng, 0, 4)];
  for (int j = 0; j < in.r; ++j) {
    in.class_sizes.push_back(in.params.dstar + UniformInt(rng, 0, 4));
  }
  const int steps = UniformInt(rng, 1, 30);
  for (int l = 0; l < steps; ++l) {
    std::vector<std::vector<int>> w;
    for (int j = 0; j < in.r; ++j) {
      w.push_back(RandomSubset(rng, in.class_sizes[j], in.params.dstar));
    }
    in.neighborhoods.push_back(std::move(w));
  }
  return in;
}

}  // namespace kfree::testing

#endif  // KFREE_TESTS_SUPPORT_HPP_
