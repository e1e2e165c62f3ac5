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

#ifndef KFREE_SAMPLER_HPP_
#define KFREE_SAMPLER_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <vector>

#include "kfree/graph.hpp"

namespace kfree {

inline constexpr const char* kRngAlgorithm = "mt19937_64+lemire";

// Deterministic generator: mt19937_64 words with Lemire's unbiased bounded
// reduction. The stream for a given seed is frozen.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform integer in [0, bound). Requires bound > 0.
  std::uint64_t Below(std::uint64_t bound);

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);
// Seed of replica `index`; replica streams are independent of chain count.
std::uint64_t ReplicaSeed(std::uint64_t seed, int index);

struct ChainConfig {
  int n = 0;
  int r = 2;
  int m = 0;
  std::uint64_t seed = 0;
  std::int64_t burn_in = 0;
  std::int64_t thin = 1;  // 0 is treated as 1
  int chains = 1;
  int jobs = 0;  // worker threads; 0 = hardware concurrency
};

// Throws on n > 32, negative counts, r < 1, and (infeasible) m > ex(n,K_{r+1}).
void ValidateChainConfig(const ChainConfig& cfg);

struct ChainState {
  int r = 2;
  LabeledGraph graph;
  Rng rng;
  std::uint64_t steps_taken = 0;
  std::uint64_t accepted_moves = 0;
  std::vector<int> present;  // pair indices of edges
  std::vector<int> absent;   // pair indices of non-edges
};

// Uniform m-subset of the edges of T_r(n), seeded by ReplicaSeed(seed, replica).
ChainState InitChain(const ChainConfig& cfg, int replica = 0);

// One edge-swap move: a uniform edge leaves, a uniform non-edge enters, and
// the move is kept iff the result is still K_{r+1}-free.
void Step(ChainState& state);

// Throws if the edge count drifted or a K_{r+1} appeared.
void CheckChainInvariants(const ChainState& state);

struct RPartiteEstimate {
  double estimate = 0;
  double stderr_value = 0;
  double acceptance_rate = 0;
  std::int64_t samples = 0;
  bool caveat = false;  // m > 0.9 ex(n, K_{r+1})
};

// `total_steps` is the length of every chain. With a dump stream, writes one
// "step,is_rcol,triangles,edges_hash" line per recorded sample.
RPartiteEstimate EstimateRPartite(const ChainConfig& cfg,
                                  std::int64_t total_steps,
                                  std::ostream* dump = nullptr);

enum class TvStatistic {
  kColorTriangles,           // (is r-colorable, triangle count)
  kColorTrianglesMaxDegree,  // the above plus the maximum degree
};

using StatisticDistribution = std::map<std::int64_t, double>;

std::int64_t StatisticKey(const LabeledGraph& g, int r, TvStatistic statistic);

// Law of the statistic under the uniform measure on F_{n,m}(K_{r+1}). n <= 7.
StatisticDistribution ExactStatisticDistribution(int n, int r, int m,
                                                 TvStatistic statistic);

struct TvResult {
  double tv = 0;
  double stderr_value = 0;
};

TvResult TvDiagnostic(const ChainConfig& cfg, std::int64_t total_steps,
                      TvStatistic statistic = TvStatistic::kColorTriangles);

// FNV-1a over the little-endian edge mask words.
std::uint64_t EdgesHash(const LabeledGraph& g);

}  // namespace kfree

#endif  // KFREE_SAMPLER_HPP_
