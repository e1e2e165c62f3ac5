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

#include "kfree/sampler.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "kfree/errors.hpp"
#include "kfree/parallel.hpp"
#include "kfree/turan.hpp"

namespace kfree {
namespace {

#ifdef NDEBUG
constexpr std::uint64_t kInvariantPeriod = std::uint64_t{1} << 12;
#else
constexpr std::uint64_t kInvariantPeriod = 1;
#endif

constexpr double kCaveatFraction = 0.9;
constexpr int kBatches = 10;

// Between-replica standard error of a mean; a single replica falls back to
// batch means over its own sample path.
double StandardError(const std::vector<double>& means) {
  const std::size_t k = means.size();
  if (k < 2) return 0;
  const double mean = std::accumulate(means.begin(), means.end(), 0.0) / k;
  double ss = 0;
  for (double x : means) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (k - 1) / k);
}

std::vector<double> BatchMeans(const std::vector<std::uint8_t>& samples) {
  std::vector<double> means;
  const std::size_t size = samples.size() / kBatches;
  if (size == 0) return means;
  for (int b = 0; b < kBatches; ++b) {
    double sum = 0;
    for (std::size_t i = b * size; i < (b + 1) * size; ++i) sum += samples[i];
    means.push_back(sum / size);
  }
  return means;
}

struct ChainRun {
  std::vector<std::uint8_t> colorable;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::uint64_t accepted = 0;
  std::uint64_t steps = 0;
  std::string dump;
};

enum class Record { kColorability, kStatistic };

ChainRun RunChain(const ChainConfig& cfg, int replica, std::int64_t total_steps,
                  Record record, TvStatistic statistic, bool want_dump) {
  ChainState state = InitChain(cfg, replica);
  const std::int64_t thin = std::max<std::int64_t>(cfg.thin, 1);
  ChainRun run;
  bool colorable = IsRColorable(state.graph, cfg.r);
  std::uint64_t seen_accepts = state.accepted_moves;
  for (std::int64_t t = 1; t <= total_steps; ++t) {
    Step(state);
    if (t <= cfg.burn_in || (t - cfg.burn_in) % thin != 0) continue;
    if (state.accepted_moves != seen_accepts) {
      seen_accepts = state.accepted_moves;
      if (record == Record::kColorability) {
        colorable = IsRColorable(state.graph, cfg.r);
      }
    }
    if (record == Record::kColorability) {
      run.colorable.push_back(colorable ? 1 : 0);
      if (want_dump) {
        run.dump += std::to_string(t) + ',' + (colorable ? '1' : '0') + ',' +
                    std::to_string(CountCliques(state.graph, 3)) + ',' +
                    std::to_string(EdgesHash(state.graph)) + '\n';
      }
    } else {
      ++run.histogram[StatisticKey(state.graph, cfg.r, statistic)];
    }
  }
  run.accepted = state.accepted_moves;
  run.steps = state.steps_taken;
  return run;
}

std::vector<ChainRun> RunChains(const ChainConfig& cfg,
                                std::int64_t total_steps, Record record,
                                TvStatistic statistic, bool want_dump) {
  ValidateChainConfig(cfg);
  Require(total_steps >= 0, ErrorKind::kDomain, "steps must be >= 0");
  Require(total_steps > cfg.burn_in, ErrorKind::kDomain,
          "steps=" + std::to_string(total_steps) +
              " leaves no samples after burn-in=" +
              std::to_string(cfg.burn_in));
  std::vector<ChainRun> runs(cfg.chains);
  ParallelFor(cfg.chains, cfg.jobs, [&](int c) {
    runs[c] = RunChain(cfg, c, total_steps, record, statistic, want_dump);
  });
  return runs;
}

}  // namespace

std::uint64_t Rng::Below(std::uint64_t bound) {
  Require(bound > 0, ErrorKind::kDomain, "Rng::Below needs a positive bound");
  using u128 = unsigned __int128;
  u128 product = static_cast<u128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<u128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t ReplicaSeed(std::uint64_t seed, int index) {
  return SplitMix64(SplitMix64(seed) + static_cast<std::uint64_t>(index));
}

void ValidateChainConfig(const ChainConfig& cfg) {
  Require(cfg.n >= 1 && cfg.n <= kMaxVertices, ErrorKind::kSize,
          "n=" + std::to_string(cfg.n) + " must lie in [1, 32]");
  Require(cfg.r >= 1, ErrorKind::kDomain, "r must be >= 1");
  Require(cfg.m >= 0, ErrorKind::kDomain, "m must be >= 0");
  Require(cfg.burn_in >= 0, ErrorKind::kDomain, "burn-in must be >= 0");
  Require(cfg.thin >= 0, ErrorKind::kDomain, "thin must be >= 0");
  Require(cfg.chains >= 1, ErrorKind::kDomain, "chains must be >= 1");
  const std::int64_t ex = ExTuran(cfg.n, cfg.r + 1);
  Require(cfg.m <= ex, ErrorKind::kInfeasible,
          "m=" + std::to_string(cfg.m) + " exceeds ex(n,K_{r+1})=" +
              std::to_string(ex) + "; no K_{r+1}-free graph has that many edges");
}

ChainState InitChain(const ChainConfig& cfg, int replica) {
  ValidateChainConfig(cfg);
  ChainState state;
  state.r = cfg.r;
  state.rng = Rng(ReplicaSeed(cfg.seed, replica));
  const LabeledGraph host = TuranGraph(cfg.n, cfg.r);
  std::vector<Edge> pool = host.edges();
  for (int i = 0; i < cfg.m; ++i) {
    const auto j = i + state.rng.Below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  state.graph = LabeledGraph(cfg.n);
  for (int i = 0; i < cfg.m; ++i) state.graph.add_edge(pool[i].u, pool[i].v);
  for (int p = 0; p < PairCount(cfg.n); ++p) {
    const Edge e = PairAt(cfg.n, p);
    (state.graph.has_edge(e.u, e.v) ? state.present : state.absent).push_back(p);
  }
  return state;
}

void Step(ChainState& state) {
  ++state.steps_taken;
  if (!state.present.empty() && !state.absent.empty()) {
    const int n = state.graph.n();
    const auto i = state.rng.Below(state.present.size());
    const auto j = state.rng.Below(state.absent.size());
    const Edge out = PairAt(n, state.present[i]);
    const Edge in = PairAt(n, state.absent[j]);
    state.graph.remove_edge(out.u, out.v);
    if (HasCliqueThrough(state.graph, in.u, in.v, state.r + 1)) {
      state.graph.add_edge(out.u, out.v);
    } else {
      state.graph.add_edge(in.u, in.v);
      std::swap(state.present[i], state.absent[j]);
      ++state.accepted_moves;
    }
  }
  if (state.steps_taken % kInvariantPeriod == 0) CheckChainInvariants(state);
}

void CheckChainInvariants(const ChainState& state) {
  if (state.graph.edge_count() != static_cast<int>(state.present.size()) ||
      ContainsClique(state.graph, state.r + 1)) {
    Fail(ErrorKind::kCorrupt, "chain invariant violated at step " +
                                  std::to_string(state.steps_taken));
  }
}

RPartiteEstimate EstimateRPartite(const ChainConfig& cfg,
                                  std::int64_t total_steps,
                                  std::ostream* dump) {
  const std::vector<ChainRun> runs =
      RunChains(cfg, total_steps, Record::kColorability,
                TvStatistic::kColorTriangles, dump != nullptr);
  RPartiteEstimate result;
  std::vector<double> chain_means;
  double hits = 0;
  std::uint64_t accepted = 0;
  std::uint64_t steps = 0;
  for (std::size_t c = 0; c < runs.size(); ++c) {
    const ChainRun& run = runs[c];
    const double sum =
        std::accumulate(run.colorable.begin(), run.colorable.end(), 0.0);
    hits += sum;
    result.samples += static_cast<std::int64_t>(run.colorable.size());
    chain_means.push_back(sum / run.colorable.size());
    accepted += run.accepted;
    steps += run.steps;
    if (dump != nullptr) *dump << "# chain=" << c << '\n' << run.dump;
  }
  result.estimate = hits / result.samples;
  result.stderr_value = runs.size() >= 2
                            ? StandardError(chain_means)
                            : StandardError(BatchMeans(runs[0].colorable));
  result.acceptance_rate = steps == 0 ? 0.0 : static_cast<double>(accepted) / steps;
  result.caveat = cfg.m > kCaveatFraction * ExTuran(cfg.n, cfg.r + 1);
  return result;
}

std::int64_t StatisticKey(const LabeledGraph& g, int r,
                          TvStatistic statistic) {
  std::int64_t key = IsRColorable(g, r) ? 1 : 0;
  key = key * 10000 + static_cast<std::int64_t>(CountCliques(g, 3));
  if (statistic == TvStatistic::kColorTrianglesMaxDegree) {
    key = key * 100 + g.max_degree();
  }
  return key;
}

StatisticDistribution ExactStatisticDistribution(int n, int r, int m,
                                                 TvStatistic statistic) {
  Require(n >= 1 && n <= 7, ErrorKind::kSize,
          "exact statistic law needs n <= 7 (got n=" + std::to_string(n) + ")");
  const int pairs = PairCount(n);
  Require(m >= 0 && m <= pairs, ErrorKind::kDomain,
          "m=" + std::to_string(m) + " is outside [0, C(n,2)]");
  std::map<std::int64_t, std::uint64_t> counts;
  std::uint64_t total = 0;
  const std::uint64_t limit = std::uint64_t{1} << pairs;
  if (m == 0) {
    counts[StatisticKey(LabeledGraph(n), r, statistic)] = 1;
    total = 1;
  } else {
    // Gosper's hack walks the m-bit masks in increasing order.
    for (std::uint64_t mask = (std::uint64_t{1} << m) - 1; mask < limit;) {
      const LabeledGraph g = LabeledGraph::FromMask(n, mask);
      if (!ContainsClique(g, r + 1)) {
        ++counts[StatisticKey(g, r, statistic)];
        ++total;
      }
      const std::uint64_t low = mask & -mask;
      const std::uint64_t ripple = mask + low;
      mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
  }
  Require(total > 0, ErrorKind::kInfeasible,
          "no K_{r+1}-free graph has m=" + std::to_string(m) + " edges");
  StatisticDistribution law;
  for (const auto& [key, count] : counts) {
    law[key] = static_cast<double>(count) / total;
  }
  return law;
}

TvResult TvDiagnostic(const ChainConfig& cfg, std::int64_t total_steps,
                      TvStatistic statistic) {
  Require(cfg.n <= 7, ErrorKind::kSize,
          "tv diagnostic needs n <= 7 (got n=" + std::to_string(cfg.n) + ")");
  ValidateChainConfig(cfg);
  const StatisticDistribution exact =
      ExactStatisticDistribution(cfg.n, cfg.r, cfg.m, statistic);
  const std::vector<ChainRun> runs =
      RunChains(cfg, total_steps, Record::kStatistic, statistic, false);

  auto distance = [&](const std::map<std::int64_t, std::uint64_t>& hist) {
    std::uint64_t total = 0;
    for (const auto& [key, count] : hist) total += count;
    double sum = 0;
    for (const auto& [key, p] : exact) {
      const auto it = hist.find(key);
      const double q =
          it == hist.end() ? 0.0 : static_cast<double>(it->second) / total;
      sum += std::abs(p - q);
    }
    for (const auto& [key, count] : hist) {
      if (!exact.count(key)) sum += static_cast<double>(count) / total;
    }
    return sum / 2;
  };

  std::map<std::int64_t, std::uint64_t> pooled;
  std::vector<double> per_chain;
  for (const ChainRun& run : runs) {
    for (const auto& [key, count] : run.histogram) pooled[key] += count;
    per_chain.push_back(distance(run.histogram));
  }
  return {distance(pooled), StandardError(per_chain)};
}

std::uint64_t EdgesHash(const LabeledGraph& g) {
  const EdgeBits bits = g.edge_bits();
  const int pairs = PairCount(g.n());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (int byte = 0; byte * 8 < pairs; ++byte) {
    unsigned value = 0;
    for (int b = 0; b < 8 && byte * 8 + b < pairs; ++b) {
      if (bits[byte * 8 + b]) value |= 1u << b;
    }
    hash ^= value;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace kfree
