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

#include "kfree/turan.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "kfree/errors.hpp"

namespace kfree {
namespace {

class KFreeSearch {
 public:
  KFreeSearch(const LabeledGraph& host, int k)
      : edges_(host.edges()), k_(k), current_(host.n()) {}

  int Run() {
    Descend(0, 0);
    return best_;
  }

 private:
  void Descend(std::size_t index, int taken) {
    const int remaining = static_cast<int>(edges_.size() - index);
    if (taken + remaining <= best_) return;
    if (index == edges_.size()) {
      best_ = taken;
      return;
    }
    const Edge e = edges_[index];
    if (!HasCliqueThrough(current_, e.u, e.v, k_)) {
      current_.add_edge(e.u, e.v);
      Descend(index + 1, taken + 1);
      current_.remove_edge(e.u, e.v);
    }
    Descend(index + 1, taken);
  }

  std::vector<Edge> edges_;
  int k_;
  LabeledGraph current_;
  int best_ = -1;
};

}  // namespace

std::vector<int> BalancedSizes(int n, int r) {
  std::vector<int> sizes(r, n / r);
  for (int i = 0; i < n % r; ++i) ++sizes[i];
  return sizes;
}

std::int64_t ExTuran(int n, int k) {
  Require(k >= 2, ErrorKind::kDomain,
          "forbidden clique order k must be >= 2 (got k=" + std::to_string(k) +
              ")");
  Require(n >= 0, ErrorKind::kDomain, "n must be >= 0");
  const std::int64_t n64 = n;
  std::int64_t inner = 0;
  for (int s : BalancedSizes(n, k - 1)) inner += std::int64_t{s} * (s - 1) / 2;
  return n64 * (n64 - 1) / 2 - inner;
}

LabeledGraph TuranGraph(int n, int r) {
  Require(r >= 1, ErrorKind::kDomain, "r must be >= 1");
  LabeledGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (u % r != v % r) g.add_edge(u, v);
    }
  }
  return g;
}

MultipartiteHost::MultipartiteHost(std::vector<int> sizes)
    : sizes_(std::move(sizes)) {
  Require(sizes_.size() >= 2, ErrorKind::kDomain,
          "a multipartite host needs r >= 2 classes");
  for (int s : sizes_) {
    Require(s >= 1, ErrorKind::kDomain, "class sizes must be >= 1");
  }
  std::sort(sizes_.begin(), sizes_.end());
}

int MultipartiteHost::n() const {
  return std::accumulate(sizes_.begin(), sizes_.end(), 0);
}

std::int64_t MultipartiteHost::edge_count() const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    for (std::size_t j = i + 1; j < sizes_.size(); ++j) {
      total += std::int64_t{sizes_[i]} * sizes_[j];
    }
  }
  return total;
}

Partition MultipartiteHost::partition() const {
  return Partition::FromSizes(sizes_);
}

LabeledGraph MultipartiteHost::graph() const {
  const Partition p = partition();
  LabeledGraph g(p.n());
  for (int u = 0; u < p.n(); ++u) {
    for (int v = u + 1; v < p.n(); ++v) {
      if (p.is_cross(u, v)) g.add_edge(u, v);
    }
  }
  return g;
}

std::int64_t ExMultipartite(const MultipartiteHost& host, int forbid_k) {
  Require(forbid_k == host.r(), ErrorKind::kUnsupported,
          "ex_multipartite covers only K_r inside an r-partite host (r=" +
              std::to_string(host.r()) +
              ", forbid_k=" + std::to_string(forbid_k) + ")");
  return host.edge_count() -
         std::int64_t{host.sizes()[0]} * host.sizes()[1];
}

LabeledGraph ExtremalMultipartiteGraph(const MultipartiteHost& host) {
  const Partition p = host.partition();
  LabeledGraph g = host.graph();
  // Sorted ascending, so classes 0 and 1 are the two smallest.
  for (VertexSet a = p.members(0); a != 0; a &= a - 1) {
    for (VertexSet b = p.members(1); b != 0; b &= b - 1) {
      g.remove_edge(std::countr_zero(a), std::countr_zero(b));
    }
  }
  return g;
}

int BruteForceEx(const LabeledGraph& host, int k, SearchMode mode) {
  Require(k >= 2, ErrorKind::kDomain, "k must be >= 2");
  if (mode == SearchMode::kExhaustive) {
    Require(host.edge_count() <= 13, ErrorKind::kSize,
            "exhaustive search is limited to 13 host edges (got " +
                std::to_string(host.edge_count()) + ")");
    const std::vector<Edge> edges = host.edges();
    int best = 0;
    for (std::uint32_t subset = 0; subset < (1u << edges.size()); ++subset) {
      const int count = std::popcount(subset);
      if (count <= best) continue;
      LabeledGraph g(host.n());
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if ((subset >> i) & 1u) g.add_edge(edges[i].u, edges[i].v);
      }
      if (!ContainsClique(g, k)) best = count;
    }
    return best;
  }
  Require(host.edge_count() <= 24, ErrorKind::kSize,
          "branch-and-bound search is limited to 24 host edges (got " +
              std::to_string(host.edge_count()) + ")");
  return KFreeSearch(host, k).Run();
}

}  // namespace kfree
