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

#ifndef KFREE_GRAPH_HPP_
#define KFREE_GRAPH_HPP_

#include <array>
#include <bitset>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kfree {

// Neighbour sets are single machine words.
inline constexpr int kMaxVertices = 32;
inline constexpr int kMaxPairs = kMaxVertices * (kMaxVertices - 1) / 2;

using VertexSet = std::uint32_t;
using EdgeBits = std::bitset<kMaxPairs>;

// Unordered vertex pair with u < v, 0-based.
struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline int PairCount(int n) { return n * (n - 1) / 2; }

// Position of {u,v} in the canonical order (0,1),(0,2),...,(n-2,n-1).
int PairIndex(int n, int u, int v);
Edge PairAt(int n, int index);

// Simple graph on the vertex set {0..n-1}, n <= 32. Literal form uses
// 1-based vertices: "n;u-v,u-v,...".
class LabeledGraph {
 public:
  explicit LabeledGraph(int n = 0);

  static LabeledGraph FromEdges(int n, std::span<const Edge> edges);
  // Bit i of `mask` selects PairAt(n, i). Requires C(n,2) <= 64.
  static LabeledGraph FromMask(int n, std::uint64_t mask);
  static LabeledGraph FromEdgeBits(int n, const EdgeBits& bits);
  static LabeledGraph Complete(int n);
  static LabeledGraph Cycle(int n);
  static LabeledGraph Parse(std::string_view literal);

  int n() const { return n_; }
  int edge_count() const { return edge_count_; }
  VertexSet neighbors(int v) const { return adj_[v]; }
  int degree(int v) const;
  int max_degree() const;
  VertexSet all_vertices() const;

  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1u; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  std::vector<Edge> edges() const;
  EdgeBits edge_bits() const;
  std::uint64_t edge_mask() const;
  std::string ToLiteral() const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  void CheckPair(int u, int v) const;

  int n_;
  int edge_count_ = 0;
  std::array<VertexSet, kMaxVertices> adj_{};
};

// Assignment of {0..n-1} to classes {0..r-1}; classes may be empty.
class Partition {
 public:
  Partition(int r, std::vector<int> class_of);
  static Partition FromSizes(std::span<const int> sizes);

  int n() const { return static_cast<int>(class_of_.size()); }
  int r() const { return r_; }
  int class_of(int v) const { return class_of_[v]; }
  const std::vector<int>& colors() const { return class_of_; }
  const std::vector<int>& class_sizes() const { return sizes_; }
  VertexSet members(int c) const { return members_[c]; }

  // e(Pi): pairs joining different classes.
  std::int64_t cross_pairs() const;
  // e(Pi^c): pairs inside a class.
  std::int64_t inner_pairs() const;
  bool is_cross(int u, int v) const { return class_of_[u] != class_of_[v]; }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.r_ == b.r_ && a.class_of_ == b.class_of_;
  }

 private:
  int r_;
  std::vector<int> class_of_;
  std::vector<int> sizes_;
  std::vector<VertexSet> members_;
};

// Balance band (1/r - gamma) n <= |V_i| <= (1/r + gamma) n.
struct BalanceSpec {
  explicit BalanceSpec(double gamma_value, int r);
  double gamma;
};

bool ContainsClique(const LabeledGraph& g, int k);
std::uint64_t CountCliques(const LabeledGraph& g, int k);
// True iff some k-clique of g + uv contains both u and v.
bool HasCliqueThrough(const LabeledGraph& g, int u, int v, int k);

// Proper r-coloring with the lexicographically least colour vector, or
// nullopt when none exists.
std::optional<Partition> FindRColoring(const LabeledGraph& g, int r);
bool IsRColorable(const LabeledGraph& g, int r);

// Edges of g with both endpoints in one class of p.
int MiscoloredEdges(const LabeledGraph& g, const Partition& p);

struct MiscoloredMinimum {
  int miscolored;
  Partition partition;
};
// Exhaustive minimum over all r^n colour vectors (guard r^n <= 1e8); ties go
// to the lexicographically least colour vector.
MiscoloredMinimum MinMiscoloredExact(const LabeledGraph& g, int r);

// Single-vertex moves until no vertex has more neighbours in its own class
// than in some other class.
Partition LocalMinPartition(const LabeledGraph& g, const Partition& start);
bool IsUnfriendly(const LabeledGraph& g, const Partition& p);
int DegreeInto(const LabeledGraph& g, int v, VertexSet set);

bool IsBalanced(const Partition& p, const BalanceSpec& band);

// Set partitions of {0..n-1} into at most r blocks, each exactly once as a
// restricted growth string (vertex 0 in class 0, new classes opened in
// increasing order). Guard r^n <= 1e8.
void ForEachPartition(int n, int r,
                      const std::function<void(const std::vector<int>&)>& fn);
std::vector<Partition> EnumeratePartitions(int n, int r);

// Throws a size error when r^n exceeds `limit`.
void CheckColoringBudget(int n, int r, double limit = 1e8);

}  // namespace kfree

#endif  // KFREE_GRAPH_HPP_
