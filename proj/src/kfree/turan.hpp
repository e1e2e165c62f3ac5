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

#ifndef KFREE_TURAN_HPP_
#define KFREE_TURAN_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "kfree/graph.hpp"

namespace kfree {

// Part sizes of the balanced r-partition of n: the first n mod r parts get
// ceil(n/r) vertices.
std::vector<int> BalancedSizes(int n, int r);

// ex(n, K_k) = e(T_{k-1}(n)). Requires k >= 2.
std::int64_t ExTuran(int n, int k);

// T_r(n) with vertex v in class v mod r.
LabeledGraph TuranGraph(int n, int r);

// Class sizes of a complete multipartite graph, kept sorted ascending.
class MultipartiteHost {
 public:
  explicit MultipartiteHost(std::vector<int> sizes);

  int r() const { return static_cast<int>(sizes_.size()); }
  int n() const;
  const std::vector<int>& sizes() const { return sizes_; }
  std::int64_t edge_count() const;
  // Classes occupy consecutive vertex ranges in sorted order.
  Partition partition() const;
  LabeledGraph graph() const;

 private:
  std::vector<int> sizes_;
};

// ex(K(n_1..n_r), K_r) = e(K(n_1..n_r)) - n_1 n_2. Only forbid_k == r is
// supported.
std::int64_t ExMultipartite(const MultipartiteHost& host, int forbid_k);

// The host minus every edge between its two smallest classes.
LabeledGraph ExtremalMultipartiteGraph(const MultipartiteHost& host);

enum class SearchMode { kBranchAndBound, kExhaustive };

// Largest K_k-free subgraph of `host`, by edge count. The branch-and-bound
// mode handles up to 24 host edges; exhaustive mode up to 13.
int BruteForceEx(const LabeledGraph& host, int k,
                 SearchMode mode = SearchMode::kBranchAndBound);

}  // namespace kfree

#endif  // KFREE_TURAN_HPP_
