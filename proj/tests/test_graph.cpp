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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "kfree/errors.hpp"
#include "kfree/graph.hpp"
#include "kfree/turan.hpp"

namespace kfree {
namespace {

LabeledGraph Petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({i, i + 5});
    edges.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return LabeledGraph::FromEdges(10, edges);
}

bool Proper(const LabeledGraph& g, const Partition& p) {
  return MiscoloredEdges(g, p) == 0;
}

// Least proper colour vector over all r^n vectors, if any.
std::optional<std::vector<int>> LeastProperVector(const LabeledGraph& g, int r) {
  const int n = g.n();
  std::vector<int> colors(n, 0);
  while (true) {
    bool ok = true;
    for (const Edge& e : g.edges()) ok = ok && colors[e.u] != colors[e.v];
    if (ok) return colors;
    int v = n - 1;
    while (v >= 0 && ++colors[v] == r) colors[v--] = 0;
    if (v < 0) return std::nullopt;
  }
}

TEST_CASE("pair indexing round-trips") {
  for (int n = 2; n <= 9; ++n) {
    for (int i = 0; i < PairCount(n); ++i) {
      const Edge e = PairAt(n, i);
      CHECK(e.u < e.v);
      CHECK(PairIndex(n, e.u, e.v) == i);
      CHECK(PairIndex(n, e.v, e.u) == i);
    }
  }
  CHECK(PairAt(4, 0) == Edge{0, 1});
  CHECK(PairAt(4, 3) == Edge{1, 2});
}

TEST_CASE("graph literal parsing") {
  const LabeledGraph g = LabeledGraph::Parse("4;1-2,2-3,3-4");
  CHECK(g.n() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(!g.has_edge(0, 3));
  CHECK(LabeledGraph::Parse(g.ToLiteral()) == g);
  CHECK(LabeledGraph::Parse("3;").edge_count() == 0);
  CHECK_THROWS_AS(LabeledGraph::Parse("3;1-2,2-1"), Error);
  CHECK_THROWS_AS(LabeledGraph::Parse("3;1-1"), Error);
  CHECK_THROWS_AS(LabeledGraph::Parse("3;1-4"), Error);
  CHECK_THROWS_AS(LabeledGraph::Parse("33;"), Error);
  CHECK_THROWS_AS(LabeledGraph::Parse("x"), Error);
}

TEST_CASE("degree sum and adjacency symmetry") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 20);
    LabeledGraph g(n);
    for (int i = 0; i < PairCount(n); ++i) {
      if (rng() % 3 == 0) {
        const Edge e = PairAt(n, i);
        g.add_edge(e.u, e.v);
      }
    }
    int degree_sum = 0;
    for (int v = 0; v < n; ++v) {
      degree_sum += g.degree(v);
      CHECK(!g.has_edge(v, v));
      for (int w = 0; w < n; ++w) CHECK(g.has_edge(v, w) == g.has_edge(w, v));
    }
    CHECK(degree_sum == 2 * g.edge_count());
    CHECK(static_cast<int>(g.edge_bits().count()) == g.edge_count());
    CHECK(LabeledGraph::FromEdgeBits(n, g.edge_bits()) == g);
  }
}

TEST_CASE("clique detection examples") {
  CHECK(ContainsClique(LabeledGraph::Complete(4), 4));
  CHECK(!ContainsClique(LabeledGraph::Parse("5;1-2,3-4"), 3));
  CHECK(!ContainsClique(LabeledGraph::Cycle(5), 3));
  CHECK(!ContainsClique(LabeledGraph::Complete(3), 4));
  CHECK(CountCliques(LabeledGraph::Complete(5), 3) == 10);
  CHECK(CountCliques(TuranGraph(4, 2), 3) == 0);
  CHECK(CountCliques(TuranGraph(6, 3), 3) == 8);
}

TEST_CASE("clique predicates agree with counts on all graphs with n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t mask = 0; mask < (1ULL << PairCount(n)); ++mask) {
      const LabeledGraph g = LabeledGraph::FromMask(n, mask);
      for (int k = 1; k <= n; ++k) {
        REQUIRE(ContainsClique(g, k) == (CountCliques(g, k) > 0));
      }
    }
  }
}

TEST_CASE("clique through a pair") {
  LabeledGraph g = LabeledGraph::Parse("4;1-3,2-3,1-4,2-4,3-4");
  CHECK(HasCliqueThrough(g, 0, 1, 3));
  CHECK(HasCliqueThrough(g, 0, 1, 4));
  g.remove_edge(2, 3);
  CHECK(HasCliqueThrough(g, 0, 1, 3));
  CHECK(!HasCliqueThrough(g, 0, 1, 4));
}

TEST_CASE("colourability examples") {
  CHECK(!FindRColoring(LabeledGraph::Cycle(5), 2));
  const auto c5 = FindRColoring(LabeledGraph::Cycle(5), 3);
  REQUIRE(c5);
  CHECK(Proper(LabeledGraph::Cycle(5), *c5));
  const LabeledGraph petersen = Petersen();
  const auto witness = FindRColoring(petersen, 3);
  REQUIRE(witness);
  CHECK(Proper(petersen, *witness));
  CHECK(!FindRColoring(petersen, 2));
}

TEST_CASE("colouring witness is the least proper colour vector") {
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t mask = 0; mask < (1ULL << PairCount(n)); ++mask) {
      const LabeledGraph g = LabeledGraph::FromMask(n, mask);
      for (int r = 1; r <= 3; ++r) {
        const auto found = FindRColoring(g, r);
        const auto least = LeastProperVector(g, r);
        REQUIRE(found.has_value() == least.has_value());
        if (found) REQUIRE(found->colors() == *least);
        REQUIRE(IsRColorable(g, r) == found.has_value());
      }
    }
  }
}

TEST_CASE("miscoloured edges") {
  const Partition two = Partition(2, {0, 1, 0, 1});
  CHECK(MiscoloredEdges(LabeledGraph::Cycle(4), two) == 0);
  CHECK(MiscoloredEdges(LabeledGraph::Parse("4;1-3"), two) == 1);
  CHECK(MiscoloredEdges(LabeledGraph::Complete(3), Partition(2, {0, 0, 0})) == 3);
}

TEST_CASE("exact miscolouring minimum") {
  CHECK(MinMiscoloredExact(LabeledGraph::Cycle(6), 2).miscolored == 0);
  CHECK(MinMiscoloredExact(LabeledGraph::Complete(3), 2).miscolored == 1);
  CHECK(MinMiscoloredExact(LabeledGraph::Complete(4), 2).miscolored == 2);
  CHECK_THROWS_AS(MinMiscoloredExact(LabeledGraph(32), 3), Error);
}

TEST_CASE("colourable iff zero miscoloured edges, all graphs n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t mask = 0; mask < (1ULL << PairCount(n)); ++mask) {
      const LabeledGraph g = LabeledGraph::FromMask(n, mask);
      for (int r : {2, 3}) {
        const auto best = MinMiscoloredExact(g, r);
        REQUIRE(best.miscolored == MiscoloredEdges(g, best.partition));
        REQUIRE(IsRColorable(g, r) == (best.miscolored == 0));
      }
    }
  }
}

TEST_CASE("local descent") {
  const LabeledGraph c4 = LabeledGraph::Cycle(4);
  const Partition proper(2, {0, 1, 0, 1});
  CHECK(LocalMinPartition(c4, proper) == proper);

  const LabeledGraph k3 = LabeledGraph::Complete(3);
  const Partition start(2, {0, 0, 0});
  const Partition end = LocalMinPartition(k3, start);
  CHECK(MiscoloredEdges(k3, end) == 1);
  CHECK(IsUnfriendly(k3, end));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const int r = 2 + static_cast<int>(rng() % 3);
    LabeledGraph g(n);
    for (int i = 0; i < PairCount(n); ++i) {
      if (rng() % 2) g.add_edge(PairAt(n, i).u, PairAt(n, i).v);
    }
    std::vector<int> colors(n);
    for (int& c : colors) c = static_cast<int>(rng() % r);
    const Partition p0(r, colors);
    const Partition p = LocalMinPartition(g, p0);
    CHECK(MiscoloredEdges(g, p) <= MiscoloredEdges(g, p0));
    for (int v = 0; v < n; ++v) {
      const int own = DegreeInto(g, v, p.members(p.class_of(v)));
      for (int j = 0; j < r; ++j) CHECK(own <= DegreeInto(g, v, p.members(j)));
    }
  }
}

TEST_CASE("balance band") {
  CHECK(IsBalanced(Partition::FromSizes(std::vector<int>{3, 3, 3}), BalanceSpec(0.01, 3)));
  CHECK(!IsBalanced(Partition(2, {0, 0, 0, 0}), BalanceSpec(0.4, 2)));
  CHECK(IsBalanced(Partition::FromSizes(std::vector<int>{4, 6}), BalanceSpec(0.1, 2)));
  CHECK(!IsBalanced(Partition::FromSizes(std::vector<int>{3, 7}), BalanceSpec(0.1, 2)));
  CHECK_THROWS_AS(BalanceSpec(0.5, 2), Error);
  CHECK_THROWS_AS(BalanceSpec(0.0, 2), Error);
}

TEST_CASE("partition enumeration") {
  CHECK(EnumeratePartitions(3, 2).size() == 4);
  CHECK(EnumeratePartitions(2, 2).size() == 2);
  CHECK(EnumeratePartitions(4, 4).size() == 15);
  // Sum of Stirling numbers S(7,k) for k <= 3: 1 + 63 + 301.
  CHECK(EnumeratePartitions(7, 3).size() == 365);
  for (const Partition& p : EnumeratePartitions(6, 3)) {
    CHECK(p.class_of(0) == 0);
    CHECK(p.cross_pairs() + p.inner_pairs() == PairCount(6));
    std::int64_t product_sum = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        product_sum += p.class_sizes()[i] * p.class_sizes()[j];
      }
    }
    CHECK(p.cross_pairs() == product_sum);
  }
  CHECK_THROWS_AS(EnumeratePartitions(30, 3), Error);
}

TEST_CASE("unbalanced partitions lose gamma^2 n^2 / 2 cross pairs") {
  for (int n = 20; n <= 60; ++n) {
    for (int r : {2, 3}) {
      for (double gamma : {0.05, 0.1}) {
        const double ex = static_cast<double>(ExTuran(n, r + 1));
        const double cap = ex - gamma * gamma * n * n / 2;
        // Maximise e(P) over class-size vectors outside the band.
        std::function<void(int, int, std::vector<int>&)> walk =
            [&](int left, int classes, std::vector<int>& sizes) {
              if (classes == 1) {
                sizes.push_back(left);
                bool balanced = true;
                for (int s : sizes) {
                  balanced = balanced && s >= (1.0 / r - gamma) * n - 1e-9 &&
                             s <= (1.0 / r + gamma) * n + 1e-9;
                }
                if (!balanced) {
                  double cross = 0, seen = 0;
                  for (int s : sizes) {
                    cross += seen * s;
                    seen += s;
                  }
                  REQUIRE(cross <= cap + 1e-9);
                }
                sizes.pop_back();
                return;
              }
              for (int s = 0; s <= left; ++s) {
                sizes.push_back(s);
                walk(left - s, classes - 1, sizes);
                sizes.pop_back();
              }
            };
        std::vector<int> sizes;
        walk(n, r, sizes);
      }
    }
  }
}

}  // namespace
}  // namespace kfree
