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

#include "kfree/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <climits>
#include <cmath>
#include <string>

#include "kfree/errors.hpp"

namespace kfree {
namespace {

VertexSet Bit(int v) { return VertexSet{1} << v; }

VertexSet LowMask(int n) {
  return n >= 32 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

// Vertices strictly greater than v.
VertexSet Above(int v) { return v >= 31 ? 0 : ~LowMask(v + 1); }

int Popcount(VertexSet s) { return std::popcount(s); }

bool CliqueIn(const LabeledGraph& g, VertexSet cand, int k) {
  if (k <= 0) return true;
  if (Popcount(cand) < k) return false;
  if (k == 1) return cand != 0;
  while (cand != 0) {
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    if (CliqueIn(g, cand & g.neighbors(v), k - 1)) return true;
  }
  return false;
}

std::uint64_t CliquesIn(const LabeledGraph& g, VertexSet cand, int k) {
  if (k <= 0) return 1;
  if (k == 1) return static_cast<std::uint64_t>(Popcount(cand));
  std::uint64_t total = 0;
  while (cand != 0) {
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    const VertexSet next = cand & g.neighbors(v);
    if (Popcount(next) >= k - 1) total += CliquesIn(g, next, k - 1);
  }
  return total;
}

// Backtracking colorability test over the still-uncoloured vertices, most
// constrained vertex first. New colours are opened one at a time.
class ColoringSearch {
 public:
  ColoringSearch(const LabeledGraph& g, int r)
      : g_(g), r_(r), colors_(g.n(), -1), classes_(r, 0) {}

  bool Assign(int v, int c) {
    if ((classes_[c] & g_.neighbors(v)) != 0) return false;
    colors_[v] = c;
    classes_[c] |= Bit(v);
    used_ = std::max(used_, c + 1);
    return true;
  }

  void Unassign(int v, int previous_used) {
    classes_[colors_[v]] &= ~Bit(v);
    colors_[v] = -1;
    used_ = previous_used;
  }

  int used() const { return used_; }
  const std::vector<int>& colors() const { return colors_; }

  bool Feasible() {
    int best = -1;
    int best_avail = INT_MAX;
    int best_degree = -1;
    VertexSet uncolored = 0;
    for (int v = 0; v < g_.n(); ++v) {
      if (colors_[v] < 0) uncolored |= Bit(v);
    }
    if (uncolored == 0) return true;
    for (VertexSet rest = uncolored; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int avail = Available(v);
      const int deg = Popcount(g_.neighbors(v) & uncolored);
      if (avail < best_avail || (avail == best_avail && deg > best_degree)) {
        best = v;
        best_avail = avail;
        best_degree = deg;
      }
    }
    if (best_avail == 0) return false;
    const int limit = std::min(used_ + 1, r_);
    for (int c = 0; c < limit; ++c) {
      const int previous_used = used_;
      if (!Assign(best, c)) continue;
      if (Feasible()) {
        Unassign(best, previous_used);
        return true;
      }
      Unassign(best, previous_used);
    }
    return false;
  }

 private:
  int Available(int v) const {
    int count = 0;
    for (int c = 0; c < used_; ++c) {
      if ((classes_[c] & g_.neighbors(v)) == 0) ++count;
    }
    if (used_ < r_) ++count;
    return count;
  }

  const LabeledGraph& g_;
  int r_;
  std::vector<int> colors_;
  std::vector<VertexSet> classes_;
  int used_ = 0;
};

void MinMiscoloredSearch(const LabeledGraph& g, int r, int v, int used,
                         int cost, std::vector<int>& colors,
                         std::vector<VertexSet>& classes, int& best,
                         std::vector<int>& best_colors) {
  if (cost >= best) return;
  if (v == g.n()) {
    best = cost;
    best_colors = colors;
    return;
  }
  const int limit = std::min(used + 1, r);
  for (int c = 0; c < limit; ++c) {
    const int added = Popcount(g.neighbors(v) & classes[c]);
    colors[v] = c;
    classes[c] |= Bit(v);
    MinMiscoloredSearch(g, r, v + 1, std::max(used, c + 1), cost + added,
                        colors, classes, best, best_colors);
    classes[c] &= ~Bit(v);
  }
}

void PartitionSearch(int n, int r, int v, int used, std::vector<int>& colors,
                     const std::function<void(const std::vector<int>&)>& fn) {
  if (v == n) {
    fn(colors);
    return;
  }
  const int limit = std::min(used + 1, r);
  for (int c = 0; c < limit; ++c) {
    colors[v] = c;
    PartitionSearch(n, r, v + 1, std::max(used, c + 1), colors, fn);
  }
}

int ParseInt(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    Fail(ErrorKind::kDomain, "graph literal: bad " + std::string(what) +
                                 " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

int PairIndex(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  // Pairs (0,*) occupy n-1 slots, (1,*) n-2 slots, and so on.
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

Edge PairAt(int n, int index) {
  int u = 0;
  while (index >= n - 1 - u) {
    index -= n - 1 - u;
    ++u;
  }
  return Edge{u, u + 1 + index};
}

LabeledGraph::LabeledGraph(int n) : n_(n) {
  Require(n >= 0 && n <= kMaxVertices, ErrorKind::kSize,
          "n must lie in [0, 32] (got n=" + std::to_string(n) + ")");
}

LabeledGraph LabeledGraph::FromEdges(int n, std::span<const Edge> edges) {
  LabeledGraph g(n);
  for (const Edge& e : edges) {
    g.CheckPair(e.u, e.v);
    Require(!g.has_edge(e.u, e.v), ErrorKind::kDomain,
            "duplicate edge " + std::to_string(e.u + 1) + "-" +
                std::to_string(e.v + 1));
    g.add_edge(e.u, e.v);
  }
  return g;
}

LabeledGraph LabeledGraph::FromMask(int n, std::uint64_t mask) {
  const int pairs = PairCount(n);
  Require(pairs <= 64, ErrorKind::kSize,
          "edge masks hold at most 64 pairs (n=" + std::to_string(n) + ")");
  LabeledGraph g(n);
  int index = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++index) {
      if ((mask >> index) & 1u) g.add_edge(u, v);
    }
  }
  return g;
}

LabeledGraph LabeledGraph::FromEdgeBits(int n, const EdgeBits& bits) {
  LabeledGraph g(n);
  int index = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++index) {
      if (bits.test(index)) g.add_edge(u, v);
    }
  }
  return g;
}

LabeledGraph LabeledGraph::Complete(int n) {
  LabeledGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

LabeledGraph LabeledGraph::Cycle(int n) {
  Require(n >= 3, ErrorKind::kDomain, "a cycle needs at least 3 vertices");
  LabeledGraph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

LabeledGraph LabeledGraph::Parse(std::string_view literal) {
  const auto semi = literal.find(';');
  Require(semi != std::string_view::npos, ErrorKind::kDomain,
          "graph literal must look like 'n;u-v,...'");
  const int n = ParseInt(literal.substr(0, semi), "vertex count");
  Require(n >= 0 && n <= kMaxVertices, ErrorKind::kSize,
          "graph literal: n must lie in [0, 32]");
  LabeledGraph g(n);
  std::string_view rest = literal.substr(semi + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{}
                                           : rest.substr(comma + 1);
    const auto dash = item.find('-');
    Require(dash != std::string_view::npos, ErrorKind::kDomain,
            "graph literal: edge '" + std::string(item) + "' lacks '-'");
    const int u = ParseInt(item.substr(0, dash), "vertex") - 1;
    const int v = ParseInt(item.substr(dash + 1), "vertex") - 1;
    Require(u != v, ErrorKind::kDomain,
            "graph literal: self-loop at vertex " + std::to_string(u + 1));
    g.CheckPair(u, v);
    Require(!g.has_edge(u, v), ErrorKind::kDomain,
            "graph literal: duplicate edge " + std::to_string(u + 1) + "-" +
                std::to_string(v + 1));
    g.add_edge(u, v);
  }
  return g;
}

void LabeledGraph::CheckPair(int u, int v) const {
  Require(u >= 0 && u < n_ && v >= 0 && v < n_, ErrorKind::kDomain,
          "vertex out of range for n=" + std::to_string(n_));
  Require(u != v, ErrorKind::kDomain, "self-loops are not allowed");
}

int LabeledGraph::degree(int v) const { return Popcount(adj_[v]); }

int LabeledGraph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

VertexSet LabeledGraph::all_vertices() const { return LowMask(n_); }

void LabeledGraph::add_edge(int u, int v) {
  if (has_edge(u, v)) return;
  adj_[u] |= Bit(v);
  adj_[v] |= Bit(u);
  ++edge_count_;
}

void LabeledGraph::remove_edge(int u, int v) {
  if (!has_edge(u, v)) return;
  adj_[u] &= ~Bit(v);
  adj_[v] &= ~Bit(u);
  --edge_count_;
}

std::vector<Edge> LabeledGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int u = 0; u < n_; ++u) {
    for (VertexSet rest = adj_[u] & Above(u); rest != 0; rest &= rest - 1) {
      out.push_back(Edge{u, std::countr_zero(rest)});
    }
  }
  return out;
}

EdgeBits LabeledGraph::edge_bits() const {
  EdgeBits bits;
  for (const Edge& e : edges()) bits.set(PairIndex(n_, e.u, e.v));
  return bits;
}

std::uint64_t LabeledGraph::edge_mask() const {
  Require(PairCount(n_) <= 64, ErrorKind::kSize,
          "edge masks hold at most 64 pairs");
  std::uint64_t mask = 0;
  for (const Edge& e : edges()) {
    mask |= std::uint64_t{1} << PairIndex(n_, e.u, e.v);
  }
  return mask;
}

std::string LabeledGraph::ToLiteral() const {
  std::string out = std::to_string(n_) + ";";
  bool first = true;
  for (const Edge& e : edges()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1);
  }
  return out;
}

Partition::Partition(int r, std::vector<int> class_of)
    : r_(r), class_of_(std::move(class_of)), sizes_(r, 0), members_(r, 0) {
  Require(r >= 1, ErrorKind::kDomain, "a partition needs r >= 1 classes");
  Require(static_cast<int>(class_of_.size()) <= kMaxVertices,
          ErrorKind::kSize, "partitions cover at most 32 vertices");
  for (int v = 0; v < n(); ++v) {
    const int c = class_of_[v];
    Require(c >= 0 && c < r, ErrorKind::kDomain,
            "class index " + std::to_string(c) + " of vertex " +
                std::to_string(v + 1) + " is outside [0, r)");
    ++sizes_[c];
    members_[c] |= Bit(v);
  }
}

Partition Partition::FromSizes(std::span<const int> sizes) {
  std::vector<int> class_of;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    Require(sizes[c] >= 0, ErrorKind::kDomain, "class sizes must be >= 0");
    class_of.insert(class_of.end(), sizes[c], static_cast<int>(c));
  }
  return Partition(static_cast<int>(sizes.size()), std::move(class_of));
}

std::int64_t Partition::inner_pairs() const {
  std::int64_t total = 0;
  for (int s : sizes_) total += std::int64_t{s} * (s - 1) / 2;
  return total;
}

std::int64_t Partition::cross_pairs() const {
  const std::int64_t n64 = n();
  return n64 * (n64 - 1) / 2 - inner_pairs();
}

BalanceSpec::BalanceSpec(double gamma_value, int r) : gamma(gamma_value) {
  Require(r >= 1 && gamma_value > 0.0 && gamma_value < 1.0 / r,
          ErrorKind::kDomain, "gamma must lie in (0, 1/r)");
}

bool ContainsClique(const LabeledGraph& g, int k) {
  Require(k >= 1, ErrorKind::kDomain, "clique order k must be >= 1");
  if (k > g.n()) return false;
  return CliqueIn(g, g.all_vertices(), k);
}

std::uint64_t CountCliques(const LabeledGraph& g, int k) {
  Require(k >= 1, ErrorKind::kDomain, "clique order k must be >= 1");
  if (k > g.n()) return 0;
  return CliquesIn(g, g.all_vertices(), k);
}

bool HasCliqueThrough(const LabeledGraph& g, int u, int v, int k) {
  if (k < 2) return true;
  return CliqueIn(g, g.neighbors(u) & g.neighbors(v), k - 2);
}

std::optional<Partition> FindRColoring(const LabeledGraph& g, int r) {
  Require(r >= 1, ErrorKind::kDomain, "r must be >= 1");
  ColoringSearch search(g, r);
  if (!search.Feasible()) return std::nullopt;
  // Fix vertices in order to the least colour that keeps the rest feasible.
  for (int v = 0; v < g.n(); ++v) {
    const int limit = std::min(search.used() + 1, r);
    bool placed = false;
    for (int c = 0; c < limit && !placed; ++c) {
      const int previous_used = search.used();
      if (!search.Assign(v, c)) continue;
      if (search.Feasible()) {
        placed = true;
      } else {
        search.Unassign(v, previous_used);
      }
    }
    if (!placed) Fail(ErrorKind::kInfeasible, "colouring search lost a witness");
  }
  return Partition(r, search.colors());
}

bool IsRColorable(const LabeledGraph& g, int r) {
  Require(r >= 1, ErrorKind::kDomain, "r must be >= 1");
  ColoringSearch search(g, r);
  return search.Feasible();
}

int MiscoloredEdges(const LabeledGraph& g, const Partition& p) {
  Require(p.n() == g.n(), ErrorKind::kDomain,
          "partition and graph disagree on n");
  int total = 0;
  for (int c = 0; c < p.r(); ++c) {
    const VertexSet cls = p.members(c);
    for (VertexSet rest = cls; rest != 0; rest &= rest - 1) {
      total += Popcount(g.neighbors(std::countr_zero(rest)) & cls);
    }
  }
  return total / 2;
}

void CheckColoringBudget(int n, int r, double limit) {
  Require(n * std::log(static_cast<double>(r)) <= std::log(limit) + 1e-9,
          ErrorKind::kSize,
          "r^n = " + std::to_string(r) + "^" + std::to_string(n) +
              " exceeds the enumeration guard");
}

MiscoloredMinimum MinMiscoloredExact(const LabeledGraph& g, int r) {
  Require(r >= 1, ErrorKind::kDomain, "r must be >= 1");
  CheckColoringBudget(g.n(), r);
  std::vector<int> colors(g.n(), 0);
  std::vector<VertexSet> classes(r, 0);
  int best = INT_MAX;
  std::vector<int> best_colors(g.n(), 0);
  // Canonical vectors suffice: the lexicographically least optimum always
  // opens colours in increasing order.
  MinMiscoloredSearch(g, r, 0, 0, 0, colors, classes, best, best_colors);
  if (g.n() == 0) best = 0;
  return MiscoloredMinimum{best, Partition(r, best_colors)};
}

int DegreeInto(const LabeledGraph& g, int v, VertexSet set) {
  return Popcount(g.neighbors(v) & set);
}

bool IsUnfriendly(const LabeledGraph& g, const Partition& p) {
  for (int v = 0; v < g.n(); ++v) {
    const int own = DegreeInto(g, v, p.members(p.class_of(v)));
    for (int c = 0; c < p.r(); ++c) {
      if (own > DegreeInto(g, v, p.members(c))) return false;
    }
  }
  return true;
}

Partition LocalMinPartition(const LabeledGraph& g, const Partition& start) {
  Require(start.n() == g.n(), ErrorKind::kDomain,
          "partition and graph disagree on n");
  std::vector<int> colors = start.colors();
  std::vector<VertexSet> classes(start.r(), 0);
  for (int v = 0; v < g.n(); ++v) classes[colors[v]] |= Bit(v);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v = 0; v < g.n() && !moved; ++v) {
      const int own_class = colors[v];
      const int own = DegreeInto(g, v, classes[own_class]);
      for (int c = 0; c < start.r(); ++c) {
        if (c == own_class || own <= DegreeInto(g, v, classes[c])) continue;
        classes[own_class] &= ~Bit(v);
        classes[c] |= Bit(v);
        colors[v] = c;
        moved = true;
        break;
      }
    }
  }
  return Partition(start.r(), std::move(colors));
}

bool IsBalanced(const Partition& p, const BalanceSpec& band) {
  const double n = p.n();
  const double lo = (1.0 / p.r() - band.gamma) * n;
  const double hi = (1.0 / p.r() + band.gamma) * n;
  // Boundaries are inclusive; the tolerance absorbs rounding in lo/hi.
  constexpr double kSlack = 1e-9;
  for (int s : p.class_sizes()) {
    if (s < lo - kSlack || s > hi + kSlack) return false;
  }
  return true;
}

void ForEachPartition(int n, int r,
                      const std::function<void(const std::vector<int>&)>& fn) {
  Require(n >= 0 && r >= 1, ErrorKind::kDomain, "need n >= 0 and r >= 1");
  CheckColoringBudget(n, r);
  std::vector<int> colors(n, 0);
  if (n == 0) {
    fn(colors);
    return;
  }
  PartitionSearch(n, r, 1, 1, colors, fn);
}

std::vector<Partition> EnumeratePartitions(int n, int r) {
  std::vector<Partition> out;
  ForEachPartition(n, r, [&](const std::vector<int>& colors) {
    out.emplace_back(r, colors);
  });
  return out;
}

}  // namespace kfree
