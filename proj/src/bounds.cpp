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

#include "kfree/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "json.hpp"

#include "kfree/errors.hpp"
#include "kfree/turan.hpp"

namespace kfree {
namespace {

constexpr double kAvoidanceLimit = 1e7;

template <class Real>
Real IntPow(const Real& base, int exponent) {
  Real result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

template <>
double IntPow(const double& base, int exponent) {
  return std::pow(base, exponent);
}

std::int64_t Choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

double LogChoose(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

void RequireOpenUnit(double x, const char* name) {
  Require(x > 0 && x < 1, ErrorKind::kDomain,
          std::string(name) + "=" + std::to_string(x) + " must lie in (0,1)");
}

// Size histograms of single sets and of intersecting ordered pairs.
struct PairHistogram {
  std::map<int, std::int64_t> singles;
  std::map<int, std::int64_t> unions;
};

PairHistogram Histogram(const ForbiddenFamily& family) {
  family.Validate();
  const int words = (family.ground_size + 63) / 64;
  std::vector<std::vector<std::uint64_t>> bits(family.sets.size(),
                                               std::vector<std::uint64_t>(words));
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    for (int slot : family.sets[i]) bits[i][slot / 64] |= 1ULL << (slot % 64);
  }
  PairHistogram h;
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    ++h.singles[static_cast<int>(family.sets[i].size())];
    for (std::size_t j = i + 1; j < family.sets.size(); ++j) {
      int common = 0;
      for (int w = 0; w < words; ++w) {
        common += std::popcount(bits[i][w] & bits[j][w]);
      }
      if (common == 0) continue;
      const int size = static_cast<int>(family.sets[i].size() +
                                        family.sets[j].size()) - common;
      h.unions[size] += 2;
    }
  }
  return h;
}

template <class Real>
MuDeltaT<Real> EvaluateHistogram(const PairHistogram& h, const Real& p) {
  MuDeltaT<Real> md;
  md.p = p;
  for (const auto& [size, count] : h.singles) md.mu += Real(count) * IntPow(p, size);
  for (const auto& [size, count] : h.unions) md.delta += Real(count) * IntPow(p, size);
  return md;
}

void RequireDensity(const ForbiddenFamily& family, int m) {
  Require(m >= 0 && m <= family.ground_size, ErrorKind::kDomain,
          "m=" + std::to_string(m) + " must lie in [0, N=" +
              std::to_string(family.ground_size) + "]");
}

// Cross-pair slots of a partition in canonical pair order.
struct SlotIndex {
  std::vector<Edge> edges;
  std::vector<int> slot_of_pair;

  explicit SlotIndex(const Partition& p) {
    const int n = p.n();
    slot_of_pair.assign(PairCount(n), -1);
    for (int idx = 0; idx < PairCount(n); ++idx) {
      const Edge e = PairAt(n, idx);
      if (p.is_cross(e.u, e.v)) {
        slot_of_pair[idx] = static_cast<int>(edges.size());
        edges.push_back(e);
      }
    }
  }
  int slot(int n, int u, int v) const { return slot_of_pair[PairIndex(n, u, v)]; }
};

ForbiddenFamily HostedFamily(const Partition& p, const SlotIndex& index) {
  ForbiddenFamily family;
  family.ground_size = static_cast<int>(index.edges.size());
  family.host = p;
  family.slot_edges = index.edges;
  return family;
}

void AppendKrMinus(const Partition& p, const SlotIndex& index, Edge missing,
                   ForbiddenFamily& family) {
  const int n = p.n();
  Require(missing.u >= 0 && missing.u < n && missing.v >= 0 &&
              missing.v < n && missing.u != missing.v,
          ErrorKind::kDomain, "missing edge has an invalid endpoint");
  const int cls = p.class_of(missing.u);
  Require(p.class_of(missing.v) == cls, ErrorKind::kDomain,
          "missing edge " + std::to_string(missing.u + 1) + "-" +
              std::to_string(missing.v + 1) + " is not inside one class");
  std::vector<std::vector<int>> choices;
  for (int c = 0; c < p.r(); ++c) {
    if (c == cls) continue;
    std::vector<int> members;
    for (VertexSet s = p.members(c); s != 0; s &= s - 1) {
      members.push_back(std::countr_zero(s));
    }
    if (members.empty()) return;
    choices.push_back(std::move(members));
  }
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    std::vector<int> vertices = {missing.u, missing.v};
    for (std::size_t c = 0; c < choices.size(); ++c) {
      vertices.push_back(choices[c][pick[c]]);
    }
    std::vector<int> set;
    for (std::size_t a = 0; a < vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < vertices.size(); ++b) {
        if (a == 0 && b == 1) continue;
        set.push_back(index.slot(n, vertices[a], vertices[b]));
      }
    }
    std::sort(set.begin(), set.end());
    family.sets.push_back(std::move(set));
    std::size_t c = 0;
    while (c < choices.size() && ++pick[c] == choices[c].size()) pick[c++] = 0;
    if (c == choices.size()) break;
  }
}

}  // namespace

void ForbiddenFamily::Validate() const {
  Require(ground_size >= 0, ErrorKind::kDomain, "ground_size must be >= 0");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& set = sets[i];
    Require(!set.empty(), ErrorKind::kDomain,
            "set " + std::to_string(i) + " is empty");
    for (std::size_t k = 0; k < set.size(); ++k) {
      Require(set[k] >= 0 && set[k] < ground_size, ErrorKind::kDomain,
              "set " + std::to_string(i) + " has slot " +
                  std::to_string(set[k]) + " outside [0, ground_size)");
      Require(k == 0 || set[k - 1] < set[k], ErrorKind::kDomain,
              "set " + std::to_string(i) + " is not strictly increasing");
    }
  }
  if (host) {
    Require(static_cast<int>(slot_edges.size()) == ground_size,
            ErrorKind::kDomain, "slot map size differs from ground_size");
  }
}

std::string ForbiddenFamily::ToJson() const {
  nlohmann::json j;
  j["ground_size"] = ground_size;
  j["sets"] = sets;
  if (host) {
    j["host"] = {{"r", host->r()}, {"class_of", host->colors()}};
    nlohmann::json slots = nlohmann::json::array();
    for (const Edge& e : slot_edges) slots.push_back({e.u, e.v});
    j["slots"] = slots;
  }
  return j.dump();
}

ForbiddenFamily ForbiddenFamily::FromJson(const std::string& text) {
  ForbiddenFamily family;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    family.ground_size = j.at("ground_size").get<int>();
    for (const auto& set : j.at("sets")) {
      auto slots = set.get<std::vector<int>>();
      std::sort(slots.begin(), slots.end());
      slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
      family.sets.push_back(std::move(slots));
    }
    if (j.contains("host")) {
      family.host = Partition(j["host"].at("r").get<int>(),
                              j["host"].at("class_of").get<std::vector<int>>());
      for (const auto& e : j.at("slots")) {
        family.slot_edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kDomain, std::string("malformed family JSON: ") + e.what());
  }
  family.Validate();
  return family;
}

MuDelta MuDeltaExact(const ForbiddenFamily& family, int m) {
  RequireDensity(family, m);
  const double p =
      family.ground_size == 0 ? 0.0 : static_cast<double>(m) / family.ground_size;
  return EvaluateHistogram<double>(Histogram(family), p);
}

MuDeltaT<Rational> MuDeltaExactRational(const ForbiddenFamily& family, int m) {
  RequireDensity(family, m);
  const Rational p = family.ground_size == 0
                         ? Rational(0)
                         : Rational(m) / Rational(family.ground_size);
  return EvaluateHistogram<Rational>(Histogram(family), p);
}

double JansonUpperRaw(const MuDelta& md) {
  Require(md.mu >= 0 && md.delta >= 0, ErrorKind::kDomain,
          "mu and delta must be nonnegative");
  const double q = md.delta == 0 ? 1.0 : std::min(1.0, md.mu / md.delta);
  return 2 * std::exp(-q * md.mu + q * q * md.delta / 2);
}

double JansonUpper(const MuDelta& md) {
  return std::min(1.0, JansonUpperRaw(md));
}

double FkgLowerRaw(const ForbiddenFamily& family, int m, double eta) {
  family.Validate();
  RequireOpenUnit(eta, "eta");
  const int n = family.ground_size;
  Require(m >= 0 && m <= n / 2, ErrorKind::kDomain,
          "m=" + std::to_string(m) + " must lie in [0, floor(N/2)=" +
              std::to_string(n / 2) + "]");
  const double x = n == 0 ? 0.0 : (1 + eta) * m / n;
  Require(x <= 1, ErrorKind::kDomain, "(1+eta) m / N must be <= 1");
  double log_product = 0;
  for (const auto& set : family.sets) {
    const double term = std::pow(x, static_cast<double>(set.size()));
    if (term >= 1) {
      log_product = -INFINITY;
      break;
    }
    log_product += std::log1p(-term);
  }
  return std::exp(log_product) - std::exp(-eta * eta * m / 4);
}

double FkgLower(const ForbiddenFamily& family, int m, double eta) {
  return std::max(0.0, FkgLowerRaw(family, m, eta));
}

Fraction AvoidanceProbabilityExact(const ForbiddenFamily& family, int m) {
  family.Validate();
  RequireDensity(family, m);
  const int n = family.ground_size;
  Require(n <= 64, ErrorKind::kSize,
          "exact avoidance needs N <= 64 (got N=" + std::to_string(n) + ")");
  Require(std::exp(LogChoose(n, m)) <= kAvoidanceLimit * (1 + 1e-9),
          ErrorKind::kSize, "C(N,m) exceeds the 1e7 enumeration guard");
  std::vector<std::uint64_t> masks;
  for (const auto& set : family.sets) {
    std::uint64_t mask = 0;
    for (int slot : set) mask |= 1ULL << slot;
    masks.push_back(mask);
  }
  const std::int64_t total = Choose(n, m);
  std::int64_t good = 0;
  std::uint64_t subset = m == 0 ? 0 : (m == 64 ? ~0ULL : (1ULL << m) - 1);
  for (std::int64_t i = 0; i < total; ++i) {
    bool avoids = true;
    for (std::uint64_t b : masks) {
      if ((subset & b) == b) {
        avoids = false;
        break;
      }
    }
    if (avoids) ++good;
    if (i + 1 < total) {
      const std::uint64_t low = subset & -subset;
      const std::uint64_t ripple = subset + low;
      subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
  }
  return Fraction(good, total);
}

ForbiddenFamily KrMinusFamily(const Partition& partition, Edge missing) {
  return KrMinusFamily(partition, std::span<const Edge>(&missing, 1));
}

ForbiddenFamily KrMinusFamily(const Partition& partition,
                              std::span<const Edge> missing) {
  const SlotIndex index(partition);
  ForbiddenFamily family = HostedFamily(partition, index);
  for (const Edge& e : missing) AppendKrMinus(partition, index, e, family);
  return family;
}

ForbiddenFamily KrFamily(const Partition& partition,
                         const std::vector<std::vector<int>>& tuples) {
  const SlotIndex index(partition);
  ForbiddenFamily family = HostedFamily(partition, index);
  const int n = partition.n();
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const auto& tuple = tuples[t];
    Require(static_cast<int>(tuple.size()) == partition.r(), ErrorKind::kDomain,
            "tuple " + std::to_string(t) + " must have one vertex per class");
    for (int j = 0; j < partition.r(); ++j) {
      Require(tuple[j] >= 0 && tuple[j] < n &&
                  partition.class_of(tuple[j]) == j,
              ErrorKind::kDomain,
              "tuple " + std::to_string(t) + " entry " + std::to_string(j) +
                  " is not a vertex of class " + std::to_string(j));
    }
    std::vector<int> set;
    for (int a = 0; a < partition.r(); ++a) {
      for (int b = a + 1; b < partition.r(); ++b) {
        set.push_back(index.slot(n, tuple[a], tuple[b]));
      }
    }
    std::sort(set.begin(), set.end());
    family.sets.push_back(std::move(set));
  }
  return family;
}

template <class Real>
ClosedFormMuDelta<Real> MuDeltaClosedForm(const Partition& partition,
                                          const LabeledGraph& u, Real p,
                                          std::optional<int> max_degree) {
  const int r = partition.r();
  const int n = partition.n();
  Require(r >= 2, ErrorKind::kDomain, "r must be >= 2");
  Require(u.n() == n, ErrorKind::kDomain, "U and the partition disagree on n");
  Require(p >= 0 && p <= 1, ErrorKind::kDomain, "p must lie in [0,1]");
  const std::vector<Edge> edges = u.edges();
  for (const Edge& e : edges) {
    Require(!partition.is_cross(e.u, e.v), ErrorKind::kDomain,
            "edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) +
                " of U is not monochromatic");
  }
  const int degree_cap = max_degree.value_or(u.max_degree());
  Require(degree_cap >= u.max_degree(), ErrorKind::kDomain,
          "D is below the maximum degree of U");

  std::vector<std::int64_t> sorted(partition.class_sizes().begin(),
                                   partition.class_sizes().end());
  std::sort(sorted.rbegin(), sorted.rend());
  std::vector<Real> top(r + 1, Real(1));  // N_s
  for (int s = 1; s <= r; ++s) top[s] = top[s - 1] * Real(sorted[s - 1]);
  auto nn = [&](int s) { return s < 0 ? Real(0) : top[s]; };
  const int t = r * (r + 1) / 2;
  auto pw = [&](int exponent) { return IntPow(p, exponent); };
  auto c2 = [](int x) { return x * (x - 1) / 2; };

  ClosedFormMuDelta<Real> out;
  out.p = p;
  for (int s = 2; s <= r - 1; ++s) {
    out.delta1 += Real(Choose(r - 1, s)) * nn(s) * nn(r - s - 1) *
                  nn(r - s - 1) * pw(2 * t - c2(s) - 2);
  }
  for (int s = 1; s <= r - 1; ++s) {
    out.delta2 += Real(Choose(r - 1, s)) * nn(s) * nn(r - s - 1) *
                  nn(r - s - 1) * pw(2 * t - c2(s + 1) - 2);
  }
  for (int s = 1; s <= r - 2; ++s) {
    out.delta3 += Real(Choose(r - 1, s)) * nn(s) * nn(r - s - 1) *
                  nn(r - s - 1) * pw(2 * t - c2(s + 2) - 1);
  }
  for (int s = 2; s <= r - 2; ++s) {
    out.delta4 += Real(Choose(r - 2, s)) * nn(s) * nn(r - s - 1) *
                  nn(r - s - 1) * pw(2 * t - c2(s) - 2);
  }
  for (int s = 1; s <= r - 2; ++s) {
    out.delta4 += Real(4 * Choose(r - 2, s)) * nn(s) * nn(r - s - 1) *
                  nn(r - s - 2) * pw(2 * t - c2(s + 1) - 2);
  }
  for (int s = 0; s <= r - 2; ++s) {
    out.delta4 += Real(4 * Choose(r - 2, s)) * nn(s) * nn(r - s - 2) *
                  nn(r - s - 2) * pw(2 * t - c2(s + 2) - 2);
  }

  std::int64_t disjoint = 0;
  std::int64_t sharing = 0;
  std::int64_t across = 0;
  for (const Edge& e : edges) {
    for (const Edge& f : edges) {
      if (e == f) continue;
      if (partition.class_of(e.u) != partition.class_of(f.u)) {
        ++across;
      } else if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) {
        ++sharing;
      } else {
        ++disjoint;
      }
    }
  }
  const Real count(static_cast<std::int64_t>(edges.size()));
  out.delta_upper = Real(disjoint) * out.delta1 + Real(sharing) * out.delta2 +
                    count * out.delta3 + Real(across) * out.delta4;
  const Real worst = out.delta1 < out.delta4 ? out.delta4 : out.delta1;
  out.delta_coarse = count * count * worst +
                     Real(2 * degree_cap) * count * out.delta2 +
                     count * out.delta3;

  Real gamma = 0;
  for (int size : partition.class_sizes()) {
    Real gap = Real(1) / Real(r) - Real(size) / Real(n);
    if (gap < 0) gap = -gap;
    if (gamma < gap) gamma = gap;
  }
  Real base = Real(1) / Real(r) - gamma;
  if (base < 0) base = 0;
  out.mu_lower = count * IntPow(base, r - 1) * IntPow(Real(n), r - 1) *
                 pw(t - 1);
  return out;
}

template ClosedFormMuDelta<double> MuDeltaClosedForm<double>(
    const Partition&, const LabeledGraph&, double, std::optional<int>);
template ClosedFormMuDelta<Rational> MuDeltaClosedForm<Rational>(
    const Partition&, const LabeledGraph&, Rational, std::optional<int>);

DSetsBound DSetsTailBound(int k, double alpha, double lambda,
                          std::span<const int> class_sizes, int d) {
  Require(k >= 1, ErrorKind::kDomain, "k must be >= 1");
  RequireOpenUnit(alpha, "alpha");
  RequireOpenUnit(lambda, "lambda");
  Require(static_cast<int>(class_sizes.size()) == k, ErrorKind::kDomain,
          "expected " + std::to_string(k) + " class sizes");
  const int smallest = *std::min_element(class_sizes.begin(), class_sizes.end());
  Require(d >= 2 && d <= smallest, ErrorKind::kDomain,
          "d=" + std::to_string(d) + " must lie in [2, min class size=" +
              std::to_string(smallest) + "]");
  DSetsBound out;
  const double grid = std::pow(static_cast<double>(d), k);
  out.raw = (grid - 1) * std::exp(d * (std::log(2.0) + lambda * std::log(alpha)));
  out.bound = std::min(1.0, out.raw);
  out.tau = std::exp(k * k / lambda * std::log(alpha / 2) + k * std::log(lambda) -
                     static_cast<double>(k) * k * k / (d * lambda) * std::log(d));
  out.density_cap = std::pow(alpha * lambda, k);
  return out;
}

double HypergeomHoeffding(double alpha, double lambda, int d) {
  RequireOpenUnit(alpha, "alpha");
  RequireOpenUnit(lambda, "lambda");
  Require(d >= 0, ErrorKind::kDomain, "d must be >= 0");
  if (d == 0) return 1;
  return std::min(1.0, std::exp(d * (std::log(2.0) + lambda * std::log(alpha))));
}

double HypergeomTailExact(int n, int d, double alpha, double lambda) {
  RequireOpenUnit(alpha, "alpha");
  RequireOpenUnit(lambda, "lambda");
  Require(n >= 1 && d >= 0 && d <= n, ErrorKind::kDomain,
          "need 0 <= d <= n and n >= 1");
  const auto marked = static_cast<std::int64_t>(std::floor(alpha * lambda * n + 1e-9));
  const auto needed = static_cast<std::int64_t>(std::ceil(lambda * d - 1e-9));
  auto choose = [](std::int64_t a, std::int64_t b) {
    if (b < 0 || b > a) return BigInt(0);
    BigInt result = 1;
    for (std::int64_t i = 1; i <= b; ++i) {
      result *= a - b + i;
      result /= i;
    }
    return result;
  };
  BigInt hits = 0;
  for (std::int64_t j = std::max<std::int64_t>(needed, 0);
       j <= std::min<std::int64_t>(d, marked); ++j) {
    hits += choose(marked, j) * choose(n - marked, d - j);
  }
  return Rational(hits, choose(n, d)).convert_to<double>();
}

RegularizedHypergraph ConstructRegularizedHypergraph(
    const std::vector<std::vector<std::vector<int>>>& neighborhoods,
    const RegularizationParams& params, std::span<const int> class_sizes) {
  const int r = static_cast<int>(class_sizes.size());
  Require(r >= 2 && r <= 16, ErrorKind::kDomain, "need 2 <= r <= 16 classes");
  Require(params.c2 > 0, ErrorKind::kDomain, "C2 must be positive");
  Require(params.dstar >= 1, ErrorKind::kDomain, "D* must be >= 1");
  RequireOpenUnit(params.lambda, "lambda");
  RequireOpenUnit(params.alpha, "alpha");
  double n = 0;
  double volume = 1;
  for (int size : class_sizes) {
    Require(size >= params.dstar, ErrorKind::kDomain,
            "every class needs at least D* vertices");
    n += size;
    volume *= size;
  }
  Require(volume < 9e18, ErrorKind::kSize, "tuple space too large to index");
  for (std::size_t l = 0; l < neighborhoods.size(); ++l) {
    Require(static_cast<int>(neighborhoods[l].size()) == r, ErrorKind::kDomain,
            "vertex " + std::to_string(l) + " needs one list per class");
    for (int j = 0; j < r; ++j) {
      std::vector<int> list = neighborhoods[l][j];
      Require(static_cast<int>(list.size()) == params.dstar, ErrorKind::kDomain,
              "vertex " + std::to_string(l) + " class " + std::to_string(j) +
                  " list must have exactly D* entries");
      std::sort(list.begin(), list.end());
      Require(std::adjacent_find(list.begin(), list.end()) == list.end(),
              ErrorKind::kDomain,
              "vertex " + std::to_string(l) + " class " + std::to_string(j) +
                  " list repeats a vertex");
      Require(list.front() >= 0 && list.back() < class_sizes[j],
              ErrorKind::kDomain,
              "vertex " + std::to_string(l) + " class " + std::to_string(j) +
                  " list leaves the class");
    }
  }

  std::vector<std::uint64_t> stride(r, 1);
  for (int j = 1; j < r; ++j) stride[j] = stride[j - 1] * class_sizes[j - 1];
  const std::uint32_t full = (1u << r) - 1;
  auto key = [&](const std::vector<int>& tuple, std::uint32_t mask) {
    std::uint64_t k = 0;
    for (int j = 0; j < r; ++j) {
      if ((mask >> j) & 1u) k += stride[j] * tuple[j];
    }
    return k;
  };
  std::vector<std::uint32_t> masks;  // 2 <= |I| <= r-1
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (std::popcount(mask) >= 2) masks.push_back(mask);
  }
  std::vector<std::unordered_map<std::uint64_t, std::int64_t>> degree(full + 1);
  std::unordered_map<std::uint64_t, bool> present;

  RegularizedHypergraph out;
  const int d = params.dstar;
  for (const auto& lists : neighborhoods) {
    const double edges = static_cast<double>(out.tuples.size());
    auto in_m = [&](const std::vector<int>& tuple, std::uint32_t mask) {
      if (mask == full) return present.count(key(tuple, full)) > 0;
      const auto it = degree[mask].find(key(tuple, mask));
      if (it == degree[mask].end()) return false;
      const double cap = params.c2 / 2 * edges / std::pow(n, std::popcount(mask));
      return static_cast<double>(it->second) > cap;
    };
    // Walk the grid W_1 x ... x W_r once, counting M_I hits per I and
    // collecting tuples that avoid every M_I.
    std::vector<std::int64_t> hits(full + 1, 0);
    std::vector<std::vector<int>> additions;
    std::vector<int> index(r, 0);
    std::vector<int> tuple(r);
    while (true) {
      for (int j = 0; j < r; ++j) tuple[j] = lists[j][index[j]];
      bool clean = true;
      for (std::uint32_t mask : masks) {
        if (!in_m(tuple, mask)) continue;
        clean = false;
        // Count each projection once: only from the grid point whose
        // coordinates outside I are the first list entries.
        bool canonical = true;
        for (int j = 0; j < r; ++j) {
          if (!((mask >> j) & 1u) && index[j] != 0) canonical = false;
        }
        if (canonical) ++hits[mask];
      }
      if (in_m(tuple, full)) {
        clean = false;
        ++hits[full];
      }
      if (clean) additions.push_back(tuple);
      int j = 0;
      while (j < r && ++index[j] == d) index[j++] = 0;
      if (j == r) break;
    }
    bool useful = hits[full] <= params.lambda * std::pow(d, r);
    for (std::uint32_t mask : masks) {
      if (hits[mask] > params.lambda * std::pow(d, std::popcount(mask))) {
        useful = false;
      }
    }
    for (const auto& t : additions) {
      present[key(t, full)] = true;
      for (std::uint32_t mask : masks) ++degree[mask][key(t, mask)];
      out.tuples.push_back(t);
    }
    out.useful.push_back(useful);
    out.gains.push_back(static_cast<std::int64_t>(additions.size()));
  }
  return out;
}

std::int64_t MaxSubTupleDegree(const std::vector<std::vector<int>>& tuples,
                               int r, int s) {
  Require(s >= 1 && s <= r, ErrorKind::kDomain, "need 1 <= s <= r");
  std::int64_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
    if (std::popcount(mask) != s) continue;
    std::map<std::vector<int>, std::int64_t> counts;
    for (const auto& t : tuples) {
      std::vector<int> projection;
      for (int j = 0; j < r; ++j) {
        if ((mask >> j) & 1u) projection.push_back(t[j]);
      }
      best = std::max(best, ++counts[projection]);
    }
  }
  return best;
}

BinomRatio BinomRatioBounds(std::int64_t a, std::int64_t b, std::int64_t c) {
  Require(a > b && b > c && c > 0, ErrorKind::kDomain,
          "need a > b > c > 0 (got a=" + std::to_string(a) + ", b=" +
              std::to_string(b) + ", c=" + std::to_string(c) + ")");
  const double cc = static_cast<double>(c);
  return {std::pow(static_cast<double>(a) / b, cc),
          std::pow(static_cast<double>(a - c) / (b - c), cc)};
}

double HeuristicThresholdProbe(std::int64_t n, int r, double m) {
  Require(r >= 2, ErrorKind::kDomain, "r must be >= 2");
  Require(n >= r && n <= 1'000'000'000, ErrorKind::kDomain,
          "n must lie in [r, 1e9]");
  Require(m >= 0 && std::isfinite(m), ErrorKind::kDomain, "m must be >= 0");
  const std::vector<int> sizes = BalancedSizes(static_cast<int>(n), r);
  double cross = 0;
  double others = 1;
  double seen = 0;
  for (int i = 0; i < r; ++i) {
    cross += seen * sizes[i];
    seen += sizes[i];
    if (i != 0) others *= sizes[i];
  }
  const double x = m / cross;
  if (x >= 1) return 0;
  const int k = r * (r + 1) / 2 - 1;
  const double log_p = others * std::log1p(-std::pow(x, k));
  return m * std::exp(log_p);
}

}  // namespace kfree
