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

#ifndef KFREE_BOUNDS_HPP_
#define KFREE_BOUNDS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfree/graph.hpp"
#include "kfree/numeric.hpp"

namespace kfree {

// A multiset {B_i} of nonempty subsets of the slots {0..ground_size-1}.
// Families built from a partition remember it, with slot s standing for the
// cross pair slot_edges[s].
struct ForbiddenFamily {
  int ground_size = 0;
  std::vector<std::vector<int>> sets;  // each sorted, duplicates removed
  std::optional<Partition> host;
  std::vector<Edge> slot_edges;

  void Validate() const;
  // {"ground_size": N, "sets": [[...], ...]} plus "host" and "slots" when
  // a host is attached.
  std::string ToJson() const;
  static ForbiddenFamily FromJson(const std::string& text);
};

template <class Real>
struct MuDeltaT {
  Real mu = 0;
  Real delta = 0;
  Real p = 0;
};
using MuDelta = MuDeltaT<double>;

// p = m/N, mu = sum p^{|B_i|}, delta = sum over ordered intersecting pairs
// i != j of p^{|B_i u B_j|}.
MuDelta MuDeltaExact(const ForbiddenFamily& family, int m);
MuDeltaT<Rational> MuDeltaExactRational(const ForbiddenFamily& family, int m);

// 2 exp(-q mu + q^2 delta / 2) at q = min(1, mu/delta); q = 1 when delta = 0.
double JansonUpperRaw(const MuDelta& md);
double JansonUpper(const MuDelta& md);  // clamped to [0,1]

// prod (1 - ((1+eta) m/N)^{|B_i|}) - exp(-eta^2 m / 4). Requires
// m <= floor(N/2), eta in (0,1) and (1+eta) m <= N.
double FkgLowerRaw(const ForbiddenFamily& family, int m, double eta);
double FkgLower(const ForbiddenFamily& family, int m, double eta);  // >= 0

// Share of m-subsets R of the ground set with no B_i inside R.
// Requires N <= 64 and C(N,m) <= 1e7.
Fraction AvoidanceProbabilityExact(const ForbiddenFamily& family, int m);

// Copies of K_{r+1} minus an edge in the complete r-partite graph of
// `partition`, one per choice of a vertex in every other class; each set
// holds the C(r+1,2)-1 cross pairs of its copy. The missing edge must lie
// inside a class.
ForbiddenFamily KrMinusFamily(const Partition& partition, Edge missing);
ForbiddenFamily KrMinusFamily(const Partition& partition,
                              std::span<const Edge> missing);

// One set of C(r,2) cross pairs per tuple; tuple[j] must lie in class j.
ForbiddenFamily KrFamily(const Partition& partition,
                         const std::vector<std::vector<int>>& tuples);

template <class Real>
struct ClosedFormMuDelta {
  Real mu_lower = 0;
  Real delta_upper = 0;   // weighted by exact ordered pair counts of U-edges
  Real delta_coarse = 0;  // e(U)^2 max(D1,D4) + 2 D e(U) D2 + e(U) D3
  Real p = 0;
  Real delta1 = 0;  // same class, disjoint missing edges
  Real delta2 = 0;  // same class, one shared endpoint
  Real delta3 = 0;  // identical missing edges
  Real delta4 = 0;  // missing edges in different classes
};

// Bounds for the family KrMinusFamily(partition, edges of U) at density p.
// Every edge of U must be monochromatic; D defaults to the max degree of U.
template <class Real>
ClosedFormMuDelta<Real> MuDeltaClosedForm(const Partition& partition,
                                          const LabeledGraph& u, Real p,
                                          std::optional<int> max_degree = {});

struct DSetsBound {
  double bound = 0;        // min(1, raw)
  double raw = 0;          // (d^k - 1)(2 alpha^lambda)^d
  double tau = 0;          // (alpha/2)^{k^2/lambda} lambda^k d^{-k^3/(d lambda)}
  double density_cap = 0;  // (alpha lambda)^k
};

// Share of d-set choices W_1..W_k with |H n W_1 x ... x W_k| > k lambda d^k
// when |H| <= (alpha lambda)^k prod |V_i|. Requires 2 <= d <= min |V_i|.
DSetsBound DSetsTailBound(int k, double alpha, double lambda,
                          std::span<const int> class_sizes, int d);

// (2 alpha^lambda)^d clamped to [0,1]; 1 when d = 0.
double HypergeomHoeffding(double alpha, double lambda, int d);

// Pr(|X n [floor(alpha lambda n)]| >= lambda d) for a uniform d-subset X of
// [n], summed exactly.
double HypergeomTailExact(int n, int d, double alpha, double lambda);

struct RegularizationParams {
  double c2 = 1;    // degree-cap multiplier
  int dstar = 1;    // neighbourhood size per class
  double lambda = 0.125;
  double alpha = 0.5;
};

struct RegularizedHypergraph {
  std::vector<std::vector<int>> tuples;  // class-local vertex indices
  std::vector<bool> useful;
  std::vector<std::int64_t> gains;  // tuples added at each step
};

// neighborhoods[l][j] lists the dstar distinct class-local vertices of
// class j attached to the l-th high-degree vertex.
RegularizedHypergraph ConstructRegularizedHypergraph(
    const std::vector<std::vector<std::vector<int>>>& neighborhoods,
    const RegularizationParams& params, std::span<const int> class_sizes);

// Largest degree of an s-element sub-tuple (over classes I, |I| = s) in H.
std::int64_t MaxSubTupleDegree(const std::vector<std::vector<int>>& tuples,
                               int r, int s);

struct BinomRatio {
  double lower = 0;
  double upper = 0;
};
// ((a/b)^c, ((a-c)/(b-c))^c), bracketing C(a,c)/C(b,c). Requires a > b > c > 0.
BinomRatio BinomRatioBounds(std::int64_t a, std::int64_t b, std::int64_t c);

// m (1 - (m/e(T))^{C(r+1,2)-1})^{prod_{j != 0} |V_j|} for the balanced
// r-partition T of n, evaluated in log space.
double HeuristicThresholdProbe(std::int64_t n, int r, double m);

}  // namespace kfree

#endif  // KFREE_BOUNDS_HPP_
