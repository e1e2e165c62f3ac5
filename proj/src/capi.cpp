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

#include "kfree/kfree.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "kfree/bounds.hpp"
#include "kfree/census.hpp"
#include "kfree/errors.hpp"
#include "kfree/graph.hpp"
#include "kfree/sampler.hpp"
#include "kfree/thresholds.hpp"
#include "kfree/turan.hpp"

struct kfree_graph {
  kfree::LabeledGraph graph;
};

struct kfree_census {
  kfree::CensusTable table;
};

struct kfree_chain {
  kfree::ChainState state;
};

struct kfree_family {
  kfree::ForbiddenFamily family;
};

namespace {

thread_local std::string last_error;

kfree_status StatusOf(kfree::ErrorKind kind) {
  switch (kind) {
    case kfree::ErrorKind::kDomain: return KFREE_E_DOMAIN;
    case kfree::ErrorKind::kSize: return KFREE_E_SIZE;
    case kfree::ErrorKind::kIo: return KFREE_E_IO;
    case kfree::ErrorKind::kCorrupt: return KFREE_E_CORRUPT;
    case kfree::ErrorKind::kVersion: return KFREE_E_VERSION;
    case kfree::ErrorKind::kInfeasible: return KFREE_E_INFEASIBLE;
    case kfree::ErrorKind::kUnsupported: return KFREE_E_UNSUPPORTED;
    case kfree::ErrorKind::kUndefined: return KFREE_E_UNDEFINED;
  }
  return KFREE_E_INTERNAL;
}

template <class F>
kfree_status Guard(F&& body) {
  try {
    body();
    last_error.clear();
    return KFREE_OK;
  } catch (const kfree::Error& e) {
    last_error = e.what();
    return StatusOf(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return KFREE_E_INTERNAL;
}

void NotNull(const void* p, const char* name) {
  kfree::Require(p != nullptr, kfree::ErrorKind::kDomain,
                 std::string(name) + " must not be null");
}

void CopyOut(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed != nullptr) *needed = text.size() + 1;
  if (buf != nullptr && cap > 0) {
    const size_t n = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
}

kfree::Partition MakePartition(int n, int r, const int* class_of) {
  NotNull(class_of, "class_of");
  kfree::Require(n >= 1 && n <= kfree::kMaxVertices, kfree::ErrorKind::kDomain,
                 "n must lie in [1, 32]");
  return kfree::Partition(r, std::vector<int>(class_of, class_of + n));
}

std::vector<kfree::Edge> MakeEdges(const int* pairs, size_t count) {
  if (count > 0) NotNull(pairs, "edge list");
  std::vector<kfree::Edge> edges;
  for (size_t i = 0; i < count; ++i) edges.push_back({pairs[2 * i], pairs[2 * i + 1]});
  return edges;
}

kfree::ChainConfig MakeConfig(const kfree_chain_config* c) {
  NotNull(c, "config");
  return {c->n, c->r, c->m, c->seed, c->burn_in, c->thin, c->chains, c->jobs};
}

}  // namespace

extern "C" {

const char* kfree_last_error(void) { return last_error.c_str(); }

const char* kfree_status_name(kfree_status status) {
  switch (status) {
    case KFREE_OK: return "ok";
    case KFREE_E_DOMAIN: return "domain error";
    case KFREE_E_SIZE: return "size guard exceeded";
    case KFREE_E_IO: return "I/O error";
    case KFREE_E_CORRUPT: return "corrupt data";
    case KFREE_E_VERSION: return "version mismatch";
    case KFREE_E_INFEASIBLE: return "infeasible";
    case KFREE_E_UNSUPPORTED: return "unsupported";
    case KFREE_E_UNDEFINED: return "undefined value";
    case KFREE_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* kfree_version(void) { return KFREE_VERSION_STRING; }

const char* kfree_rng_id(void) { return kfree::kRngAlgorithm; }

kfree_status kfree_theta(int r, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = kfree::Theta(r);
  });
}

kfree_status kfree_threshold_edges(double n, int r, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = kfree::ThresholdEdges(n, r);
  });
}

kfree_status kfree_threshold_density(double n, int r, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = kfree::ThresholdDensity(n, r);
  });
}

kfree_status kfree_odd_cycle_threshold(double n, int ell, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = kfree::OddCycleThreshold(n, ell);
  });
}

kfree_status kfree_graph_parse(const char* literal, kfree_graph** out) {
  return Guard([&] {
    NotNull(literal, "literal");
    NotNull(out, "out");
    *out = new kfree_graph{kfree::LabeledGraph::Parse(literal)};
  });
}

kfree_status kfree_graph_turan(int n, int r, kfree_graph** out) {
  return Guard([&] {
    NotNull(out, "out");
    kfree::Require(n >= 0 && n <= kfree::kMaxVertices, kfree::ErrorKind::kSize,
                   "n must lie in [0, 32]");
    kfree::Require(r >= 1, kfree::ErrorKind::kDomain, "r must be >= 1");
    *out = new kfree_graph{kfree::TuranGraph(n, r)};
  });
}

void kfree_graph_free(kfree_graph* graph) { delete graph; }

int kfree_graph_n(const kfree_graph* graph) {
  return graph == nullptr ? 0 : graph->graph.n();
}

int kfree_graph_edge_count(const kfree_graph* graph) {
  return graph == nullptr ? 0 : graph->graph.edge_count();
}

kfree_status kfree_graph_literal(const kfree_graph* graph, char* buf,
                                 size_t cap, size_t* needed) {
  return Guard([&] {
    NotNull(graph, "graph");
    CopyOut(graph->graph.ToLiteral(), buf, cap, needed);
  });
}

kfree_status kfree_graph_contains_clique(const kfree_graph* graph, int k,
                                         int* out) {
  return Guard([&] {
    NotNull(graph, "graph");
    NotNull(out, "out");
    *out = kfree::ContainsClique(graph->graph, k) ? 1 : 0;
  });
}

kfree_status kfree_graph_count_cliques(const kfree_graph* graph, int k,
                                       uint64_t* out) {
  return Guard([&] {
    NotNull(graph, "graph");
    NotNull(out, "out");
    *out = kfree::CountCliques(graph->graph, k);
  });
}

kfree_status kfree_graph_r_coloring(const kfree_graph* graph, int r,
                                    int* colorable, int* colors) {
  return Guard([&] {
    NotNull(graph, "graph");
    NotNull(colorable, "colorable");
    const auto witness = kfree::FindRColoring(graph->graph, r);
    *colorable = witness ? 1 : 0;
    if (witness && colors != nullptr) {
      for (int v = 0; v < graph->graph.n(); ++v) colors[v] = witness->class_of(v);
    }
  });
}

kfree_status kfree_graph_min_miscolored(const kfree_graph* graph, int r,
                                        int* miscolored, int* colors) {
  return Guard([&] {
    NotNull(graph, "graph");
    NotNull(miscolored, "miscolored");
    const auto best = kfree::MinMiscoloredExact(graph->graph, r);
    *miscolored = best.miscolored;
    if (colors != nullptr) {
      for (int v = 0; v < graph->graph.n(); ++v) {
        colors[v] = best.partition.class_of(v);
      }
    }
  });
}

kfree_status kfree_ex_turan(int n, int k, int64_t* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = kfree::ExTuran(n, k);
  });
}

kfree_status kfree_ex_multipartite(const int* sizes, int r, int64_t* out) {
  return Guard([&] {
    NotNull(sizes, "sizes");
    NotNull(out, "out");
    kfree::Require(r >= 2, kfree::ErrorKind::kDomain, "r must be >= 2");
    *out = kfree::ExMultipartite(
        kfree::MultipartiteHost(std::vector<int>(sizes, sizes + r)), r);
  });
}

kfree_status kfree_brute_force_ex(const int* sizes, int r, int k,
                                  int exhaustive, int* out) {
  return Guard([&] {
    NotNull(sizes, "sizes");
    NotNull(out, "out");
    kfree::Require(r >= 2, kfree::ErrorKind::kDomain, "r must be >= 2");
    const kfree::MultipartiteHost host(std::vector<int>(sizes, sizes + r));
    *out = kfree::BruteForceEx(host.graph(), k,
                               exhaustive ? kfree::SearchMode::kExhaustive
                                          : kfree::SearchMode::kBranchAndBound);
  });
}

kfree_status kfree_census_run(int n, int r, int shards, int jobs,
                              kfree_census** out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = new kfree_census{kfree::RunCensus(n, r, {shards, jobs})};
  });
}

kfree_status kfree_census_load(const char* path, kfree_census** out) {
  return Guard([&] {
    NotNull(path, "path");
    NotNull(out, "out");
    *out = new kfree_census{kfree::LoadCensus(path)};
  });
}

kfree_status kfree_census_save(const kfree_census* census, const char* path) {
  return Guard([&] {
    NotNull(census, "census");
    NotNull(path, "path");
    kfree::SaveCensus(census->table, path);
  });
}

void kfree_census_free(kfree_census* census) { delete census; }

int kfree_census_n(const kfree_census* census) {
  return census == nullptr ? 0 : census->table.n;
}

int kfree_census_r(const kfree_census* census) {
  return census == nullptr ? 0 : census->table.r;
}

kfree_status kfree_census_get_row(const kfree_census* census, int m,
                                  kfree_census_row* out) {
  return Guard([&] {
    NotNull(census, "census");
    NotNull(out, "out");
    const kfree::CensusRow& row = census->table.row(m);
    *out = {row.m, row.free_count, row.free_and_rcol, row.rcol_count,
            row.unique_rcol_count};
  });
}

kfree_status kfree_census_pair_sum(const kfree_census* census, int m,
                                   char* buf, size_t cap, size_t* needed) {
  return Guard([&] {
    NotNull(census, "census");
    CopyOut(census->table.row(m).pair_sum.str(), buf, cap, needed);
  });
}

kfree_status kfree_census_fraction(const kfree_census* census, int m,
                                   int64_t* numerator, int64_t* denominator) {
  return Guard([&] {
    NotNull(census, "census");
    NotNull(numerator, "numerator");
    NotNull(denominator, "denominator");
    const kfree::Fraction f = kfree::FractionRPartite(census->table, m);
    *numerator = f.numerator();
    *denominator = f.denominator();
  });
}

kfree_status kfree_pair_sum(int n, int r, int m, int has_gamma, double gamma,
                            char* buf, size_t cap, size_t* needed) {
  return Guard([&] {
    std::optional<double> g;
    if (has_gamma) g = gamma;
    CopyOut(kfree::PairSum(n, r, m, g).str(), buf, cap, needed);
  });
}

kfree_status kfree_chain_init(const kfree_chain_config* config, int replica,
                              kfree_chain** out) {
  return Guard([&] {
    NotNull(out, "out");
    kfree::Require(replica >= 0, kfree::ErrorKind::kDomain,
                   "replica must be >= 0");
    *out = new kfree_chain{kfree::InitChain(MakeConfig(config), replica)};
  });
}

void kfree_chain_free(kfree_chain* chain) { delete chain; }

kfree_status kfree_chain_step(kfree_chain* chain, int64_t steps) {
  return Guard([&] {
    NotNull(chain, "chain");
    kfree::Require(steps >= 0, kfree::ErrorKind::kDomain, "steps must be >= 0");
    for (int64_t i = 0; i < steps; ++i) kfree::Step(chain->state);
  });
}

kfree_status kfree_chain_stats(const kfree_chain* chain, uint64_t* steps,
                               uint64_t* accepted) {
  return Guard([&] {
    NotNull(chain, "chain");
    if (steps != nullptr) *steps = chain->state.steps_taken;
    if (accepted != nullptr) *accepted = chain->state.accepted_moves;
  });
}

kfree_status kfree_chain_graph(const kfree_chain* chain, kfree_graph** out) {
  return Guard([&] {
    NotNull(chain, "chain");
    NotNull(out, "out");
    *out = new kfree_graph{chain->state.graph};
  });
}

kfree_status kfree_estimate_rpartite(const kfree_chain_config* config,
                                     int64_t steps, const char* dump_path,
                                     kfree_estimate* out) {
  return Guard([&] {
    NotNull(out, "out");
    const kfree::ChainConfig cfg = MakeConfig(config);
    kfree::RPartiteEstimate e;
    if (dump_path != nullptr) {
      std::ofstream dump(dump_path, std::ios::binary | std::ios::trunc);
      kfree::Require(dump.good(), kfree::ErrorKind::kIo,
                     std::string("cannot open dump file '") + dump_path + "'");
      dump << "step,is_rcol,triangles,edges_hash\n";
      e = kfree::EstimateRPartite(cfg, steps, &dump);
      dump.flush();
      kfree::Require(dump.good(), kfree::ErrorKind::kIo,
                     std::string("failed writing '") + dump_path + "'");
    } else {
      e = kfree::EstimateRPartite(cfg, steps);
    }
    *out = {e.estimate, e.stderr_value, e.acceptance_rate, e.samples,
            e.caveat ? 1 : 0};
  });
}

kfree_status kfree_tv_diagnostic(const kfree_chain_config* config,
                                 int64_t steps, int refined, double* tv,
                                 double* stderr_value) {
  return Guard([&] {
    NotNull(tv, "tv");
    const auto result = kfree::TvDiagnostic(
        MakeConfig(config), steps,
        refined ? kfree::TvStatistic::kColorTrianglesMaxDegree
                : kfree::TvStatistic::kColorTriangles);
    *tv = result.tv;
    if (stderr_value != nullptr) *stderr_value = result.stderr_value;
  });
}

kfree_status kfree_family_from_json(const char* json, kfree_family** out) {
  return Guard([&] {
    NotNull(json, "json");
    NotNull(out, "out");
    *out = new kfree_family{kfree::ForbiddenFamily::FromJson(json)};
  });
}

kfree_status kfree_family_to_json(const kfree_family* family, char* buf,
                                  size_t cap, size_t* needed) {
  return Guard([&] {
    NotNull(family, "family");
    CopyOut(family->family.ToJson(), buf, cap, needed);
  });
}

kfree_status kfree_family_krminus(int n, int r, const int* class_of,
                                  const int* missing, size_t count,
                                  kfree_family** out) {
  return Guard([&] {
    NotNull(out, "out");
    const kfree::Partition p = MakePartition(n, r, class_of);
    const auto edges = MakeEdges(missing, count);
    *out = new kfree_family{kfree::KrMinusFamily(p, edges)};
  });
}

kfree_status kfree_family_kr(int n, int r, const int* class_of,
                             const int* tuples, size_t count,
                             kfree_family** out) {
  return Guard([&] {
    NotNull(out, "out");
    const kfree::Partition p = MakePartition(n, r, class_of);
    if (count > 0) NotNull(tuples, "tuples");
    std::vector<std::vector<int>> rows;
    for (size_t i = 0; i < count; ++i) {
      rows.emplace_back(tuples + i * r, tuples + (i + 1) * r);
    }
    *out = new kfree_family{kfree::KrFamily(p, rows)};
  });
}

void kfree_family_free(kfree_family* family) { delete family; }

kfree_status kfree_family_shape(const kfree_family* family, int* ground_size,
                                size_t* sets) {
  return Guard([&] {
    NotNull(family, "family");
    if (ground_size != nullptr) *ground_size = family->family.ground_size;
    if (sets != nullptr) *sets = family->family.sets.size();
  });
}

kfree_status kfree_mu_delta(const kfree_family* family, int m, double* mu,
                            double* delta, double* p) {
  return Guard([&] {
    NotNull(family, "family");
    const kfree::MuDelta md = kfree::MuDeltaExact(family->family, m);
    if (mu != nullptr) *mu = md.mu;
    if (delta != nullptr) *delta = md.delta;
    if (p != nullptr) *p = md.p;
  });
}

kfree_status kfree_janson_upper(double mu, double delta, int raw,
                                double* out) {
  return Guard([&] {
    NotNull(out, "out");
    const kfree::MuDelta md{mu, delta, 0};
    *out = raw ? kfree::JansonUpperRaw(md) : kfree::JansonUpper(md);
  });
}

kfree_status kfree_fkg_lower(const kfree_family* family, int m, double eta,
                             int raw, double* out) {
  return Guard([&] {
    NotNull(family, "family");
    NotNull(out, "out");
    *out = raw ? kfree::FkgLowerRaw(family->family, m, eta)
               : kfree::FkgLower(family->family, m, eta);
  });
}

kfree_status kfree_avoidance_exact(const kfree_family* family, int m,
                                   int64_t* numerator, int64_t* denominator) {
  return Guard([&] {
    NotNull(family, "family");
    NotNull(numerator, "numerator");
    NotNull(denominator, "denominator");
    const kfree::Fraction f = kfree::AvoidanceProbabilityExact(family->family, m);
    *numerator = f.numerator();
    *denominator = f.denominator();
  });
}

kfree_status kfree_mu_delta_closed_form(int n, int r, const int* class_of,
                                        const int* u_edges, size_t count,
                                        double p, int max_degree,
                                        double* mu_lower, double* delta_upper,
                                        double* delta_coarse) {
  return Guard([&] {
    const kfree::Partition part = MakePartition(n, r, class_of);
    const auto edges = MakeEdges(u_edges, count);
    const kfree::LabeledGraph u = kfree::LabeledGraph::FromEdges(n, edges);
    std::optional<int> cap;
    if (max_degree >= 0) cap = max_degree;
    const auto cf = kfree::MuDeltaClosedForm<double>(part, u, p, cap);
    if (mu_lower != nullptr) *mu_lower = cf.mu_lower;
    if (delta_upper != nullptr) *delta_upper = cf.delta_upper;
    if (delta_coarse != nullptr) *delta_coarse = cf.delta_coarse;
  });
}

kfree_status kfree_dsets_tail_bound(int k, double alpha, double lambda,
                                    const int* class_sizes, int d,
                                    kfree_dsets_bound* out) {
  return Guard([&] {
    NotNull(class_sizes, "class_sizes");
    NotNull(out, "out");
    kfree::Require(k >= 1, kfree::ErrorKind::kDomain, "k must be >= 1");
    const auto b = kfree::DSetsTailBound(
        k, alpha, lambda, std::span<const int>(class_sizes, k), d);
    *out = {b.bound, b.raw, b.tau, b.density_cap};
  });
}

kfree_status kfree_hypergeom_hoeffding(double alpha, double lambda, int d,
                                       double* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = kfree::HypergeomHoeffding(alpha, lambda, d);
  });
}

kfree_status kfree_hypergeom_tail_exact(int n, int d, double alpha,
                                        double lambda, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = kfree::HypergeomTailExact(n, d, alpha, lambda);
  });
}

kfree_status kfree_regularize(int r, const int* class_sizes, int dstar,
                              double c2, double lambda, double alpha,
                              const int* lists, size_t vertices,
                              size_t* tuple_count, int* useful,
                              int64_t* gains) {
  return Guard([&] {
    NotNull(class_sizes, "class_sizes");
    kfree::Require(r >= 2 && dstar >= 1, kfree::ErrorKind::kDomain,
                   "need r >= 2 and D* >= 1");
    if (vertices > 0) NotNull(lists, "lists");
    std::vector<std::vector<std::vector<int>>> w(vertices);
    for (size_t l = 0; l < vertices; ++l) {
      for (int j = 0; j < r; ++j) {
        const int* begin = lists + (l * r + j) * dstar;
        w[l].emplace_back(begin, begin + dstar);
      }
    }
    const auto h = kfree::ConstructRegularizedHypergraph(
        w, {c2, dstar, lambda, alpha}, std::span<const int>(class_sizes, r));
    if (tuple_count != nullptr) *tuple_count = h.tuples.size();
    for (size_t l = 0; l < vertices; ++l) {
      if (useful != nullptr) useful[l] = h.useful[l] ? 1 : 0;
      if (gains != nullptr) gains[l] = h.gains[l];
    }
  });
}

kfree_status kfree_binom_ratio_bounds(int64_t a, int64_t b, int64_t c,
                                      double* lower, double* upper) {
  return Guard([&] {
    const auto bounds = kfree::BinomRatioBounds(a, b, c);
    if (lower != nullptr) *lower = bounds.lower;
    if (upper != nullptr) *upper = bounds.upper;
  });
}

kfree_status kfree_heuristic_probe(int64_t n, int r, double m, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = kfree::HeuristicThresholdProbe(n, r, m);
  });
}

}  // extern "C"
