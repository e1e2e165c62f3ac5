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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "kfree/kfree.h"

namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("kfree-capi-" + std::to_string(::getpid()) + "-" + name))
      .string();
}

TEST_CASE("status names and metadata") {
  CHECK(std::string(kfree_status_name(KFREE_OK)) == "ok");
  CHECK(std::string(kfree_status_name(KFREE_E_CORRUPT)) == "corrupt data");
  CHECK(std::string(kfree_version()) == KFREE_TEST_VERSION);
  CHECK(std::string(kfree_rng_id()) == "mt19937_64+lemire");
}

TEST_CASE("threshold calls and last error") {
  double out = 0;
  REQUIRE(kfree_theta(2, &out) == KFREE_OK);
  CHECK(out == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-14));
  CHECK(std::string(kfree_last_error()).empty());
  CHECK(kfree_threshold_edges(1.0, 2, &out) == KFREE_E_DOMAIN);
  CHECK(!std::string(kfree_last_error()).empty());
  CHECK(kfree_theta(2, nullptr) == KFREE_E_DOMAIN);
  REQUIRE(kfree_threshold_edges(1e4, 3, &out) == KFREE_OK);
  double p = 0;
  REQUIRE(kfree_threshold_density(1e4, 3, &p) == KFREE_OK);
  CHECK(out == doctest::Approx((1 - 1.0 / 3) * 1e8 / 2 * p).epsilon(1e-12));
  CHECK(kfree_odd_cycle_threshold(100, 1, &out) == KFREE_E_DOMAIN);
  CHECK(kfree_odd_cycle_threshold(100, 2, &out) == KFREE_OK);
}

TEST_CASE("graph handles") {
  kfree_graph* g = nullptr;
  REQUIRE(kfree_graph_parse("5;1-2,2-3,3-4,4-5,5-1", &g) == KFREE_OK);
  CHECK(kfree_graph_n(g) == 5);
  CHECK(kfree_graph_edge_count(g) == 5);
  int flag = -1;
  REQUIRE(kfree_graph_contains_clique(g, 3, &flag) == KFREE_OK);
  CHECK(flag == 0);
  int colors[5] = {};
  REQUIRE(kfree_graph_r_coloring(g, 2, &flag, colors) == KFREE_OK);
  CHECK(flag == 0);
  REQUIRE(kfree_graph_r_coloring(g, 3, &flag, colors) == KFREE_OK);
  CHECK(flag == 1);
  CHECK(colors[0] == 0);
  int miscolored = -1;
  REQUIRE(kfree_graph_min_miscolored(g, 2, &miscolored, colors) == KFREE_OK);
  CHECK(miscolored == 1);

  size_t needed = 0;
  CHECK(kfree_graph_literal(g, nullptr, 0, &needed) == KFREE_OK);
  std::vector<char> buf(needed);
  REQUIRE(kfree_graph_literal(g, buf.data(), buf.size(), &needed) == KFREE_OK);
  CHECK(std::string(buf.data()) == "5;1-2,1-5,2-3,3-4,4-5");
  char small[4];
  CHECK(kfree_graph_literal(g, small, sizeof small, &needed) == KFREE_OK);
  CHECK(std::string(small) == "5;1");
  kfree_graph_free(g);
  kfree_graph_free(nullptr);

  kfree_graph* bad = nullptr;
  CHECK(kfree_graph_parse("3;1-1", &bad) == KFREE_E_DOMAIN);
  CHECK(bad == nullptr);
  CHECK(kfree_graph_parse("40;", &bad) == KFREE_E_SIZE);

  kfree_graph* t = nullptr;
  REQUIRE(kfree_graph_turan(6, 3, &t) == KFREE_OK);
  std::uint64_t triangles = 0;
  REQUIRE(kfree_graph_count_cliques(t, 3, &triangles) == KFREE_OK);
  CHECK(triangles == 8);
  kfree_graph_free(t);
}

TEST_CASE("turan quantities") {
  std::int64_t ex = 0;
  REQUIRE(kfree_ex_turan(6, 4, &ex) == KFREE_OK);
  CHECK(ex == 12);
  const int sizes[] = {2, 2, 2};
  REQUIRE(kfree_ex_multipartite(sizes, 3, &ex) == KFREE_OK);
  CHECK(ex == 8);
  int brute = 0;
  REQUIRE(kfree_brute_force_ex(sizes, 3, 3, 0, &brute) == KFREE_OK);
  CHECK(brute == 8);
  const int big[] = {5, 5, 5};
  CHECK(kfree_brute_force_ex(big, 3, 3, 1, &brute) == KFREE_E_SIZE);
}

TEST_CASE("census handles") {
  kfree_census* c = nullptr;
  REQUIRE(kfree_census_run(5, 2, 4, 2, &c) == KFREE_OK);
  CHECK(kfree_census_n(c) == 5);
  CHECK(kfree_census_r(c) == 2);
  kfree_census_row row{};
  REQUIRE(kfree_census_get_row(c, 5, &row) == KFREE_OK);
  CHECK(row.free_count == 72);
  CHECK(row.free_and_rcol == 60);
  CHECK(kfree_census_get_row(c, 11, &row) == KFREE_E_DOMAIN);
  std::int64_t num = 0, den = 0;
  REQUIRE(kfree_census_fraction(c, 5, &num, &den) == KFREE_OK);
  CHECK(num == 5);
  CHECK(den == 6);
  CHECK(kfree_census_fraction(c, 8, &num, &den) == KFREE_E_UNDEFINED);
  char buf[32];
  size_t needed = 0;
  REQUIRE(kfree_census_pair_sum(c, 4, buf, sizeof buf, &needed) == KFREE_OK);
  CHECK(std::string(buf) == "155");

  const std::string path = TempPath("census.txt");
  REQUIRE(kfree_census_save(c, path.c_str()) == KFREE_OK);
  kfree_census* loaded = nullptr;
  REQUIRE(kfree_census_load(path.c_str(), &loaded) == KFREE_OK);
  REQUIRE(kfree_census_get_row(loaded, 5, &row) == KFREE_OK);
  CHECK(row.free_count == 72);
  kfree_census_free(loaded);
  {
    std::ofstream out(path, std::ios::trunc);
    out << "KFREE-CENSUS v1 n=5 r=2\n0,1,1,1,0,16\n";
  }
  CHECK(kfree_census_load(path.c_str(), &loaded) == KFREE_E_CORRUPT);
  {
    std::ofstream out(path, std::ios::trunc);
    out << "KFREE-CENSUS v9 n=5 r=2\n";
  }
  CHECK(kfree_census_load(path.c_str(), &loaded) == KFREE_E_VERSION);
  std::filesystem::remove(path);
  CHECK(kfree_census_load(path.c_str(), &loaded) == KFREE_E_IO);
  kfree_census_free(c);

  CHECK(kfree_census_run(9, 2, 1, 1, &c) == KFREE_E_SIZE);
  REQUIRE(kfree_pair_sum(2, 2, 1, 0, 0.0, buf, sizeof buf, &needed) == KFREE_OK);
  CHECK(std::string(buf) == "1");
}

TEST_CASE("sampler handles") {
  kfree_chain_config cfg{};
  cfg.n = 6;
  cfg.r = 2;
  cfg.m = 6;
  cfg.seed = 3;
  cfg.burn_in = 100;
  cfg.thin = 1;
  cfg.chains = 2;
  kfree_chain* chain = nullptr;
  REQUIRE(kfree_chain_init(&cfg, 0, &chain) == KFREE_OK);
  REQUIRE(kfree_chain_step(chain, 1000) == KFREE_OK);
  std::uint64_t steps = 0, accepted = 0;
  REQUIRE(kfree_chain_stats(chain, &steps, &accepted) == KFREE_OK);
  CHECK(steps == 1000);
  CHECK(accepted > 0);
  kfree_graph* g = nullptr;
  REQUIRE(kfree_chain_graph(chain, &g) == KFREE_OK);
  CHECK(kfree_graph_edge_count(g) == 6);
  kfree_graph_free(g);
  CHECK(kfree_chain_step(chain, -1) == KFREE_E_DOMAIN);
  kfree_chain_free(chain);

  kfree_estimate est{};
  const std::string path = TempPath("dump.txt");
  REQUIRE(kfree_estimate_rpartite(&cfg, 2000, path.c_str(), &est) == KFREE_OK);
  CHECK(est.samples == 2 * 1900);
  CHECK(est.estimate >= 0);
  CHECK(est.estimate <= 1);
  std::ifstream dump(path);
  std::string first;
  std::getline(dump, first);
  CHECK(first == "step,is_rcol,triangles,edges_hash");
  std::filesystem::remove(path);

  double tv = -1, se = -1;
  cfg.m = 9;
  REQUIRE(kfree_tv_diagnostic(&cfg, 1000, 0, &tv, &se) == KFREE_OK);
  CHECK(tv == 0.0);
  cfg.m = 10;
  CHECK(kfree_estimate_rpartite(&cfg, 2000, nullptr, &est) == KFREE_E_INFEASIBLE);
  CHECK(kfree_chain_init(&cfg, 0, &chain) == KFREE_E_INFEASIBLE);
}

TEST_CASE("family handles and bounds") {
  kfree_family* f = nullptr;
  REQUIRE(kfree_family_from_json(R"({"ground_size": 4, "sets": [[0, 1]]})", &f) == KFREE_OK);
  int ground = 0;
  size_t sets = 0;
  REQUIRE(kfree_family_shape(f, &ground, &sets) == KFREE_OK);
  CHECK(ground == 4);
  CHECK(sets == 1);
  double mu = 0, delta = 0, p = 0;
  REQUIRE(kfree_mu_delta(f, 2, &mu, &delta, &p) == KFREE_OK);
  CHECK(mu == doctest::Approx(0.25));
  std::int64_t num = 0, den = 0;
  REQUIRE(kfree_avoidance_exact(f, 2, &num, &den) == KFREE_OK);
  CHECK(num == 5);
  CHECK(den == 6);
  double out = 0;
  REQUIRE(kfree_fkg_lower(f, 2, 0.2, 1, &out) == KFREE_OK);
  CHECK(out == doctest::Approx(0.64 - std::exp(-0.02)));
  CHECK(kfree_fkg_lower(f, 3, 0.2, 0, &out) == KFREE_E_DOMAIN);
  size_t needed = 0;
  REQUIRE(kfree_family_to_json(f, nullptr, 0, &needed) == KFREE_OK);
  CHECK(needed > 10);
  kfree_family_free(f);
  CHECK(kfree_family_from_json("{", &f) == KFREE_E_DOMAIN);

  const int class_of[] = {0, 0, 1, 1};
  const int missing[] = {0, 1};
  REQUIRE(kfree_family_krminus(4, 2, class_of, missing, 1, &f) == KFREE_OK);
  REQUIRE(kfree_family_shape(f, &ground, &sets) == KFREE_OK);
  CHECK(sets == 2);
  REQUIRE(kfree_avoidance_exact(f, 1, &num, &den) == KFREE_OK);
  CHECK(num == 1);
  CHECK(den == 1);
  kfree_family_free(f);
  const int tuples[] = {0, 2, 0, 2};
  REQUIRE(kfree_family_kr(4, 2, class_of, tuples, 2, &f) == KFREE_OK);
  REQUIRE(kfree_family_shape(f, &ground, &sets) == KFREE_OK);
  CHECK(sets == 2);
  kfree_family_free(f);

  REQUIRE(kfree_janson_upper(4, 4, 0, &out) == KFREE_OK);
  CHECK(out == doctest::Approx(2 * std::exp(-2.0)));
  REQUIRE(kfree_janson_upper(0, 0, 1, &out) == KFREE_OK);
  CHECK(out == 2.0);

  double mu_lower = -1, delta_upper = -1, delta_coarse = -1;
  const int one_edge[] = {0, 1};
  REQUIRE(kfree_mu_delta_closed_form(4, 2, class_of, one_edge, 1, 0.5, -1, &mu_lower,
                                     &delta_upper, &delta_coarse) == KFREE_OK);
  CHECK(delta_upper == 0.0);
  CHECK(mu_lower > 0);

  kfree_dsets_bound b{};
  const int sizes[] = {40, 40};
  REQUIRE(kfree_dsets_tail_bound(2, 0.2, 0.5, sizes, 5, &b) == KFREE_OK);
  CHECK(b.raw == doctest::Approx(24 * std::pow(2 * std::sqrt(0.2), 5)));
  REQUIRE(kfree_hypergeom_hoeffding(0.2, 0.5, 6, &out) == KFREE_OK);
  CHECK(out == doctest::Approx(0.512));
  REQUIRE(kfree_hypergeom_tail_exact(30, 6, 0.2, 0.5, &out) == KFREE_OK);
  CHECK(out == doctest::Approx(1.0 / 203));

  const int reg_sizes[] = {3, 3};
  const int lists[] = {0, 1, 2, 0, 1, 2};
  size_t tuple_count = 0;
  int useful[1] = {};
  std::int64_t gains[1] = {};
  REQUIRE(kfree_regularize(2, reg_sizes, 3, 1.0, 0.125, 0.5, lists, 1, &tuple_count,
                           useful, gains) == KFREE_OK);
  CHECK(tuple_count == 9);
  CHECK(useful[0] == 1);
  CHECK(gains[0] == 9);

  double lower = 0, upper = 0;
  REQUIRE(kfree_binom_ratio_bounds(6, 4, 2, &lower, &upper) == KFREE_OK);
  CHECK(lower == doctest::Approx(2.25));
  CHECK(upper == doctest::Approx(4.0));
  CHECK(kfree_binom_ratio_bounds(2, 4, 2, &lower, &upper) == KFREE_E_DOMAIN);
  REQUIRE(kfree_heuristic_probe(10000, 2, 100, &out) == KFREE_OK);
  CHECK(out > 0);
}

}  // namespace
