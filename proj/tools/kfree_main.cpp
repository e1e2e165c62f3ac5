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
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kfree/kfree.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitSize = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 1;

struct Failure {
  int exit_code;
  std::string message;
};

int ExitCodeFor(kfree_status status) {
  switch (status) {
    case KFREE_OK: return kExitOk;
    case KFREE_E_SIZE: return kExitSize;
    case KFREE_E_IO:
    case KFREE_E_CORRUPT:
    case KFREE_E_VERSION: return kExitIo;
    case KFREE_E_INTERNAL: return kExitInternal;
    default: return kExitDomain;
  }
}

void Check(kfree_status status) {
  if (status != KFREE_OK) throw Failure{ExitCodeFor(status), kfree_last_error()};
}

[[noreturn]] void DomainFailure(const std::string& message) {
  throw Failure{kExitDomain, message};
}

template <class Fn>
std::string ReadString(Fn&& fn) {
  size_t needed = 0;
  Check(fn(nullptr, 0, &needed));
  std::string text(needed, '\0');
  Check(fn(text.data(), text.size(), &needed));
  text.resize(needed - 1);
  return text;
}

std::string FormatNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string RenderCell(const Json& cell) {
  if (cell.is_null()) return "";
  if (cell.is_boolean()) return cell.get<bool>() ? "1" : "0";
  if (cell.is_number_integer()) return std::to_string(cell.get<std::int64_t>());
  if (cell.is_number_unsigned()) return std::to_string(cell.get<std::uint64_t>());
  if (cell.is_number_float()) return FormatNumber(cell.get<double>());
  std::string s = cell.get<std::string>();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return s;
}

// Reproducibility stanza shared by every artifact.
struct Meta {
  std::optional<std::uint64_t> seed;
  std::optional<int> shards;
  std::string command;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct OutputOptions {
  std::string format = "csv";
  std::string out;
};

std::string Render(const Table& table, const Meta& meta,
                   const std::string& format) {
  std::ostringstream text;
  if (format == "json") {
    Json doc;
    doc["meta"] = {{"kfree_version", kfree_version()},
                   {"command", meta.command},
                   {"seed", meta.seed ? Json(*meta.seed) : Json(nullptr)},
                   {"rng", kfree_rng_id()},
                   {"shards", meta.shards ? Json(*meta.shards) : Json(nullptr)}};
    doc["rows"] = Json::array();
    for (const auto& row : table.rows) {
      Json object;
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        object[table.columns[c]] = row[c];
      }
      doc["rows"].push_back(object);
    }
    text << doc.dump(2) << '\n';
    return text.str();
  }
  text << "# kfree_version=" << kfree_version() << '\n'
       << "# command=" << meta.command << '\n'
       << "# seed=" << (meta.seed ? std::to_string(*meta.seed) : "none") << '\n'
       << "# rng=" << kfree_rng_id() << '\n'
       << "# shards=" << (meta.shards ? std::to_string(*meta.shards) : "none")
       << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    text << (c ? "," : "") << table.columns[c];
  }
  text << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      text << (c ? "," : "") << RenderCell(row[c]);
    }
    text << '\n';
  }
  return text.str();
}

void Emit(const Table& table, const Meta& meta, const OutputOptions& output) {
  const std::string text = Render(table, meta, output.format);
  if (output.out.empty() || output.out == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw Failure{kExitIo, "failed writing to stdout"};
    return;
  }
  std::ofstream file(output.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Failure{kExitIo, "--out: cannot open '" + output.out + "'"};
  file << text;
  file.flush();
  if (!file) throw Failure{kExitIo, "--out: failed writing '" + output.out + "'"};
}

void AddOutputOptions(CLI::App* app, OutputOptions& output) {
  app->add_option("--format", output.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", output.out, "output path (default stdout)");
}

std::vector<int> ParseIntList(const std::string& text, const char* flag) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      DomainFailure(std::string(flag) + ": '" + item + "' is not an integer");
    }
  }
  if (values.empty()) DomainFailure(std::string(flag) + ": empty list");
  return values;
}

std::string ReadFile(const std::string& path, const char* flag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitIo, std::string(flag) + ": cannot open '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---- thresholds ----

struct ThresholdArgs {
  std::int64_t n = 0;
  int r = 2;
  std::optional<int> ell;
  OutputOptions output;
};

void RunThresholds(const ThresholdArgs& a) {
  if (a.n < 3) {
    DomainFailure("--n=" + std::to_string(a.n) +
                  " is outside the log domain: thresholds need n >= 3");
  }
  if (a.r < 2) DomainFailure("--r=" + std::to_string(a.r) + " must be >= 2");
  const double n = static_cast<double>(a.n);
  double theta = 0, mr = 0, pr = 0;
  Check(kfree_theta(a.r, &theta));
  Check(kfree_threshold_edges(n, a.r, &mr));
  Check(kfree_threshold_density(n, a.r, &pr));
  Table table{{"quantity", "value"}, {}};
  table.rows.push_back({"n", a.n});
  table.rows.push_back({"r", a.r});
  table.rows.push_back({"theta_r", theta});
  table.rows.push_back({"m_r", mr});
  table.rows.push_back({"p_r", pr});
  if (a.n <= 2'000'000'000) {
    std::int64_t ex = 0;
    Check(kfree_ex_turan(static_cast<int>(a.n), a.r + 1, &ex));
    table.rows.push_back({"ex_turan", ex});
  }
  if (a.ell) {
    if (*a.ell < 2) {
      DomainFailure("--ell=" + std::to_string(*a.ell) +
                    " must be >= 2 (the exponent 1/(ell-1) is undefined)");
    }
    double t = 0;
    Check(kfree_odd_cycle_threshold(n, *a.ell, &t));
    table.rows.push_back({"ell", *a.ell});
    table.rows.push_back({"t_ell", t});
  }
  Emit(table, {std::nullopt, std::nullopt, "thresholds"}, a.output);
}

// ---- census ----

struct CensusArgs {
  int n = 0;
  int r = 2;
  int shards = 16;
  int jobs = 0;
  std::string cache_dir;
  OutputOptions output;
};

struct CensusHandle {
  kfree_census* ptr = nullptr;
  ~CensusHandle() { kfree_census_free(ptr); }
};

std::string CacheDir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("KFREE_CACHE_DIR");
  return env != nullptr ? env : "";
}

void ObtainCensus(int n, int r, int shards, int jobs,
                  const std::string& cache_dir, CensusHandle& handle) {
  const std::string dir = CacheDir(cache_dir);
  std::string path;
  if (!dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Failure{kExitIo, "--cache-dir: cannot create '" + dir + "'"};
    path = (std::filesystem::path(dir) /
            ("census-n" + std::to_string(n) + "-r" + std::to_string(r) + ".txt"))
               .string();
    if (std::filesystem::exists(path)) {
      Check(kfree_census_load(path.c_str(), &handle.ptr));
      if (kfree_census_n(handle.ptr) != n || kfree_census_r(handle.ptr) != r) {
        throw Failure{kExitIo, "cache file '" + path + "' holds a different census"};
      }
      return;
    }
  }
  Check(kfree_census_run(n, r, shards, jobs, &handle.ptr));
  if (!path.empty()) Check(kfree_census_save(handle.ptr, path.c_str()));
}

void RunCensusCommand(const CensusArgs& a) {
  CensusHandle census;
  ObtainCensus(a.n, a.r, a.shards, a.jobs, a.cache_dir, census);
  Table table{{"m", "free", "free_rcol", "rcol", "unique_rcol", "pair_sum"}, {}};
  for (int m = 0; m <= a.n * (a.n - 1) / 2; ++m) {
    kfree_census_row row{};
    Check(kfree_census_get_row(census.ptr, m, &row));
    const std::string pair_sum = ReadString([&](char* b, size_t c, size_t* need) {
      return kfree_census_pair_sum(census.ptr, m, b, c, need);
    });
    table.rows.push_back({row.m, row.free_count, row.free_and_rcol,
                          row.rcol_count, row.unique_rcol_count, pair_sum});
  }
  Emit(table, {std::nullopt, a.shards, "census"}, a.output);
}

// ---- sampler shared flags ----

struct ChainArgs {
  std::uint64_t seed = 1;
  std::int64_t steps = 100000;
  std::int64_t burn_in = 1000;
  std::int64_t thin = 1;
  int chains = 4;
  int jobs = 0;
};

void AddChainOptions(CLI::App* app, ChainArgs& c) {
  app->add_option("--seed", c.seed, "RNG seed");
  app->add_option("--steps", c.steps, "steps per chain");
  app->add_option("--burn-in", c.burn_in, "steps discarded before sampling");
  app->add_option("--thin", c.thin, "steps between recorded samples");
  app->add_option("--chains", c.chains, "independent replicas");
  app->add_option("--jobs", c.jobs, "worker threads (0 = all cores)");
}

kfree_chain_config MakeConfig(int n, int r, int m, const ChainArgs& c) {
  return {n, r, m, c.seed, c.burn_in, c.thin, c.chains, c.jobs};
}

// ---- sweep ----

struct SweepArgs {
  int n = 0;
  int r = 2;
  std::string m_grid = "auto";
  int points = 12;
  std::string engine = "census";
  int shards = 16;
  std::string cache_dir;
  ChainArgs chain;
  OutputOptions output;
};

std::vector<int> AutoGrid(int n, std::int64_t ex, int r, int points) {
  std::vector<int> grid;
  if (ex <= 0) return {0};
  const double lo = std::max(1.0, std::min<double>(n, ex));
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 1.0 : static_cast<double>(i) / (points - 1);
    grid.push_back(static_cast<int>(std::lround(lo * std::pow(ex / lo, t))));
  }
  double mr = 0;
  if (n >= 3 && kfree_threshold_edges(n, r, &mr) == KFREE_OK) {
    const auto forced = static_cast<int>(std::lround(mr));
    if (forced >= 1 && forced <= ex) grid.push_back(forced);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void RunSweep(const SweepArgs& a) {
  if (a.n < 1) DomainFailure("--n must be >= 1");
  if (a.r < 2) DomainFailure("--r=" + std::to_string(a.r) + " must be >= 2");
  std::int64_t ex = 0;
  Check(kfree_ex_turan(a.n, a.r + 1, &ex));
  std::vector<int> grid = a.m_grid == "auto" ? AutoGrid(a.n, ex, a.r, a.points)
                                             : ParseIntList(a.m_grid, "--m");
  for (int m : grid) {
    if (m < 0 || m > ex) {
      DomainFailure("--m: grid value " + std::to_string(m) +
                    " lies outside [0, ex(n,K_{r+1})=" + std::to_string(ex) + "]");
    }
  }
  Table table{{"n", "r", "m", "engine", "fraction_or_estimate", "stderr",
               "samples", "caveat"},
              {}};
  Meta meta{std::nullopt, std::nullopt, "sweep"};
  if (a.engine == "census") {
    if (a.n > 8) {
      throw Failure{kExitSize, "--n=" + std::to_string(a.n) +
                                   ": the census engine needs n <= 8; use "
                                   "--engine sampler"};
    }
    meta.shards = a.shards;
    CensusHandle census;
    ObtainCensus(a.n, a.r, a.shards, a.chain.jobs, a.cache_dir, census);
    for (int m : grid) {
      std::int64_t num = 0, den = 1;
      Check(kfree_census_fraction(census.ptr, m, &num, &den));
      kfree_census_row row{};
      Check(kfree_census_get_row(census.ptr, m, &row));
      table.rows.push_back({a.n, a.r, m, "census",
                            static_cast<double>(num) / static_cast<double>(den),
                            0.0, row.free_count, false});
    }
  } else {
    meta.seed = a.chain.seed;
    for (int m : grid) {
      const kfree_chain_config cfg = MakeConfig(a.n, a.r, m, a.chain);
      kfree_estimate e{};
      Check(kfree_estimate_rpartite(&cfg, a.chain.steps, nullptr, &e));
      table.rows.push_back({a.n, a.r, m, "sampler", e.estimate, e.stderr_value,
                            e.samples, e.caveat != 0});
    }
  }
  Emit(table, meta, a.output);
}

// ---- sample ----

struct SampleArgs {
  int n = 0;
  int r = 2;
  int m = 0;
  ChainArgs chain;
  std::string dump;
  bool tv = false;
  OutputOptions output;
};

void RunSample(const SampleArgs& a) {
  const kfree_chain_config cfg = MakeConfig(a.n, a.r, a.m, a.chain);
  kfree_estimate e{};
  Check(kfree_estimate_rpartite(&cfg, a.chain.steps,
                                a.dump.empty() ? nullptr : a.dump.c_str(), &e));
  Table table{{"quantity", "value"}, {}};
  table.rows.push_back({"n", a.n});
  table.rows.push_back({"r", a.r});
  table.rows.push_back({"m", a.m});
  table.rows.push_back({"estimate", e.estimate});
  table.rows.push_back({"stderr", e.stderr_value});
  table.rows.push_back({"acceptance_rate", e.acceptance_rate});
  table.rows.push_back({"samples", e.samples});
  table.rows.push_back({"caveat", e.caveat != 0});
  if (a.tv) {
    double tv = 0, se = 0;
    Check(kfree_tv_diagnostic(&cfg, a.chain.steps, 0, &tv, &se));
    table.rows.push_back({"tv", tv});
    table.rows.push_back({"tv_stderr", se});
  }
  Emit(table, {a.chain.seed, std::nullopt, "sample"}, a.output);
}

// ---- bounds ----

struct FamilyHandle {
  kfree_family* ptr = nullptr;
  ~FamilyHandle() { kfree_family_free(ptr); }
};

struct BoundsArgs {
  std::string family;
  std::optional<int> m;
  std::optional<double> mu;
  std::optional<double> delta;
  double eta = 0.5;
  double alpha = 0.1;
  double lambda = 0.5;
  int d = 2;
  int k = 2;
  std::string sizes;
  std::string missing;
  std::int64_t n = 0;
  int r = 2;
  std::optional<double> m_real;
  std::optional<double> gamma;
  std::int64_t a = 0, b = 0, c = 0;
  bool raw = false;
  OutputOptions output;
};

void LoadFamily(const std::string& path, FamilyHandle& family) {
  if (path.empty()) DomainFailure("--family is required");
  const std::string text = ReadFile(path, "--family");
  Check(kfree_family_from_json(text.c_str(), &family.ptr));
}

int RequireM(const BoundsArgs& a) {
  if (!a.m) DomainFailure("--m is required");
  return *a.m;
}

Table QuantityTable() { return {{"quantity", "value"}, {}}; }

void RunJanson(const BoundsArgs& a) {
  double mu = 0, delta = 0, p = 0;
  Table t = QuantityTable();
  if (!a.family.empty()) {
    FamilyHandle family;
    LoadFamily(a.family, family);
    Check(kfree_mu_delta(family.ptr, RequireM(a), &mu, &delta, &p));
    t.rows.push_back({"p", p});
  } else {
    if (!a.mu || !a.delta) DomainFailure("give --family and --m, or --mu and --delta");
    mu = *a.mu;
    delta = *a.delta;
  }
  double bound = 0, raw = 0;
  Check(kfree_janson_upper(mu, delta, 0, &bound));
  Check(kfree_janson_upper(mu, delta, 1, &raw));
  t.rows.push_back({"mu", mu});
  t.rows.push_back({"delta", delta});
  t.rows.push_back({"q", delta == 0 ? 1.0 : std::min(1.0, mu / delta)});
  t.rows.push_back({"janson_upper", bound});
  if (a.raw) t.rows.push_back({"janson_upper_raw", raw});
  Emit(t, {std::nullopt, std::nullopt, "bounds janson"}, a.output);
}

void RunFkg(const BoundsArgs& a) {
  FamilyHandle family;
  LoadFamily(a.family, family);
  double bound = 0, raw = 0;
  Check(kfree_fkg_lower(family.ptr, RequireM(a), a.eta, 0, &bound));
  Check(kfree_fkg_lower(family.ptr, RequireM(a), a.eta, 1, &raw));
  Table t = QuantityTable();
  t.rows.push_back({"eta", a.eta});
  t.rows.push_back({"fkg_lower", bound});
  if (a.raw) t.rows.push_back({"fkg_lower_raw", raw});
  Emit(t, {std::nullopt, std::nullopt, "bounds fkg"}, a.output);
}

void RunExact(const BoundsArgs& a) {
  FamilyHandle family;
  LoadFamily(a.family, family);
  std::int64_t num = 0, den = 1;
  Check(kfree_avoidance_exact(family.ptr, RequireM(a), &num, &den));
  Table t = QuantityTable();
  t.rows.push_back({"numerator", num});
  t.rows.push_back({"denominator", den});
  t.rows.push_back({"probability", static_cast<double>(num) / den});
  Emit(t, {std::nullopt, std::nullopt, "bounds exact"}, a.output);
}

void RunHoeffding(const BoundsArgs& a) {
  double bound = 0;
  Check(kfree_hypergeom_hoeffding(a.alpha, a.lambda, a.d, &bound));
  Table t = QuantityTable();
  t.rows.push_back({"hoeffding", bound});
  if (a.n > 0) {
    double exact = 0;
    Check(kfree_hypergeom_tail_exact(static_cast<int>(a.n), a.d, a.alpha,
                                     a.lambda, &exact));
    t.rows.push_back({"exact_tail", exact});
  }
  Emit(t, {std::nullopt, std::nullopt, "bounds hoeffding"}, a.output);
}

void RunDsets(const BoundsArgs& a) {
  const std::vector<int> sizes = ParseIntList(a.sizes, "--sizes");
  if (static_cast<int>(sizes.size()) != a.k) {
    DomainFailure("--sizes must list exactly --k=" + std::to_string(a.k) +
                  " class sizes");
  }
  kfree_dsets_bound b{};
  Check(kfree_dsets_tail_bound(a.k, a.alpha, a.lambda, sizes.data(), a.d, &b));
  Table t = QuantityTable();
  t.rows.push_back({"bound", b.bound});
  if (a.raw) t.rows.push_back({"raw", b.raw});
  t.rows.push_back({"tau", b.tau});
  t.rows.push_back({"density_cap", b.density_cap});
  Emit(t, {std::nullopt, std::nullopt, "bounds dsets"}, a.output);
}

void RunProbe(const BoundsArgs& a) {
  if (a.n < 3) DomainFailure("--n=" + std::to_string(a.n) + " must be >= 3");
  double mr = 0;
  Check(kfree_threshold_edges(static_cast<double>(a.n), a.r, &mr));
  const double m = a.m_real.value_or(mr);
  double value = 0;
  Check(kfree_heuristic_probe(a.n, a.r, m, &value));
  Table t = QuantityTable();
  t.rows.push_back({"m", m});
  t.rows.push_back({"m_r", mr});
  t.rows.push_back({"p_times_m", value});
  Emit(t, {std::nullopt, std::nullopt, "bounds probe"}, a.output);
}

void RunBinom(const BoundsArgs& a) {
  double lower = 0, upper = 0;
  Check(kfree_binom_ratio_bounds(a.a, a.b, a.c, &lower, &upper));
  Table t = QuantityTable();
  t.rows.push_back({"lower", lower});
  t.rows.push_back({"upper", upper});
  Emit(t, {std::nullopt, std::nullopt, "bounds binom"}, a.output);
}

void RunMultipartite(const BoundsArgs& a) {
  const std::vector<int> sizes = ParseIntList(a.sizes, "--sizes");
  const int r = static_cast<int>(sizes.size());
  std::int64_t formula = 0;
  Check(kfree_ex_multipartite(sizes.data(), r, &formula));
  Table t = QuantityTable();
  t.rows.push_back({"ex_formula", formula});
  std::int64_t cross = 0, total = 0;
  for (int s : sizes) {
    cross += total * s;
    total += s;
  }
  if (cross <= 24) {
    int brute = 0;
    Check(kfree_brute_force_ex(sizes.data(), r, r, 0, &brute));
    t.rows.push_back({"ex_brute_force", brute});
  }
  Emit(t, {std::nullopt, std::nullopt, "bounds multipartite"}, a.output);
}

void RunPairSum(const BoundsArgs& a) {
  if (!a.m) DomainFailure("--m is required");
  const std::string value = ReadString([&](char* b, size_t c, size_t* need) {
    return kfree_pair_sum(static_cast<int>(a.n), a.r, *a.m, a.gamma ? 1 : 0,
                          a.gamma.value_or(0), b, c, need);
  });
  Table t = QuantityTable();
  t.rows.push_back({"pair_sum", value});
  Emit(t, {std::nullopt, std::nullopt, "bounds pairsum"}, a.output);
}

void RunKrMinus(const BoundsArgs& a) {
  const std::vector<int> sizes = ParseIntList(a.sizes, "--sizes");
  std::vector<int> class_of;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] < 0) DomainFailure("--sizes entries must be >= 0");
    class_of.insert(class_of.end(), sizes[c], static_cast<int>(c));
  }
  std::vector<int> pairs;
  std::stringstream stream(a.missing);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) DomainFailure("--missing: expected u-v, got '" + item + "'");
    const auto ends = ParseIntList(item.substr(0, dash) + "," + item.substr(dash + 1),
                                   "--missing");
    pairs.push_back(ends[0] - 1);
    pairs.push_back(ends[1] - 1);
  }
  if (pairs.empty()) DomainFailure("--missing is required");
  FamilyHandle family;
  Check(kfree_family_krminus(static_cast<int>(class_of.size()),
                             static_cast<int>(sizes.size()), class_of.data(),
                             pairs.data(), pairs.size() / 2, &family.ptr));
  const std::string json = ReadString([&](char* b, size_t c, size_t* need) {
    return kfree_family_to_json(family.ptr, b, c, need);
  });
  if (a.output.out.empty() || a.output.out == "-") {
    std::cout << json << '\n';
  } else {
    std::ofstream file(a.output.out, std::ios::binary | std::ios::trunc);
    file << json << '\n';
    if (!file) throw Failure{kExitIo, "--out: failed writing '" + a.output.out + "'"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kfree: exact and sampled statistics of K_{r+1}-free graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kfree_version()));

  ThresholdArgs thresholds;
  auto* th = app.add_subcommand("thresholds", "theta_r, m_r, p_r, ex and t_ell");
  th->add_option("--n", thresholds.n, "vertex count")->required();
  th->add_option("--r", thresholds.r, "clique parameter (forbids K_{r+1})");
  th->add_option("--ell", thresholds.ell, "odd-cycle parameter");
  AddOutputOptions(th, thresholds.output);

  CensusArgs census;
  auto* ce = app.add_subcommand("census", "exact census over all labeled graphs");
  ce->add_option("--n", census.n, "vertex count (<= 8)")->required();
  ce->add_option("--r", census.r, "clique parameter");
  ce->add_option("--shards", census.shards, "mask-range shards");
  ce->add_option("--jobs", census.jobs, "worker threads (0 = all cores)");
  ce->add_option("--cache-dir", census.cache_dir,
                 "census cache directory (default $KFREE_CACHE_DIR)");
  AddOutputOptions(ce, census.output);

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "r-partite fraction across a grid of m");
  sw->add_option("--n", sweep.n, "vertex count")->required();
  sw->add_option("--r", sweep.r, "clique parameter");
  sw->add_option("--m", sweep.m_grid, "comma list of m values, or auto");
  sw->add_option("--points", sweep.points, "auto grid size");
  sw->add_option("--engine", sweep.engine, "census or sampler")
      ->check(CLI::IsMember({"census", "sampler"}));
  sw->add_option("--shards", sweep.shards, "census shards");
  sw->add_option("--cache-dir", sweep.cache_dir,
                 "census cache directory (default $KFREE_CACHE_DIR)");
  AddChainOptions(sw, sweep.chain);
  AddOutputOptions(sw, sweep.output);

  SampleArgs sample;
  auto* sa = app.add_subcommand("sample", "edge-swap chain estimate at one m");
  sa->add_option("--n", sample.n, "vertex count (<= 32)")->required();
  sa->add_option("--r", sample.r, "clique parameter");
  sa->add_option("--m", sample.m, "edge count")->required();
  sa->add_option("--dump", sample.dump, "write sample lines to this file");
  sa->add_flag("--tv", sample.tv, "also report the TV diagnostic (n <= 7)");
  AddChainOptions(sa, sample.chain);
  AddOutputOptions(sa, sample.output);

  BoundsArgs bounds;
  auto* bo = app.add_subcommand("bounds", "probability bounds and their oracles");
  bo->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--raw", bounds.raw, "also print the unclamped value");
    AddOutputOptions(sub, bounds.output);
  };
  auto* janson = bo->add_subcommand("janson", "hypergeometric Janson upper bound");
  janson->add_option("--family", bounds.family, "family JSON file");
  janson->add_option("--m", bounds.m, "subset size");
  janson->add_option("--mu", bounds.mu, "first moment");
  janson->add_option("--delta", bounds.delta, "pair correlation");
  add_common(janson);
  auto* fkg = bo->add_subcommand("fkg", "hypergeometric FKG lower bound");
  fkg->add_option("--family", bounds.family, "family JSON file")->required();
  fkg->add_option("--m", bounds.m, "subset size")->required();
  fkg->add_option("--eta", bounds.eta, "slack in (0,1)");
  add_common(fkg);
  auto* exact = bo->add_subcommand("exact", "exact avoidance probability");
  exact->add_option("--family", bounds.family, "family JSON file")->required();
  exact->add_option("--m", bounds.m, "subset size")->required();
  add_common(exact);
  auto* hoeff = bo->add_subcommand("hoeffding", "(2 alpha^lambda)^d tail bound");
  hoeff->add_option("--alpha", bounds.alpha, "in (0,1)");
  hoeff->add_option("--lambda", bounds.lambda, "in (0,1)");
  hoeff->add_option("--d", bounds.d, "subset size");
  hoeff->add_option("--n", bounds.n, "ground size for the exact tail");
  add_common(hoeff);
  auto* dsets = bo->add_subcommand("dsets", "d-sets tail bound and tau");
  dsets->add_option("--k", bounds.k, "uniformity");
  dsets->add_option("--alpha", bounds.alpha, "in (0,1)");
  dsets->add_option("--lambda", bounds.lambda, "in (0,1)");
  dsets->add_option("--sizes", bounds.sizes, "comma list of class sizes")->required();
  dsets->add_option("--d", bounds.d, "subset size");
  add_common(dsets);
  auto* probe = bo->add_subcommand("probe", "P*m criticality indicator");
  probe->add_option("--n", bounds.n, "vertex count")->required();
  probe->add_option("--r", bounds.r, "clique parameter");
  probe->add_option("--m", bounds.m_real, "edge count (default m_r)");
  add_common(probe);
  auto* binom = bo->add_subcommand("binom", "bounds on C(a,c)/C(b,c)");
  binom->add_option("--a", bounds.a)->required();
  binom->add_option("--b", bounds.b)->required();
  binom->add_option("--c", bounds.c)->required();
  add_common(binom);
  auto* multi = bo->add_subcommand("multipartite", "ex(K(n_1..n_r), K_r)");
  multi->add_option("--sizes", bounds.sizes, "comma list of class sizes")->required();
  add_common(multi);
  auto* pairsum = bo->add_subcommand("pairsum", "sum of C(e(P), m) over partitions");
  pairsum->add_option("--n", bounds.n, "vertex count")->required();
  pairsum->add_option("--r", bounds.r, "number of classes");
  pairsum->add_option("--m", bounds.m, "edge count")->required();
  pairsum->add_option("--gamma", bounds.gamma, "balance restriction");
  add_common(pairsum);
  auto* krminus = bo->add_subcommand("krminus", "emit a K_{r+1}^- family as JSON");
  krminus->add_option("--sizes", bounds.sizes, "comma list of class sizes")->required();
  krminus->add_option("--missing", bounds.missing,
                      "comma list of 1-based pairs u-v inside classes")->required();
  krminus->add_option("--out", bounds.output.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (*th) RunThresholds(thresholds);
    if (*ce) RunCensusCommand(census);
    if (*sw) RunSweep(sweep);
    if (*sa) RunSample(sample);
    if (*janson) RunJanson(bounds);
    if (*fkg) RunFkg(bounds);
    if (*exact) RunExact(bounds);
    if (*hoeff) RunHoeffding(bounds);
    if (*dsets) RunDsets(bounds);
    if (*probe) RunProbe(bounds);
    if (*binom) RunBinom(bounds);
    if (*multi) RunMultipartite(bounds);
    if (*pairsum) RunPairSum(bounds);
    if (*krminus) RunKrMinus(bounds);
  } catch (const Failure& f) {
    std::cerr << "kfree: error: " << f.message << '\n';
    return f.exit_code;
  }
  return kExitOk;
}
