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

#include "kfree/census.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

#include "kfree/errors.hpp"
#include "kfree/graph.hpp"
#include "kfree/parallel.hpp"

namespace kfree {
namespace {

// Rows of the adjacency matrix packed one byte per vertex.
using PackedAdjacency = std::array<std::uint8_t, kCensusMaxVertices>;

constexpr int kHalfBits = 14;

struct MaskTables {
  // Packed adjacency contribution of the low and high halves of a mask.
  std::vector<std::uint64_t> low;
  std::vector<std::uint64_t> high;
};

MaskTables BuildTables(int n) {
  std::vector<std::uint64_t> pair_bits;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      pair_bits.push_back((std::uint64_t{1} << (8 * u + v)) |
                          (std::uint64_t{1} << (8 * v + u)));
    }
  }
  pair_bits.resize(2 * kHalfBits, 0);
  MaskTables t;
  t.low.resize(std::size_t{1} << kHalfBits);
  t.high.resize(std::size_t{1} << kHalfBits);
  for (std::uint32_t x = 0; x < (1u << kHalfBits); ++x) {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    for (int b = 0; b < kHalfBits; ++b) {
      if ((x >> b) & 1u) {
        lo |= pair_bits[b];
        hi |= pair_bits[kHalfBits + b];
      }
    }
    t.low[x] = lo;
    t.high[x] = hi;
  }
  return t;
}

bool PackedClique(const PackedAdjacency& adj, std::uint32_t cand, int k) {
  if (k <= 0) return true;
  if (std::popcount(cand) < k) return false;
  if (k == 1) return true;
  while (cand != 0) {
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    if (PackedClique(adj, cand & adj[v], k - 1)) return true;
  }
  return false;
}

// Counts proper colourings as set partitions into at most r blocks, stopping
// once two have been seen.
int PackedColorings(const PackedAdjacency& adj, int n, int r, int v,
                    int used, std::array<std::uint8_t, 8>& classes,
                    int found) {
  if (v == n) return found + 1;
  const int limit = std::min(used + 1, r);
  for (int c = 0; c < limit && found < 2; ++c) {
    if ((classes[c] & adj[v]) != 0) continue;
    classes[c] |= static_cast<std::uint8_t>(1u << v);
    found = PackedColorings(adj, n, r, v + 1, std::max(used, c + 1), classes,
                            found);
    classes[c] &= static_cast<std::uint8_t>(~(1u << v));
  }
  return found;
}

struct ShardCounts {
  std::vector<std::uint64_t> free_count;
  std::vector<std::uint64_t> free_and_rcol;
  std::vector<std::uint64_t> rcol;
  std::vector<std::uint64_t> unique_rcol;

  explicit ShardCounts(int pairs)
      : free_count(pairs + 1, 0),
        free_and_rcol(pairs + 1, 0),
        rcol(pairs + 1, 0),
        unique_rcol(pairs + 1, 0) {}
};

void CountRange(int n, int r, const MaskTables& tables, std::uint64_t begin,
                std::uint64_t end, ShardCounts& out) {
  const std::uint32_t all = (1u << n) - 1;
  const std::uint64_t low_mask = (std::uint64_t{1} << kHalfBits) - 1;
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    const std::uint64_t packed =
        tables.low[mask & low_mask] | tables.high[mask >> kHalfBits];
    PackedAdjacency adj;
    for (int v = 0; v < kCensusMaxVertices; ++v) {
      adj[v] = static_cast<std::uint8_t>(packed >> (8 * v));
    }
    const int m = std::popcount(mask);
    const bool is_free = !PackedClique(adj, all, r + 1);
    int colorings = 0;
    if (n == 0) {
      colorings = 1;
    } else {
      std::array<std::uint8_t, 8> classes{};
      classes[0] = 1;
      colorings = PackedColorings(adj, n, r, 1, 1, classes, 0);
    }
    if (is_free) {
      ++out.free_count[m];
      if (colorings > 0) ++out.free_and_rcol[m];
    }
    if (colorings > 0) ++out.rcol[m];
    if (colorings == 1) ++out.unique_rcol[m];
  }
}

BigInt Binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::uint64_t ParseU64(std::string_view text, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  Require(ec == std::errc() && ptr == text.data() + text.size() &&
              !text.empty(),
          ErrorKind::kCorrupt,
          std::string("census file: bad ") + what + " field '" +
              std::string(text) + "'");
  return value;
}

std::string HeaderLine(int n, int r) {
  return "KFREE-CENSUS v" + std::to_string(kCensusFormatVersion) +
         " n=" + std::to_string(n) + " r=" + std::to_string(r);
}

}  // namespace

const CensusRow& CensusTable::row(int m) const {
  Require(m >= 0 && m < static_cast<int>(rows.size()), ErrorKind::kDomain,
          "m=" + std::to_string(m) + " is outside [0, C(n,2)]");
  return rows[m];
}

CensusTable RunCensus(int n, int r, const CensusOptions& options) {
  Require(n >= 0 && n <= kCensusMaxVertices, ErrorKind::kSize,
          "exact census supports n <= 8 (got n=" + std::to_string(n) +
              "); use the sampler for larger n");
  Require(r >= 1, ErrorKind::kDomain, "r must be >= 1");
  Require(options.shards >= 1, ErrorKind::kDomain, "shards must be >= 1");
  const int pairs = PairCount(n);
  const std::uint64_t total = std::uint64_t{1} << pairs;
  const MaskTables tables = BuildTables(n);

  const int shards = options.shards;
  std::vector<ShardCounts> results(shards, ShardCounts(pairs));
  ParallelFor(shards, options.jobs, [&](int s) {
    const std::uint64_t begin = total * s / shards;
    const std::uint64_t end = total * (s + 1) / shards;
    CountRange(n, r, tables, begin, end, results[s]);
  });

  std::map<std::int64_t, std::uint64_t> cross_histogram;
  ForEachPartition(n, r, [&](const std::vector<int>& colors) {
    ++cross_histogram[Partition(r, colors).cross_pairs()];
  });

  CensusTable table{n, r, {}};
  table.rows.resize(pairs + 1);
  for (int m = 0; m <= pairs; ++m) {
    CensusRow& row = table.rows[m];
    row.m = m;
    for (const ShardCounts& s : results) {
      row.free_count += s.free_count[m];
      row.free_and_rcol += s.free_and_rcol[m];
      row.rcol_count += s.rcol[m];
      row.unique_rcol_count += s.unique_rcol[m];
    }
    for (const auto& [cross, count] : cross_histogram) {
      row.pair_sum += Binomial(cross, m) * count;
    }
  }
  return table;
}

Fraction FractionRPartite(const CensusTable& table, int m) {
  const CensusRow& row = table.row(m);
  Require(row.free_count > 0, ErrorKind::kUndefined,
          "no K_{r+1}-free graphs with m=" + std::to_string(m) +
              " edges; the fraction is undefined");
  return Fraction(static_cast<std::int64_t>(row.free_and_rcol),
                  static_cast<std::int64_t>(row.free_count));
}

BigInt PairSum(int n, int r, int m, std::optional<double> gamma) {
  Require(m >= 0, ErrorKind::kDomain, "m must be >= 0");
  std::optional<BalanceSpec> band;
  if (gamma) band.emplace(*gamma, r);
  std::map<std::int64_t, std::uint64_t> cross_histogram;
  ForEachPartition(n, r, [&](const std::vector<int>& colors) {
    const Partition p(r, colors);
    if (band && !IsBalanced(p, *band)) return;
    ++cross_histogram[p.cross_pairs()];
  });
  BigInt total = 0;
  for (const auto& [cross, count] : cross_histogram) {
    total += Binomial(cross, m) * count;
  }
  return total;
}

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  Require(EVP_Digest(bytes.data(), bytes.size(), digest, &length,
                     EVP_sha256(), nullptr) == 1,
          ErrorKind::kIo, "SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string SerializeCensus(const CensusTable& table) {
  std::string body = HeaderLine(table.n, table.r) + "\n";
  for (const CensusRow& row : table.rows) {
    body += std::to_string(row.m) + "," + std::to_string(row.free_count) +
            "," + std::to_string(row.free_and_rcol) + "," +
            std::to_string(row.rcol_count) + "," +
            std::to_string(row.unique_rcol_count) + "," +
            row.pair_sum.str() + "\n";
  }
  return body + "checksum=" + Sha256Hex(body) + "\n";
}

CensusTable ParseCensus(const std::string& text) {
  const auto first_newline = text.find('\n');
  Require(first_newline != std::string::npos, ErrorKind::kCorrupt,
          "census file: missing header");
  const std::string header = text.substr(0, first_newline);
  int version = 0;
  int n = -1;
  int r = -1;
  {
    const std::string prefix = "KFREE-CENSUS v";
    Require(header.rfind(prefix, 0) == 0, ErrorKind::kCorrupt,
            "census file: not a census file (header '" + header + "')");
    std::istringstream fields(header.substr(prefix.size()));
    std::string n_field;
    std::string r_field;
    fields >> version >> n_field >> r_field;
    Require(!fields.fail(), ErrorKind::kCorrupt,
            "census file: malformed header '" + header + "'");
    Require(version == kCensusFormatVersion, ErrorKind::kVersion,
            "census file: schema version " + std::to_string(version) +
                " is not supported (expected v" +
                std::to_string(kCensusFormatVersion) + ")");
    Require(n_field.rfind("n=", 0) == 0 && r_field.rfind("r=", 0) == 0,
            ErrorKind::kCorrupt, "census file: malformed header '" + header + "'");
    n = static_cast<int>(ParseU64(std::string_view(n_field).substr(2), "n"));
    r = static_cast<int>(ParseU64(std::string_view(r_field).substr(2), "r"));
  }

  const auto checksum_pos = text.rfind("checksum=");
  Require(checksum_pos != std::string::npos && checksum_pos > 0 &&
              text[checksum_pos - 1] == '\n',
          ErrorKind::kCorrupt, "census file: missing checksum (truncated?)");
  std::string stored = text.substr(checksum_pos + 9);
  Require(!stored.empty() && stored.back() == '\n', ErrorKind::kCorrupt,
          "census file: truncated checksum line");
  stored.pop_back();
  const std::string body = text.substr(0, checksum_pos);
  Require(stored == Sha256Hex(body), ErrorKind::kCorrupt,
          "census file: checksum mismatch");

  Require(n >= 0 && n <= kCensusMaxVertices && r >= 1, ErrorKind::kCorrupt,
          "census file: header parameters out of range");
  CensusTable table{n, r, {}};
  std::istringstream lines(body.substr(first_newline + 1));
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    Require(fields.size() == 6, ErrorKind::kCorrupt,
            "census file: row '" + line + "' must have 6 fields");
    CensusRow row;
    row.m = static_cast<int>(ParseU64(fields[0], "m"));
    row.free_count = ParseU64(fields[1], "free");
    row.free_and_rcol = ParseU64(fields[2], "free_rcol");
    row.rcol_count = ParseU64(fields[3], "rcol");
    row.unique_rcol_count = ParseU64(fields[4], "unique_rcol");
    Require(!fields[5].empty() &&
                fields[5].find_first_not_of("0123456789") ==
                    std::string_view::npos,
            ErrorKind::kCorrupt, "census file: bad pair_sum field");
    row.pair_sum = BigInt(std::string(fields[5]));
    Require(row.m == static_cast<int>(table.rows.size()), ErrorKind::kCorrupt,
            "census file: rows out of order");
    table.rows.push_back(std::move(row));
  }
  Require(static_cast<int>(table.rows.size()) == PairCount(n) + 1,
          ErrorKind::kCorrupt, "census file: wrong number of rows");
  return table;
}

void SaveCensus(const CensusTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(out.good(), ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out << SerializeCensus(table);
  out.flush();
  Require(out.good(), ErrorKind::kIo, "failed writing '" + path + "'");
}

CensusTable LoadCensus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorKind::kIo, "cannot open '" + path + "' for reading");
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return ParseCensus(text);
}

void WriteCensusCsv(const CensusTable& table, std::ostream& out) {
  out << "m,free,free_rcol,rcol,unique_rcol,pair_sum\n";
  for (const CensusRow& row : table.rows) {
    out << row.m << ',' << row.free_count << ',' << row.free_and_rcol << ','
        << row.rcol_count << ',' << row.unique_rcol_count << ','
        << row.pair_sum.str() << '\n';
  }
}

}  // namespace kfree
