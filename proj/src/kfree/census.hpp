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

#ifndef KFREE_CENSUS_HPP_
#define KFREE_CENSUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kfree/numeric.hpp"

namespace kfree {

inline constexpr int kCensusMaxVertices = 8;
inline constexpr int kCensusFormatVersion = 1;

// Exact counts over all labeled graphs on n vertices with m edges.
struct CensusRow {
  int m = 0;
  std::uint64_t free_count = 0;         // K_{r+1}-free
  std::uint64_t free_and_rcol = 0;      // K_{r+1}-free and r-colorable
  std::uint64_t rcol_count = 0;         // r-colorable
  std::uint64_t unique_rcol_count = 0;  // exactly one proper set partition
  BigInt pair_sum = 0;                  // sum over partitions of C(e(Pi), m)

  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

struct CensusTable {
  int n = 0;
  int r = 0;
  std::vector<CensusRow> rows;  // indexed by m = 0..C(n,2)

  const CensusRow& row(int m) const;
  friend bool operator==(const CensusTable&, const CensusTable&) = default;
};

struct CensusOptions {
  int shards = 16;  // contiguous mask ranges, merged in shard order
  int jobs = 0;     // worker threads; 0 = hardware concurrency
};

// Enumerates every edge mask in [0, 2^{C(n,2)}). Requires n <= 8.
CensusTable RunCensus(int n, int r, const CensusOptions& options = {});

// free_and_rcol / free_count as an exact fraction.
Fraction FractionRPartite(const CensusTable& table, int m);

// Sum of C(e(Pi), m) over set partitions of [n] into at most r blocks,
// optionally restricted to the gamma-balanced ones. Guard r^n <= 1e8.
BigInt PairSum(int n, int r, int m, std::optional<double> gamma = {});

// Versioned, checksummed text file; see README for the layout.
void SaveCensus(const CensusTable& table, const std::string& path);
CensusTable LoadCensus(const std::string& path);
std::string SerializeCensus(const CensusTable& table);
CensusTable ParseCensus(const std::string& text);
void WriteCensusCsv(const CensusTable& table, std::ostream& out);

// Hex SHA-256 digest.
std::string Sha256Hex(const std::string& bytes);

}  // namespace kfree

#endif  // KFREE_CENSUS_HPP_
