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

#include "kfree/thresholds.hpp"

#include <cmath>
#include <string>

#include "kfree/errors.hpp"

namespace kfree {
namespace {

void CheckR(int r) {
  Require(r >= 2, ErrorKind::kDomain,
          "r must be at least 2 (got r=" + std::to_string(r) + ")");
}

void CheckLogDomain(double n) {
  Require(std::isfinite(n) && n > 1.0, ErrorKind::kDomain,
          "n must exceed 1 so that log n > 0 (got n=" + std::to_string(n) +
              ")");
}

// C(r+1, 2) - 1: edges of K_{r+1} with one edge removed.
double KrMinusEdges(int r) { return 0.5 * (r + 1) * r - 1.0; }

}  // namespace

double Theta(int r) {
  CheckR(r);
  const double rd = r;
  const double inner =
      rd * std::pow((2.0 * rd + 2.0) / (rd + 2.0), 1.0 / (rd - 1.0));
  return (rd - 1.0) / (2.0 * rd) * std::pow(inner, 2.0 / (rd + 2.0));
}

double ThresholdEdges(double n, int r) {
  CheckR(r);
  CheckLogDomain(n);
  const double rd = r;
  return Theta(r) * std::pow(n, 2.0 - 2.0 / (rd + 2.0)) *
         std::pow(std::log(n), 1.0 / KrMinusEdges(r));
}

double ThresholdDensity(double n, int r) {
  CheckR(r);
  CheckLogDomain(n);
  const double rd = r;
  // Evaluated in log space; the direct product underflows for large r.
  const double log_rhs = std::log((2.0 - 2.0 / (rd + 2.0)) * std::log(n)) +
                         (rd - 1.0) * std::log(rd / n);
  return std::exp(log_rhs / KrMinusEdges(r));
}

double OddCycleThreshold(double n, int ell) {
  Require(ell >= 2, ErrorKind::kDomain,
          "ell must be at least 2; the exponent 1/(ell-1) is undefined for "
          "ell=" + std::to_string(ell));
  CheckLogDomain(n);
  const double l = ell;
  const double log_base =
      std::log(l / (l - 1.0)) + l * std::log(n / 2.0) + std::log(std::log(n));
  return std::exp(log_base / (l - 1.0));
}

}  // namespace kfree
