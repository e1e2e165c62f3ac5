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

#include "doctest.h"
#include "kfree/errors.hpp"
#include "kfree/thresholds.hpp"
#include "kfree/turan.hpp"

namespace kfree {
namespace {

double RelErr(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool ThrowsDomain(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::kDomain;
  }
  return false;
}

TEST_CASE("theta at r=2 is sqrt(3)/4") {
  CHECK(RelErr(Theta(2), std::sqrt(3.0) / 4) <= 1e-15);
}

TEST_CASE("theta at r=3 matches the 40-digit fixture") {
  CHECK(RelErr(Theta(3), 0.56826543893588387956) <= 1e-14);
}

TEST_CASE("theta rejects r below 2") {
  CHECK(ThrowsDomain([] { Theta(1); }));
  CHECK(ThrowsDomain([] { Theta(-3); }));
}

TEST_CASE("threshold edge count at n=e has unit log factor") {
  const double e = std::exp(1.0);
  CHECK(RelErr(ThresholdEdges(e, 2), Theta(2) * std::pow(e, 1.5)) <= 1e-14);
}

TEST_CASE("threshold edge count at r=2 n=1e4") {
  const double expected = Theta(2) * 1e6 * std::sqrt(std::log(1e4));
  CHECK(RelErr(ThresholdEdges(1e4, 2), expected) <= 1e-13);
  CHECK(RelErr(ThresholdEdges(100, 2),
               std::sqrt(3.0) / 4 * 1000 * std::sqrt(std::log(100.0))) <= 1e-13);
}

TEST_CASE("edge count equals (1-1/r) n^2/2 times density") {
  for (double n : {1e3, 1e4, 1e5}) {
    for (int r : {2, 3, 4, 5}) {
      const double lhs = ThresholdEdges(n, r);
      const double rhs = (1 - 1.0 / r) * n * n / 2 * ThresholdDensity(n, r);
      CHECK(RelErr(lhs, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("density solves its defining relation") {
  for (double n : {10.0, 1e3, 1e4, 1e6}) {
    for (int r = 2; r <= 6; ++r) {
      const int k = r * (r + 1) / 2 - 1;
      const double p = ThresholdDensity(n, r);
      const double lhs = std::pow(n / r, r - 1) * std::pow(p, k);
      const double rhs = (2 - 2.0 / (r + 2)) * std::log(n);
      CHECK(RelErr(lhs, rhs) <= 1e-9);
    }
  }
}

TEST_CASE("density at log n = 1") {
  const double e = std::exp(1.0);
  CHECK(RelErr(ThresholdDensity(e, 2), std::sqrt(1.5 * 2 / e)) <= 1e-14);
}

TEST_CASE("odd-cycle threshold") {
  CHECK(RelErr(OddCycleThreshold(100, 2), 2 * 2500 * std::log(100.0)) <= 1e-13);
  CHECK(RelErr(OddCycleThreshold(100, 3),
               std::sqrt(1.5 * 125000 * std::log(100.0))) <= 1e-13);
  CHECK(ThrowsDomain([] { OddCycleThreshold(100, 1); }));
  CHECK(ThrowsDomain([] { OddCycleThreshold(100, 0); }));
}

TEST_CASE("log-domain guards") {
  CHECK(ThrowsDomain([] { ThresholdEdges(1, 2); }));
  CHECK(ThrowsDomain([] { ThresholdDensity(0.5, 3); }));
  CHECK(ThrowsDomain([] { ThresholdEdges(100, 1); }));
  CHECK(ThrowsDomain([] { ThresholdEdges(NAN, 2); }));
}

TEST_CASE("theta lies in (0,1)") {
  for (int r = 2; r <= 20; ++r) {
    CHECK(Theta(r) > 0);
    CHECK(Theta(r) < 1);
  }
}

TEST_CASE("edge threshold increases with n") {
  for (int r = 2; r <= 6; ++r) {
    double previous = ThresholdEdges(10, r);
    for (double n = 11; n <= 1e6; n *= 1.07) {
      const double current = ThresholdEdges(n, r);
      CHECK(current > previous);
      previous = current;
    }
  }
}

TEST_CASE("edge threshold stays below the Turan number from n=100") {
  for (int r = 2; r <= 5; ++r) {
    for (int n = 100; n <= 100000; n = n * 3 / 2) {
      CHECK(ThresholdEdges(n, r) < static_cast<double>(ExTuran(n, r + 1)));
    }
  }
}

}  // namespace
}  // namespace kfree
