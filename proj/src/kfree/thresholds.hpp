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

#ifndef KFREE_THRESHOLDS_HPP_
#define KFREE_THRESHOLDS_HPP_

// Closed-form threshold quantities for K_{r+1}-free graphs. All functions
// are pure and evaluate in double precision; log is the natural logarithm.
// Vertex counts are real-valued so thresholds can be plotted as functions.

namespace kfree {

// Leading constant of the sharp r-partiteness threshold. Requires r >= 2.
double Theta(int r);

// Threshold edge count theta_r * n^{2-2/(r+2)} * (log n)^{1/(C(r+1,2)-1)}.
// Requires n > 1 so that log n > 0, and r >= 2.
double ThresholdEdges(double n, int r);

// Density form p_r: the positive root of
//   (n/r)^{r-1} p^{C(r+1,2)-1} = (2 - 2/(r+2)) log n.
double ThresholdDensity(double n, int r);

// Odd-cycle analogue ((l/(l-1)) (n/2)^l log n)^{1/(l-1)}. Requires l >= 2.
double OddCycleThreshold(double n, int ell);

}  // namespace kfree

#endif  // KFREE_THRESHOLDS_HPP_
