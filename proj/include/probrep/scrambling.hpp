// Copyright 2026 The probrep developers
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

#pragma once

#include <vector>

#include "probrep/operators.hpp"

namespace probrep {

/// -log2 of the largest eigenvalue.
double min_entropy(const DensityMatrix& rho);

/// D(U) = | <psi| U rho U^dagger |psi> - 1/d |.
double d_psi(const Matrix& u, const PureState& psi, const DensityMatrix& rho);

/// Extension of d_psi to a POVM element through its eigendecomposition:
/// sum_j p_j D_{psi_j}(U).
double d_effect(const Matrix& u, const PovmElement& e, const DensityMatrix& rho);

/// Lipschitz constant 2^{-Hmin(rho) + 3/2} of d_psi with respect to the
/// Frobenius norm on unitaries.
double d_psi_lipschitz_bound(const DensityMatrix& rho);

/// Worst observed ratio |d_psi(U) - d_psi(U')| / (bound * ||U - U'||_F) over
/// random (U, U', psi) triples; must not exceed 1.
double lipschitz_audit(const DensityMatrix& rho, int trials, std::uint64_t seed);

/// Haar average bound 2^{-log2(d) - Hmin(rho)/2} for the mean of d_psi.
double haar_average_bound(const DensityMatrix& rho);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo mean of d_psi over Haar unitaries.
MonteCarloEstimate haar_average_mc(const PureState& psi, const DensityMatrix& rho, int samples,
                                   std::uint64_t seed);

/// Concentration threshold width: sqrt(768 (1 + ln(net_size)) / 2^n).
double delta_n(int n, std::size_t net_size);

/// Acceptance threshold for one net element: Delta(E) = 2^{-n} tr(E)
/// (2^{(1-n)/2} + delta_n).
double scramble_threshold(int n, const PovmElement& e, double delta);

/// Outcome of the randomized search for a scrambling unitary: a unitary for
/// which every net element's D value stays below its threshold, applied to
/// the triangular state of order 2^n.
struct ScrambleReport {
  int n = 0;
  int dim = 0;
  int tries = 0;
  bool found = false;
  std::uint64_t unitary_seed = 0;
  double max_ratio = 0.0;  // worst D / Delta over the net for the final unitary
  double d_bound = 0.0;    // 3 eta_n + sqrt(2) 2^{-n/2} + delta_n
};

/// Samples Haar unitaries (seed derived per try) until all net elements pass
/// their thresholds, or max_tries is exhausted (found = false, no throw).
/// Elements of larger dimension are compressed to the leading 2^n block.
/// eta_n < 0 selects the default decoding error 2^{-n+3}.
ScrambleReport scramble_search(int n, const std::vector<PovmElement>& net, int max_tries,
                               std::uint64_t seed, double eta_n = -1.0);

/// Random product POVM elements on C^{2^ceil(n/2)} (x) C^{2^floor(n/2)},
/// the net shape used by the scrambling experiments.
std::vector<PovmElement> random_product_net(int n, int count, std::uint64_t seed);

}  // namespace probrep
