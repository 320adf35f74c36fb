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

#include "probrep/metrics.hpp"
#include "probrep/operators.hpp"

namespace probrep {

/// SWAP on C^dim (x) C^dim.
Matrix swap_operator(int dim);

/// Normalized projector onto the antisymmetric subspace of
/// C^{2^n} (x) C^{2^n}, built as (1 - SWAP)/2 over its rank. The joint state
/// of an n-bit register and its side information for which product-basis
/// statistics look perfectly random.
DensityMatrix antisymmetric_state(int n);

/// Outcome distribution of the antisymmetric state measured in the product
/// basis U (x) U: zero on the diagonal, uniform off it, for every unitary U.
///  Evaluated through tr[(P (x) Q)(1 - SWAP)] = tr(P)tr(Q) - tr(PQ), which
/// for rank-1 projectors reduces to Gram-matrix entries of the basis; this
/// avoids materializing the 4^n-dimensional measurement.
ProbabilityVector product_basis_distribution(int n, const Matrix& u);

/// Statistical distance between the product-basis distribution and the
/// uniform product distribution; equals 2^{-n}.
double product_representation_gap(int n);

/// State on the second factor conditioned on a rank-1 outcome |x> on the
/// first: (1 - |x><x|) / (2^n - 1).
DensityMatrix conditional_state(int n, const PureState& outcome);

/// One row of the non-robustness demonstration: the product-measurement
/// distance to the perfectly-random set shrinks as 2^{-n} while the trace
/// distance floor stays above 1/4.
struct GapRow {
  int n;
  double d_product_lower_bound;
  double gap;
  std::optional<InfResult> delta_floor;  // present for rows where the optimizer ran
};

/// Rows n = 1..n_max. The trace-distance column is computed for
/// n <= delta_max_n (optimizer cost grows quickly with dimension).
std::vector<GapRow> robustness_gap_table(int n_max, std::uint64_t seed, int delta_max_n = 2,
                                         int basis_samples = 200);

/// The perfectly-random target set for a 2^n-dimensional register: uniform
/// state on the register tensored with a free side-information factor.
StateFamily random_target_family(int n);

}  // namespace probrep
