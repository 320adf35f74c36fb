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

#include <cstdint>
#include <random>

#include "probrep/operators.hpp"

namespace probrep {

/// Deterministic derivation of per-stream seeds from a base seed. Used so
/// that parallelizable loops (net construction, search tries, audits) draw
/// independent randomness without sharing generator state.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Haar-distributed unitary on C^dim: orthonormalize a matrix of independent
/// standard complex Gaussians via QR and fix the R-diagonal phases.
Matrix haar_unitary(int dim, std::uint64_t seed);
Matrix haar_unitary(int dim, std::mt19937_64& rng);

/// Haar-uniform pure state: independent complex Gaussian vector, normalized.
PureState random_pure_state(int dim, std::uint64_t seed);
PureState random_pure_state(int dim, std::mt19937_64& rng);

/// GUE-style Hermitian matrix with O(1) entries.
HermitianOperator random_hermitian(int dim, std::uint64_t seed);

/// Full-rank random mixed state G G^dagger / tr(G G^dagger).
DensityMatrix random_density(int dim, std::uint64_t seed);

/// Random POVM element V diag(u_1..u_d) V^dagger with u_i uniform in [0,1].
PovmElement random_povm_element(int dim, std::uint64_t seed);

/// Random `outcomes`-element POVM: S^{-1/2} A_i S^{-1/2} for random PSD A_i
/// with S their sum.
Measurement random_measurement(int dim, int outcomes, std::uint64_t seed);

/// Rank-1 projective measurement onto the columns of a unitary.
Measurement basis_measurement(const Matrix& unitary);
Measurement computational_basis(int dim);

}  // namespace probrep
