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

#include "probrep/antisymmetric.hpp"

#include <cmath>

#include "probrep/random.hpp"

namespace probrep {

namespace {

int register_dim(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("antisymmetric example: n must be in 1..5");
  return 1 << n;
}

}  // namespace

Matrix swap_operator(int dim) {
  Matrix s = Matrix::Zero(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s(i * dim + j, j * dim + i) = 1.0;
  return s;
}

DensityMatrix antisymmetric_state(int n) {
  const int d = register_dim(n);
  const double rank = 0.5 * d * (d - 1);
  const Matrix projector =
      0.5 * (Matrix::Identity(d * d, d * d) - swap_operator(d));
  return DensityMatrix(HermitianOperator(projector / rank));
}

ProbabilityVector product_basis_distribution(int n, const Matrix& u) {
  const int d = register_dim(n);
  if (u.rows() != d || u.cols() != d) {
    throw std::invalid_argument("product_basis_distribution: unitary has wrong dimension");
  }
  // tr[(|u_x><u_x| (x) |u_y><u_y|)(1 - S)] = |u_x|^2 |u_y|^2 - |<u_x|u_y>|^2.
  const Matrix gram = u.adjoint() * u;
  const double norm = 0.5 * d * (d - 1);
  RealVector weights(d * d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      const double value =
          gram(x, x).real() * gram(y, y).real() - std::norm(gram(x, y));
      weights[x * d + y] = 0.5 * value / norm;
    }
  return ProbabilityVector::proper(std::move(weights));
}

double product_representation_gap(int n) {
  const int d = register_dim(n);
  const ProbabilityVector p = product_basis_distribution(n, Matrix::Identity(d, d));
  const double uniform = 1.0 / (static_cast<double>(d) * d);
  double sum = 0.0;
  for (int i = 0; i < p.size(); ++i) sum += std::abs(p[i] - uniform);
  return 0.5 * sum;
}

DensityMatrix conditional_state(int n, const PureState& outcome) {
  const int d = register_dim(n);
  if (outcome.dim() != d) throw std::invalid_argument("conditional_state: dimension mismatch");
  const Matrix complement = Matrix::Identity(d, d) - outcome.projector();
  return DensityMatrix(HermitianOperator(complement / static_cast<double>(d - 1)));
}

StateFamily random_target_family(int n) {
  const int d = register_dim(n);
  return StateFamily::product_with_free_factor(DensityMatrix::maximally_mixed(d), d);
}

std::vector<GapRow> robustness_gap_table(int n_max, std::uint64_t seed, int delta_max_n,
                                         int basis_samples) {
  if (n_max < 1 || n_max > 5) throw std::invalid_argument("robustness_gap_table: n_max in 1..5");
  if (delta_max_n > 3) throw std::invalid_argument("robustness_gap_table: delta column capped at n = 3");
  std::vector<GapRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    GapRow row;
    row.n = n;
    row.gap = product_representation_gap(n);

    const int d = register_dim(n);
    const DensityMatrix rho = antisymmetric_state(n);
    const DensityMatrix uniform_product = DensityMatrix::maximally_mixed(d * d);
    const MeasurementFamily product_family = MeasurementFamily::product_rank1_bases(
        d, d, SupStrategy::sample(basis_samples, derive_seed(seed, n)));
    row.d_product_lower_bound = d_m(rho, uniform_product, product_family);

    if (n <= delta_max_n) {
      InfOptions options;
      options.seed = derive_seed(seed, 100 + n);
      row.delta_floor = distance_to_family(rho, random_target_family(n), nullptr, options);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace probrep
