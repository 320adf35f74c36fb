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

#include "probrep/random.hpp"

#include <cmath>

namespace probrep {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over (seed, stream); full avalanche, no shared state.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

Matrix complex_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

Matrix haar_unitary(int dim, std::mt19937_64& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
  Matrix g = complex_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: make the R diagonal real positive so Q is Haar.
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

Matrix haar_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(dim, rng);
}

PureState random_pure_state(int dim, std::mt19937_64& rng) {
  Vector g = complex_gaussian(dim, 1, rng).col(0);
  return PureState(g / g.norm());
}

PureState random_pure_state(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure_state(dim, rng);
}

HermitianOperator random_hermitian(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix g = complex_gaussian(dim, dim, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix g = complex_gaussian(dim, dim, rng);
  Matrix w = g * g.adjoint();
  return DensityMatrix(HermitianOperator(w / w.trace().real()));
}

PovmElement random_povm_element(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix v = haar_unitary(dim, rng);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  RealVector eigs(dim);
  for (int i = 0; i < dim; ++i) eigs[i] = uniform(rng);
  return PovmElement(HermitianOperator(v * eigs.asDiagonal() * v.adjoint()));
}

Measurement random_measurement(int dim, int outcomes, std::uint64_t seed) {
  if (outcomes < 1) throw std::invalid_argument("random_measurement: need >= 1 outcome");
  std::mt19937_64 rng(seed);
  std::vector<Matrix> parts;
  parts.reserve(static_cast<std::size_t>(outcomes));
  Matrix sum = Matrix::Zero(dim, dim);
  for (int i = 0; i < outcomes; ++i) {
    Matrix g = complex_gaussian(dim, dim, rng);
    parts.push_back(g * g.adjoint());
    sum += parts.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sum);
  Matrix inv_sqrt = solver.operatorInverseSqrt();
  std::vector<PovmElement> elements;
  elements.reserve(parts.size());
  for (auto& p : parts) {
    elements.emplace_back(HermitianOperator(inv_sqrt * p * inv_sqrt));
  }
  return Measurement(std::move(elements));
}

Measurement basis_measurement(const Matrix& unitary) {
  const int d = static_cast<int>(unitary.cols());
  std::vector<PovmElement> elements;
  elements.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    elements.emplace_back(HermitianOperator(unitary.col(i) * unitary.col(i).adjoint()));
  }
  return Measurement(std::move(elements));
}

Measurement computational_basis(int dim) { return basis_measurement(Matrix::Identity(dim, dim)); }

}  // namespace probrep
