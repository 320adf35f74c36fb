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

#include "probrep/spectral.hpp"

#include <cmath>

#include "probrep/random.hpp"

namespace probrep {

DensityMatrix flat_state(int m, int dim) {
  if (m < 1 || m > dim) throw std::invalid_argument("flat_state: need 1 <= m <= dim");
  Matrix d = Matrix::Zero(dim, dim);
  for (int k = 0; k < m; ++k) d(k, k) = 1.0 / static_cast<double>(m);
  return DensityMatrix(HermitianOperator(std::move(d)));
}

DensityMatrix triangular_state(int n, int dim) {
  if (n < 1 || n > dim) throw std::invalid_argument("triangular_state: need 1 <= n <= dim");
  Matrix d = Matrix::Zero(dim, dim);
  const double denom = static_cast<double>(n) * (n + 1);
  for (int k = 0; k < n; ++k) d(k, k) = 2.0 * (n - k) / denom;
  return DensityMatrix(HermitianOperator(std::move(d)));
}

std::vector<Rational> flat_spectrum_exact(int m, int dim) {
  if (m < 1 || m > dim) throw std::invalid_argument("flat_spectrum_exact: need 1 <= m <= dim");
  std::vector<Rational> spec(static_cast<std::size_t>(dim), Rational(0));
  for (int k = 0; k < m; ++k) spec[static_cast<std::size_t>(k)] = Rational(1, m);
  return spec;
}

std::vector<Rational> triangular_spectrum_exact(int n, int dim) {
  if (n < 1 || n > dim) throw std::invalid_argument("triangular_spectrum_exact: need 1 <= n <= dim");
  std::vector<Rational> spec(static_cast<std::size_t>(dim), Rational(0));
  const BigInt denom = BigInt(n) * (n + 1);
  for (int k = 0; k < n; ++k) {
    spec[static_cast<std::size_t>(k)] = Rational(2 * BigInt(n - k), denom);
  }
  return spec;
}

double spectral_distance(const RealVector& p, const RealVector& q) {
  const Eigen::Index len = std::max(p.size(), q.size());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < len; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    sum += std::abs(a - b);
  }
  return sum;
}

Rational spectral_distance_exact(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  const std::size_t len = std::max(p.size(), q.size());
  Rational sum = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const Rational a = i < p.size() ? p[i] : Rational(0);
    const Rational b = i < q.size() ? q[i] : Rational(0);
    sum += boost::multiprecision::abs(a - b);
  }
  return sum;
}

AirplaneScan airplane_scan(int n) {
  if (n < 1 || n > (1 << 12)) throw std::invalid_argument("airplane_scan: need 1 <= n <= 4096");
  using boost::multiprecision::int128_t;

  // Triangular weight over common denominator n(n+1)m: 2(n-k)m.
  // Flat weight over the same denominator: n(n+1).
  const std::int64_t nn1 = static_cast<std::int64_t>(n) * (n + 1);

  AirplaneScan best;
  best.n = n;
  int128_t best_num = 0;
  std::int64_t best_den = 0;

  for (int m = 1; m <= 4 * n; ++m) {
    const std::int64_t den = nn1 * m;
    int128_t sum = 0;
    const int len = std::max(n, m);
    for (int k = 0; k < len; ++k) {
      const std::int64_t tri = (k < n) ? 2 * static_cast<std::int64_t>(n - k) * m : 0;
      const std::int64_t flat = (k < m) ? nn1 : 0;
      sum += tri >= flat ? int128_t(tri - flat) : int128_t(flat - tri);
    }
    // Cross-multiplied exact comparison: sum/den < best_num/best_den.
    if (best_den == 0 || sum * best_den < best_num * den) {
      best_num = sum;
      best_den = den;
      best.argmin = m;
    }
  }
  best.min = Rational(BigInt(best_num), BigInt(best_den));
  return best;
}

TracelessWitness::TracelessWitness(HermitianOperator a) : a_(std::move(a)) {
  const double trace = a_.matrix().trace().real();
  if (std::abs(trace) > tolerances().exact) {
    throw std::invalid_argument("TracelessWitness: trace " + std::to_string(trace) + " != 0");
  }
  const RealVector eigs = spectrum(a_);
  const double positive_part = eigs.cwiseMax(0.0).sum();
  if (positive_part > 1.0 / 11.0 + tolerances().exact) {
    throw std::invalid_argument("TracelessWitness: tr(A_+) = " + std::to_string(positive_part) +
                                " exceeds 1/11");
  }
}

TracelessWitness random_traceless_witness(int dim, std::uint64_t seed) {
  const HermitianOperator raw = random_hermitian(dim, seed);
  Matrix centered = raw.matrix();
  centered -= (centered.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  const RealVector eigs = hermitian_spectrum(centered);
  const double positive_part = eigs.cwiseMax(0.0).sum();
  if (positive_part > 0.0) {
    // Land just inside the cap; the margin absorbs the rescaling round-off.
    centered *= (1.0 / 11.0) * (1.0 - 1e-12) / positive_part;
  }
  return TracelessWitness(HermitianOperator(std::move(centered)));
}

std::pair<DensityMatrix, DensityMatrix> witness_pair(const TracelessWitness& witness,
                                                     int pointer_index, int working_dim) {
  const int a_dim = witness.dim();
  if (pointer_index < 0) throw std::invalid_argument("witness_pair: bad pointer index");
  int dim = working_dim > 0 ? working_dim : std::max(a_dim, pointer_index + 1);
  if (dim < a_dim || pointer_index >= dim) {
    throw std::invalid_argument("witness_pair: working dimension too small");
  }

  Matrix a = Matrix::Zero(dim, dim);
  a.topLeftCorner(a_dim, a_dim) = witness.op().matrix();
  const auto [plus, minus] = pos_neg_parts(HermitianOperator(a));
  const double tr_plus = plus.matrix().trace().real();
  const double tr_minus = minus.matrix().trace().real();

  Matrix pointer = Matrix::Zero(dim, dim);
  pointer(pointer_index, pointer_index) = 1.0;

  Matrix rho = pointer * (1.0 - tr_plus) + plus.matrix();
  Matrix sigma = pointer * (1.0 + tr_minus) - minus.matrix();
  return {DensityMatrix::clamped(HermitianOperator(std::move(rho))),
          DensityMatrix::clamped(HermitianOperator(std::move(sigma)))};
}

}  // namespace probrep
