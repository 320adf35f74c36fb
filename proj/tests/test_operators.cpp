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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "probrep/operators.hpp"
#include "probrep/random.hpp"

using namespace probrep;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

DensityMatrix singlet() {
  Vector psi = Vector::Zero(4);
  psi[1] = 1.0 / std::numbers::sqrt2;
  psi[2] = -1.0 / std::numbers::sqrt2;
  return PureState(psi).to_density();
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("spectrum: identity and diagonal cases") {
  CHECK(spectrum(HermitianOperator::identity(2)).isApprox(RealVector::Constant(2, 1.0)));

  Matrix d = Matrix::Zero(4, 4);
  d(0, 0) = 0.1;
  d(1, 1) = 0.3;
  d(2, 2) = 0.4;
  d(3, 3) = 0.2;
  const RealVector eigs = spectrum(HermitianOperator(d));
  CHECK(eigs[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(eigs[2] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(eigs[3] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("spectrum: invariant under Haar conjugation") {
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 7;
    const HermitianOperator a = random_hermitian(dim, 100 + trial);
    const Matrix u = haar_unitary(dim, 200 + trial);
    const RealVector before = spectrum(a);
    const RealVector after = hermitian_spectrum(Matrix(u * a.matrix() * u.adjoint()));
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("spectrum: rejects non-finite input") {
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HermitianOperator{bad}, std::invalid_argument);
}

TEST_CASE("trace_norm: zero, projector difference, singlet") {
  CHECK(trace_norm(HermitianOperator::zero(3)) == 0.0);
  CHECK(trace_norm(HermitianOperator(diag2(1.0, -1.0))) == doctest::Approx(2.0));

  const Matrix deviation = singlet().matrix() - Matrix::Identity(4, 4) / 4.0;
  CHECK(trace_norm(deviation) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("trace_norm: norm axioms on random operators") {
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 5;
    const HermitianOperator a = random_hermitian(dim, 300 + trial);
    const HermitianOperator b = random_hermitian(dim, 400 + trial);
    const double scale = -2.5;
    CHECK(trace_norm(Matrix(a.matrix() + b.matrix())) <=
          trace_norm(a) + trace_norm(b) + 1e-9);
    CHECK(trace_norm(Matrix(scale * a.matrix())) ==
          doctest::Approx(std::abs(scale) * trace_norm(a)).epsilon(1e-9));
  }
}

TEST_CASE("pos_neg_parts: diagonal split and PSD passthrough") {
  const auto [plus, minus] = pos_neg_parts(HermitianOperator(diag2(1.0, -2.0)));
  CHECK((plus.matrix() - diag2(1.0, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((minus.matrix() - diag2(0.0, -2.0)).cwiseAbs().maxCoeff() < 1e-12);

  const DensityMatrix rho = random_density(4, 11);
  const auto [p2, m2] = pos_neg_parts(rho.base());
  CHECK((p2.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(trace_norm(m2) < 1e-10);
}

TEST_CASE("pos_neg_parts: reconstruction, orthogonality, trace identity") {
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 6;
    const HermitianOperator a = random_hermitian(dim, 500 + trial);
    const auto [plus, minus] = pos_neg_parts(a);
    CHECK((plus.matrix() + minus.matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((plus.matrix() * minus.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(trace_norm(a) ==
          doctest::Approx(plus.matrix().trace().real() - minus.matrix().trace().real())
              .epsilon(1e-10));
  }
}

TEST_CASE("born_rule: computational basis and singlet product statistics") {
  const Measurement basis = computational_basis(2);
  const ProbabilityVector p = born_rule(basis, DensityMatrix::basis_state(2, 0));
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));

  const Measurement product = computational_basis(4);  // comp basis (x) comp basis
  const ProbabilityVector q = born_rule(product, singlet());
  CHECK(q[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q[3] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("born_rule: weights sum to the trace") {
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 4;
    const Measurement m = random_measurement(dim, 3 + trial % 4, 600 + trial);
    const HermitianOperator a = random_hermitian(dim, 700 + trial);
    const ProbabilityVector p = born_rule(m, a);
    CHECK(p.weights().sum() == doctest::Approx(a.matrix().trace().real()).epsilon(1e-10));

    // Traceless input: weights sum to zero.
    Matrix traceless = a.matrix();
    traceless -= (traceless.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
    const ProbabilityVector z = born_rule(m, HermitianOperator(traceless));
    CHECK(std::abs(z.weights().sum()) < 1e-10);
    CHECK(z.is_signed());
  }
}

TEST_CASE("born_rule: dimension mismatch throws") {
  CHECK_THROWS_AS(born_rule(computational_basis(2), DensityMatrix::maximally_mixed(3)),
                  std::invalid_argument);
}

TEST_CASE("tensor: identities, rank-1 placement, trace multiplicativity") {
  const HermitianOperator id2 = HermitianOperator::identity(2);
  CHECK((tensor(id2, id2).matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  const Matrix p01 = tensor(HermitianOperator(diag2(1.0, 0.0)),
                            HermitianOperator(diag2(0.0, 1.0)))
                         .matrix();
  CHECK(p01(1, 1).real() == doctest::Approx(1.0));
  CHECK(p01.trace().real() == doctest::Approx(1.0));

  for (int trial = 0; trial < 10; ++trial) {
    const HermitianOperator a = random_hermitian(2, 800 + trial);
    const HermitianOperator b = random_hermitian(3, 900 + trial);
    CHECK(tensor(a, b).matrix().trace().real() ==
          doctest::Approx(a.matrix().trace().real() * b.matrix().trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("haar_unitary: unitarity, determinism, dim 1 phase") {
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 1 + trial % 8;
    const Matrix u = haar_unitary(dim, 1000 + trial);
    CHECK((u.adjoint() * u - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK(haar_unitary(5, 42) == haar_unitary(5, 42));
  CHECK(std::abs(std::abs(haar_unitary(1, 7)(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("haar_unitary: first-column overlap follows Beta(1, d-1)") {
  // One-sample Kolmogorov-Smirnov of |<0|U|0>|^2 against the known induced
  // law, CDF 1 - (1-x)^{d-1}. The independent Gaussian-normalization sampler
  // gives the same law; both streams must pass.
  const int dim = 4;
  const int draws = 10000;
  auto ks_statistic = [&](auto&& sampler) {
    std::vector<double> values(draws);
    for (int i = 0; i < draws; ++i) values[i] = sampler(i);
    std::sort(values.begin(), values.end());
    double worst = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double cdf = 1.0 - std::pow(1.0 - values[i], dim - 1);
      worst = std::max(worst, std::abs(cdf - (i + 1.0) / draws));
      worst = std::max(worst, std::abs(cdf - static_cast<double>(i) / draws));
    }
    return worst;
  };
  const double d_unitary = ks_statistic([&](int i) {
    return std::norm(haar_unitary(dim, derive_seed(99, i))(0, 0));
  });
  const double d_gaussian = ks_statistic([&](int i) {
    return std::norm(random_pure_state(dim, derive_seed(1234, i)).amplitudes()[0]);
  });
  // Critical value at significance 0.01: 1.628 / sqrt(n).
  const double critical = 1.628 / std::sqrt(static_cast<double>(draws));
  CHECK(d_unitary < critical);
  CHECK(d_gaussian < critical);
}

TEST_CASE("restrict_measurement: identity projector is a no-op") {
  const Measurement m = random_measurement(4, 3, 1100);
  const auto restricted = restrict_measurement(m, HermitianOperator::identity(4));
  REQUIRE(restricted.measurement.outcomes() == 3);
  for (int i = 0; i < 3; ++i) {
    const Matrix back = restricted.isometry * restricted.measurement.element(i).matrix() *
                        restricted.isometry.adjoint();
    CHECK((back - m.element(i).matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("restrict_measurement: rank-1 projector gives scalars summing to 1") {
  const Measurement m = random_measurement(4, 5, 1200);
  const PureState direction = random_pure_state(4, 1201);
  const auto restricted = restrict_measurement(m, HermitianOperator(direction.projector()));
  double total = 0.0;
  for (const auto& e : restricted.measurement.elements()) {
    REQUIRE(e.dim() == 1);
    const double value = e.matrix()(0, 0).real();
    CHECK(value >= -1e-10);
    CHECK(value <= 1.0 + 1e-10);
    total += value;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("restrict_measurement: statistics match compressed states") {
  // For rho supported inside Pi, measuring the restricted measurement on the
  // compressed state equals measuring the original on rho.
  const Measurement m = random_measurement(6, 4, 1300);
  Matrix basis = haar_unitary(6, 1301).leftCols(2);
  const HermitianOperator pi(basis * basis.adjoint());
  const auto restricted = restrict_measurement(m, pi);

  const DensityMatrix small = random_density(2, 1302);
  const Matrix embedded = restricted.isometry * small.matrix() * restricted.isometry.adjoint();
  const DensityMatrix rho = DensityMatrix::clamped(HermitianOperator(embedded));

  const Matrix compressed =
      restricted.isometry.adjoint() * rho.matrix() * restricted.isometry;
  const ProbabilityVector direct = born_rule(m, rho);
  const ProbabilityVector reduced =
      born_rule(restricted.measurement, DensityMatrix::clamped(HermitianOperator(compressed)));
  CHECK((direct.weights() - reduced.weights()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("restrict_measurement: non-idempotent matrix rejected") {
  CHECK_THROWS_AS(
      restrict_measurement(computational_basis(2), HermitianOperator(diag2(0.5, 0.5))),
      std::invalid_argument);
}

TEST_CASE("gentle_measurement_check: support projector and plus-state case") {
  const DensityMatrix rho = random_density(3, 1400);
  const auto [lhs_full, rhs_full] = gentle_measurement_check(rho, HermitianOperator::identity(3));
  CHECK(lhs_full == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(rhs_full == doctest::Approx(0.0).epsilon(1e-7));

  // |+><+| compressed to |0><0|: direct 2x2 diagonalization gives
  // ||rho - Pi rho Pi||_1 = sqrt(5)/2 and 2 sqrt(1 - 1/2) = sqrt(2).
  Vector plus(2);
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  const auto [lhs, rhs] =
      gentle_measurement_check(PureState(plus).to_density(), HermitianOperator(diag2(1.0, 0.0)));
  CHECK(lhs == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-10));
  CHECK(rhs == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
  CHECK(lhs <= rhs + 1e-9);
}

TEST_CASE("gentle_measurement_check: randomized audit") {
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + trial % 15;
    const DensityMatrix rho = random_density(dim, 2000 + trial);
    const int rank = 1 + static_cast<int>(derive_seed(3000, trial) % dim);
    Matrix basis = haar_unitary(dim, 4000 + trial).leftCols(rank);
    const auto [lhs, rhs] =
        gentle_measurement_check(rho, HermitianOperator(basis * basis.adjoint()));
    CHECK(lhs <= rhs + 1e-9);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("partial traces agree with Kronecker structure") {
  const HermitianOperator a = random_hermitian(3, 5000);
  const HermitianOperator b = random_hermitian(4, 5001);
  const Matrix prod = kron(a.matrix(), b.matrix());
  CHECK((partial_trace_first(prod, 3, 4) - a.matrix().trace() * b.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK((partial_trace_second(prod, 3, 4) - b.matrix().trace() * a.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("validation: state and measurement invariants enforced") {
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator(diag2(0.9, 0.2))), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator(diag2(1.5, -0.5))), std::invalid_argument);
  CHECK_THROWS_AS(PovmElement(HermitianOperator(diag2(1.2, 0.0))), std::invalid_argument);
  CHECK_THROWS_AS(Measurement({PovmElement(HermitianOperator(diag2(0.5, 0.5)))}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PureState(Vector::Zero(2)), std::invalid_argument);

  // Clamping path: eigenvalues in [-1e-10, 0) are accepted and zeroed.
  const DensityMatrix fixed = DensityMatrix::clamped(HermitianOperator(diag2(1.0 + 5e-11, -5e-11)));
  CHECK(spectrum(fixed.base()).minCoeff() >= 0.0);
  CHECK_THROWS_AS(DensityMatrix::clamped(HermitianOperator(diag2(1.0 + 1e-6, -1e-6))),
                  std::invalid_argument);
}

}  // TEST_SUITE
