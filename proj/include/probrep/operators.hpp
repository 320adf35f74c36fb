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

#include <stdexcept>
#include <utility>
#include <vector>

#include "probrep/types.hpp"

namespace probrep {

/// Dense Hermitian operator on C^dim. The constructor validates hermiticity
/// and finiteness, then stores the symmetrized matrix (A + A^dagger)/2 so that
/// downstream eigensolves see an exactly Hermitian input.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  static HermitianOperator zero(int dim) { return HermitianOperator(Matrix::Zero(dim, dim)); }
  static HermitianOperator identity(int dim) { return HermitianOperator(Matrix::Identity(dim, dim)); }

 private:
  Matrix entries_;
};

/// Quantum state: Hermitian, unit trace, positive semidefinite up to the
/// constraint tolerance.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator base);

  /// Builds a state from a numerically computed operator: eigenvalues in
  /// [-constraint_tol, 0) are clamped to zero and the trace is renormalized.
  /// Anything more negative is rejected.
  static DensityMatrix clamped(const HermitianOperator& base);

  int dim() const { return base_.dim(); }
  const Matrix& matrix() const { return base_.matrix(); }
  const HermitianOperator& base() const { return base_; }

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix basis_state(int dim, int index);

 private:
  DensityMatrix(HermitianOperator base, bool /*checked*/) : base_(std::move(base)) {}
  HermitianOperator base_;
};

/// Unit vector in C^dim.
class PureState {
 public:
  explicit PureState(Vector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }
  DensityMatrix to_density() const;

  static PureState basis_vector(int dim, int index);

 private:
  Vector amplitudes_;
};

/// POVM element: Hermitian with spectrum in [0, 1] up to the constraint
/// tolerance.
class PovmElement {
 public:
  explicit PovmElement(HermitianOperator base);

  int dim() const { return base_.dim(); }
  const Matrix& matrix() const { return base_.matrix(); }
  const HermitianOperator& base() const { return base_; }

 private:
  HermitianOperator base_;
};

/// Finite-outcome measurement: nonempty list of POVM elements of equal
/// dimension summing to the identity.
class Measurement {
 public:
  explicit Measurement(std::vector<PovmElement> elements);

  int dim() const { return elements_.front().dim(); }
  int outcomes() const { return static_cast<int>(elements_.size()); }
  const std::vector<PovmElement>& elements() const { return elements_; }
  const PovmElement& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }

 private:
  std::vector<PovmElement> elements_;
};

/// Outcome weights of a measurement. Proper vectors are validated
/// distributions; signed vectors arise from traceless or non-state inputs and
/// skip the nonnegativity check.
class ProbabilityVector {
 public:
  static ProbabilityVector proper(RealVector weights);
  static ProbabilityVector signed_weights(RealVector weights);

  bool is_signed() const { return is_signed_; }
  int size() const { return static_cast<int>(weights_.size()); }
  const RealVector& weights() const { return weights_; }
  double operator[](int i) const { return weights_[i]; }

 private:
  ProbabilityVector(RealVector w, bool s) : weights_(std::move(w)), is_signed_(s) {}
  RealVector weights_;
  bool is_signed_;
};

// ---------------------------------------------------------------------------
// Free functions on Eigen expressions. These evaluate their argument once and
// assume a Hermitian input where stated.

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
RealVector hermitian_spectrum(const Matrix& a);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const Matrix& a);

/// Kronecker product.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix result(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      result.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return result;
}

/// Partial trace over the first factor of C^{dim_a} (x) C^{dim_b}.
Matrix partial_trace_first(const Matrix& x, int dim_a, int dim_b);
/// Partial trace over the second factor.
Matrix partial_trace_second(const Matrix& x, int dim_a, int dim_b);

// ---------------------------------------------------------------------------
// Operator-level operations.

RealVector spectrum(const HermitianOperator& a);
double trace_norm(const HermitianOperator& a);

/// Splits A = A_plus + A_minus with A_plus >= 0, A_minus <= 0 and
/// A_plus * A_minus = 0 (spectral split).
std::pair<HermitianOperator, HermitianOperator> pos_neg_parts(const HermitianOperator& a);

/// Outcome weights tr(E_i A). Signed for general Hermitian input, proper for
/// a density matrix.
ProbabilityVector born_rule(const Measurement& m, const HermitianOperator& a);
ProbabilityVector born_rule(const Measurement& m, const DensityMatrix& rho);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Measurement conjugated into the support of an orthogonal projector and
/// compressed to that support. `isometry` maps the compressed space back into
/// the original one (columns form an orthonormal basis of the support).
struct RestrictedMeasurement {
  Measurement measurement;
  Matrix isometry;
};
RestrictedMeasurement restrict_measurement(const Measurement& m, const HermitianOperator& projector);

/// Returns (||rho - Pi rho Pi||_1, 2 sqrt(1 - tr(Pi rho Pi))). The first is
/// always bounded by the second.
std::pair<double, double> gentle_measurement_check(const DensityMatrix& rho,
                                                   const HermitianOperator& projector);

/// Eigendecomposition-based projection onto density matrices: negative
/// eigenvalues are clamped to zero and the trace renormalized. Falls back to
/// the maximally mixed state if everything is clamped away.
DensityMatrix project_to_density(const HermitianOperator& a);

}  // namespace probrep
