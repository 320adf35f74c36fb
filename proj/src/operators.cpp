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

#include "probrep/operators.hpp"

#include <algorithm>
#include <cmath>

namespace probrep {

Tolerances& tolerances() {
  static Tolerances tols;
  return tols;
}

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> solve_hermitian(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolve failed");
  }
  return solver;
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw std::invalid_argument("HermitianOperator: matrix must be square and nonempty");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("HermitianOperator: non-finite entries");
  }
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tolerances().exact) {
    throw std::invalid_argument("HermitianOperator: not Hermitian (max deviation " +
                                std::to_string(asym) + ")");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

DensityMatrix::DensityMatrix(HermitianOperator base) : base_(std::move(base)) {
  const double tr = base_.matrix().trace().real();
  if (std::abs(tr - 1.0) > tolerances().exact) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  const RealVector eigs = hermitian_spectrum(base_.matrix());
  if (eigs.minCoeff() < -tolerances().constraint) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(eigs.minCoeff()));
  }
}

DensityMatrix DensityMatrix::clamped(const HermitianOperator& base) {
  auto solver = solve_hermitian(base.matrix());
  RealVector eigs = solver.eigenvalues();
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (eigs[i] < -tolerances().constraint) {
      throw std::invalid_argument("DensityMatrix::clamped: eigenvalue " +
                                  std::to_string(eigs[i]) + " below tolerance");
    }
    eigs[i] = std::max(eigs[i], 0.0);
  }
  const double total = eigs.sum();
  if (std::abs(total - 1.0) > tolerances().constraint) {
    throw std::invalid_argument("DensityMatrix::clamped: trace " + std::to_string(total));
  }
  eigs /= total;
  Matrix rebuilt =
      solver.eigenvectors() * eigs.asDiagonal() * solver.eigenvectors().adjoint();
  return DensityMatrix(HermitianOperator(std::move(rebuilt)), true);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(HermitianOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  return PureState::basis_vector(dim, index).to_density();
}

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("PureState: empty vector");
  if (!amplitudes_.allFinite()) throw std::invalid_argument("PureState: non-finite entries");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tolerances().exact) {
    throw std::invalid_argument("PureState: norm " + std::to_string(norm) + " != 1");
  }
}

DensityMatrix PureState::to_density() const { return DensityMatrix(HermitianOperator(projector())); }

PureState PureState::basis_vector(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis_vector: index out of range");
  Vector v = Vector::Zero(dim);
  v[index] = 1.0;
  return PureState(std::move(v));
}

PovmElement::PovmElement(HermitianOperator base) : base_(std::move(base)) {
  const RealVector eigs = hermitian_spectrum(base_.matrix());
  const double tol = tolerances().constraint;
  if (eigs.minCoeff() < -tol || eigs.maxCoeff() > 1.0 + tol) {
    throw std::invalid_argument("PovmElement: spectrum outside [0, 1]");
  }
}

Measurement::Measurement(std::vector<PovmElement> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("Measurement: no elements");
  const int d = elements_.front().dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.dim() != d) throw std::invalid_argument("Measurement: mixed dimensions");
    sum += e.matrix();
  }
  const double deviation = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (deviation > tolerances().constraint) {
    throw std::invalid_argument("Measurement: elements sum to identity only within " +
                                std::to_string(deviation));
  }
}

ProbabilityVector ProbabilityVector::proper(RealVector weights) {
  if (weights.size() == 0) throw std::invalid_argument("ProbabilityVector: empty");
  if (weights.minCoeff() < -tolerances().exact) {
    throw std::invalid_argument("ProbabilityVector: negative weight " +
                                std::to_string(weights.minCoeff()));
  }
  if (std::abs(weights.sum() - 1.0) > tolerances().constraint) {
    throw std::invalid_argument("ProbabilityVector: weights sum to " +
                                std::to_string(weights.sum()));
  }
  return ProbabilityVector(std::move(weights), false);
}

ProbabilityVector ProbabilityVector::signed_weights(RealVector weights) {
  if (weights.size() == 0) throw std::invalid_argument("ProbabilityVector: empty");
  return ProbabilityVector(std::move(weights), true);
}

RealVector hermitian_spectrum(const Matrix& a) {
  if (!a.allFinite()) throw std::invalid_argument("hermitian_spectrum: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
  return solver.eigenvalues().reverse();
}

double trace_norm(const Matrix& a) { return hermitian_spectrum(a).cwiseAbs().sum(); }

Matrix partial_trace_first(const Matrix& x, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a) out += x.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

Matrix partial_trace_second(const Matrix& x, int dim_a, int dim_b) {
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      out(i, j) = x.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
  return out;
}

RealVector spectrum(const HermitianOperator& a) { return hermitian_spectrum(a.matrix()); }

double trace_norm(const HermitianOperator& a) { return trace_norm(a.matrix()); }

std::pair<HermitianOperator, HermitianOperator> pos_neg_parts(const HermitianOperator& a) {
  auto solver = solve_hermitian(a.matrix());
  const RealVector eigs = solver.eigenvalues();
  RealVector pos = eigs.cwiseMax(0.0);
  RealVector neg = eigs.cwiseMin(0.0);
  const Matrix& v = solver.eigenvectors();
  return {HermitianOperator(v * pos.asDiagonal() * v.adjoint()),
          HermitianOperator(v * neg.asDiagonal() * v.adjoint())};
}

ProbabilityVector born_rule(const Measurement& m, const HermitianOperator& a) {
  if (m.dim() != a.dim()) throw std::invalid_argument("born_rule: dimension mismatch");
  RealVector weights(m.outcomes());
  for (int i = 0; i < m.outcomes(); ++i) {
    weights[i] = (m.element(i).matrix() * a.matrix()).trace().real();
  }
  return ProbabilityVector::signed_weights(std::move(weights));
}

ProbabilityVector born_rule(const Measurement& m, const DensityMatrix& rho) {
  ProbabilityVector raw = born_rule(m, rho.base());
  // Outcome weights of a state may dip below zero by eigensolver noise; clamp
  // within the exact tolerance before validating as a distribution.
  RealVector w = raw.weights();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0 && w[i] >= -tolerances().exact) w[i] = 0.0;
  }
  return ProbabilityVector::proper(std::move(w));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(kron(a.matrix(), b.matrix()));
}

RestrictedMeasurement restrict_measurement(const Measurement& m, const HermitianOperator& projector) {
  const Matrix& pi = projector.matrix();
  if (pi.rows() != m.dim()) throw std::invalid_argument("restrict_measurement: dimension mismatch");
  if ((pi * pi - pi).cwiseAbs().maxCoeff() > tolerances().constraint) {
    throw std::invalid_argument("restrict_measurement: projector not idempotent");
  }
  auto solver = solve_hermitian(pi);
  const RealVector eigs = solver.eigenvalues();
  int rank = 0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (eigs[i] > 0.5) ++rank;
  if (rank == 0) throw std::invalid_argument("restrict_measurement: zero projector");
  // Eigenvalues ascend, so the support basis sits in the trailing columns.
  Matrix isometry = solver.eigenvectors().rightCols(rank);
  std::vector<PovmElement> restricted;
  restricted.reserve(static_cast<std::size_t>(m.outcomes()));
  for (const auto& e : m.elements()) {
    restricted.emplace_back(HermitianOperator(isometry.adjoint() * e.matrix() * isometry));
  }
  return {Measurement(std::move(restricted)), std::move(isometry)};
}

std::pair<double, double> gentle_measurement_check(const DensityMatrix& rho,
                                                   const HermitianOperator& projector) {
  const Matrix& pi = projector.matrix();
  if ((pi * pi - pi).cwiseAbs().maxCoeff() > tolerances().constraint) {
    throw std::invalid_argument("gentle_measurement_check: projector not idempotent");
  }
  const Matrix compressed = pi * rho.matrix() * pi;
  const double lhs = trace_norm(Matrix(rho.matrix() - compressed));
  const double survived = std::min(compressed.trace().real(), 1.0);
  const double rhs = 2.0 * std::sqrt(std::max(0.0, 1.0 - survived));
  return {lhs, rhs};
}

DensityMatrix project_to_density(const HermitianOperator& a) {
  auto solver = solve_hermitian(a.matrix());
  RealVector eigs = solver.eigenvalues().cwiseMax(0.0);
  const double total = eigs.sum();
  if (total <= 0.0) return DensityMatrix::maximally_mixed(a.dim());
  eigs /= total;
  return DensityMatrix(HermitianOperator(
      solver.eigenvectors() * eigs.asDiagonal() * solver.eigenvectors().adjoint()));
}

}  // namespace probrep
