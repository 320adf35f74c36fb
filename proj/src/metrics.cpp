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

#include "probrep/metrics.hpp"

#include <cmath>
#include <numbers>

#include "probrep/random.hpp"

namespace probrep {

double statistical_distance(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("statistical_distance: length mismatch");
  return 0.5 * (p.weights() - q.weights()).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(Matrix(rho.matrix() - sigma.matrix()));
}

namespace {

double outcome_l1(const Measurement& m, const HermitianOperator& a) {
  return born_rule(m, a).weights().cwiseAbs().sum();
}

/// Nearest unitary to an arbitrary matrix (QR with phase-fixed R diagonal).
Matrix unitarize(const Matrix& g) {
  const int d = static_cast<int>(g.rows());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    q.col(j) *= (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

Matrix perturb_unitary(const Matrix& u, double radius, std::mt19937_64& rng) {
  const int d = static_cast<int>(u.rows());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  return unitarize(u + radius * g);
}

}  // namespace

MeasurementFamily MeasurementFamily::explicit_list(std::vector<Measurement> members) {
  if (members.empty()) throw std::invalid_argument("MeasurementFamily: empty explicit list");
  MeasurementFamily f;
  f.kind_ = Kind::kExplicit;
  f.dim_ = members.front().dim();
  for (const auto& m : members) {
    if (m.dim() != f.dim_) throw std::invalid_argument("MeasurementFamily: mixed dimensions");
  }
  f.strategy_ = SupStrategy::enumerate();
  f.members_ = std::move(members);
  return f;
}

MeasurementFamily MeasurementFamily::product_rank1_bases(int dim_a, int dim_b,
                                                         SupStrategy strategy) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("product_rank1_bases: bad dims");
  MeasurementFamily f;
  f.kind_ = Kind::kProductRank1;
  f.dim_a_ = dim_a;
  f.dim_b_ = dim_b;
  f.dim_ = dim_a * dim_b;
  f.strategy_ = strategy;
  return f;
}

MeasurementFamily MeasurementFamily::all_rank1_bases(int dim, SupStrategy strategy) {
  if (dim < 1) throw std::invalid_argument("all_rank1_bases: bad dim");
  MeasurementFamily f;
  f.kind_ = Kind::kAllRank1;
  f.dim_ = dim;
  f.strategy_ = strategy;
  return f;
}

MeasurementFamily MeasurementFamily::damped(int dim) {
  if (dim < 2) throw std::invalid_argument("damped: dim must be >= 2");
  MeasurementFamily f;
  f.kind_ = Kind::kDamped;
  f.dim_ = dim;
  f.strategy_ = SupStrategy::analytic_witness();
  return f;
}

Measurement MeasurementFamily::sampled_member(std::uint64_t index) const {
  switch (kind_) {
    case Kind::kAllRank1:
      return basis_measurement(haar_unitary(dim_, derive_seed(strategy_.seed, 2 * index)));
    case Kind::kProductRank1: {
      const Matrix u = haar_unitary(dim_a_, derive_seed(strategy_.seed, 2 * index));
      // Same unitary on both factors when the dimensions agree (the V (x) V
      // form); independent draws otherwise.
      const Matrix v = (dim_a_ == dim_b_)
                           ? u
                           : haar_unitary(dim_b_, derive_seed(strategy_.seed, 2 * index + 1));
      return basis_measurement(kron(u, v));
    }
    case Kind::kDamped: {
      // Random member {PEP, 1 - PEP}: E is a random POVM element supported
      // off |0> (a PSD element with <0|E|0> = 0 annihilates |0> entirely).
      const PovmElement inner =
          random_povm_element(dim_ - 1, derive_seed(strategy_.seed, index));
      Matrix e = Matrix::Zero(dim_, dim_);
      e.bottomRightCorner(dim_ - 1, dim_ - 1) = inner.matrix();
      RealVector damps(dim_);
      for (int k = 0; k < dim_; ++k) damps[k] = std::exp(-static_cast<double>(k));
      const Matrix f = damps.asDiagonal() * e * damps.asDiagonal();
      std::vector<PovmElement> elems;
      elems.emplace_back(HermitianOperator(f));
      elems.emplace_back(HermitianOperator(Matrix::Identity(dim_, dim_) - f));
      return Measurement(std::move(elems));
    }
    case Kind::kExplicit:
      return members_.at(static_cast<std::size_t>(index));
  }
  throw std::logic_error("sampled_member: unreachable");
}

namespace {

/// Exact supremum over the damped family of || P_M(a) ||_1. Every binary
/// member {F, 1-F} yields |t| + |tr(a) - t| with t = tr(F a) = tr(E PaP)
/// ranging over [sum of negative eigenvalues, sum of positive eigenvalues]
/// of the PaP block supported off |0>; the objective is convex in t, so the
/// supremum sits at an endpoint.
SupResult damped_supremum(const HermitianOperator& a, int dim) {
  RealVector damps(dim);
  for (int k = 0; k < dim; ++k) damps[k] = std::exp(-static_cast<double>(k));
  const Matrix b = damps.asDiagonal() * a.matrix() * damps.asDiagonal();
  const Matrix block = b.bottomRightCorner(dim - 1, dim - 1);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
  const RealVector eigs = solver.eigenvalues();
  const double t_max = eigs.cwiseMax(0.0).sum();
  const double t_min = eigs.cwiseMin(0.0).sum();
  const double total = a.matrix().trace().real();
  const double at_max = std::abs(t_max) + std::abs(total - t_max);
  const double at_min = std::abs(t_min) + std::abs(total - t_min);
  const bool use_max = at_max >= at_min;

  // Witness measurement: E projects on the corresponding eigenspace.
  Matrix e_block = Matrix::Zero(dim - 1, dim - 1);
  for (int i = 0; i < dim - 1; ++i) {
    const bool keep = use_max ? eigs[i] > 0.0 : eigs[i] < 0.0;
    if (keep) e_block += solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
  }
  Matrix e = Matrix::Zero(dim, dim);
  e.bottomRightCorner(dim - 1, dim - 1) = e_block;
  const Matrix f = damps.asDiagonal() * e * damps.asDiagonal();
  std::vector<PovmElement> elems;
  elems.emplace_back(HermitianOperator(f));
  elems.emplace_back(HermitianOperator(Matrix::Identity(dim, dim) - f));

  SupResult result;
  result.value = use_max ? at_max : at_min;
  result.maximizer = Measurement(std::move(elems));
  result.is_lower_bound = false;
  return result;
}

}  // namespace

SupResult MeasurementFamily::sup_outcome_l1(const HermitianOperator& a) const {
  if (a.dim() != dim_) throw std::invalid_argument("sup_outcome_l1: dimension mismatch");

  if (kind_ == Kind::kDamped) return damped_supremum(a, dim_);

  if (kind_ == Kind::kExplicit) {
    SupResult best;
    best.value = -1.0;
    for (const auto& m : members_) {
      const double v = outcome_l1(m, a);
      if (v > best.value) {
        best.value = v;
        best.maximizer = m;
      }
    }
    best.is_lower_bound = false;
    return best;
  }

  // Sampled generator families.
  const SupStrategy& strat = strategy_;
  if (strat.kind != SupStrategy::Kind::kSample || strat.samples < 1) {
    throw std::invalid_argument("sup_outcome_l1: family needs a sample strategy");
  }
  SupResult best;
  best.value = -1.0;
  std::uint64_t best_index = 0;
  for (int i = 0; i < strat.samples; ++i) {
    Measurement m = sampled_member(static_cast<std::uint64_t>(i));
    const double v = outcome_l1(m, a);
    if (v > best.value) {
      best.value = v;
      best.maximizer = std::move(m);
      best_index = static_cast<std::uint64_t>(i);
    }
  }

  if (strat.refine) {
    // Gradient-free polish of the best member: random retraction steps on
    // the generating unitary, shrinking the radius on failure streaks.
    std::mt19937_64 rng(derive_seed(strat.seed, 0xF00D + best_index));
    const bool product = kind_ == Kind::kProductRank1;
    const bool shared = product && dim_a_ == dim_b_;
    Matrix u = haar_unitary(product ? dim_a_ : dim_, derive_seed(strat.seed, 2 * best_index));
    Matrix v = shared ? u
               : product ? haar_unitary(dim_b_, derive_seed(strat.seed, 2 * best_index + 1))
                         : Matrix();
    double radius = 0.1;
    int failures = 0;
    for (int it = 0; it < strat.refine_iters && radius > 1e-9; ++it) {
      Matrix u_try = u;
      Matrix v_try = v;
      if (shared) {
        u_try = perturb_unitary(u, radius, rng);
        v_try = u_try;
      } else if (product) {
        if (it % 2 == 0) u_try = perturb_unitary(u, radius, rng);
        else v_try = perturb_unitary(v, radius, rng);
      } else {
        u_try = perturb_unitary(u, radius, rng);
      }
      Measurement m = product ? basis_measurement(kron(u_try, v_try)) : basis_measurement(u_try);
      const double val = outcome_l1(m, a);
      if (val > best.value) {
        best.value = val;
        best.maximizer = std::move(m);
        u = std::move(u_try);
        if (product) v = std::move(v_try);
        failures = 0;
      } else if (++failures >= 25) {
        radius *= 0.5;
        failures = 0;
      }
    }
  }

  best.is_lower_bound = true;
  return best;
}

SupResult d_m_certified(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const MeasurementFamily& family) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("d_m: dimension mismatch");
  SupResult result = family.sup_outcome_l1(HermitianOperator(rho.matrix() - sigma.matrix()));
  result.value *= 0.5;
  return result;
}

double d_m(const DensityMatrix& rho, const DensityMatrix& sigma, const MeasurementFamily& family) {
  return d_m_certified(rho, sigma, family).value;
}

SupResult m_norm_certified(const HermitianOperator& a, const MeasurementFamily& family) {
  return family.sup_outcome_l1(a);
}

double m_norm(const HermitianOperator& a, const MeasurementFamily& family) {
  return m_norm_certified(a, family).value;
}

StateFamily StateFamily::explicit_list(std::vector<DensityMatrix> members) {
  if (members.empty()) throw std::invalid_argument("StateFamily: empty list");
  StateFamily f;
  f.kind_ = Kind::kExplicit;
  f.members_ = std::move(members);
  return f;
}

StateFamily StateFamily::product_with_free_factor(DensityMatrix fixed, int free_dim) {
  if (free_dim < 1) throw std::invalid_argument("StateFamily: bad free dimension");
  StateFamily f;
  f.kind_ = Kind::kProductFreeFactor;
  f.fixed_ = std::move(fixed);
  f.free_dim_ = free_dim;
  return f;
}

namespace {

struct Objective {
  double value;
  HermitianOperator subgradient;  // with respect to the free factor
};

/// Value and subgradient of sigma -> distance(rho, fixed (x) sigma), for the
/// trace distance or a d_M metric. The subgradient pulls the sign operator
/// (or the signed POVM combination of the maximizing member) back through
/// the partial trace over the fixed factor.
Objective evaluate_product_objective(const DensityMatrix& rho, const DensityMatrix& fixed,
                                     const DensityMatrix& sigma,
                                     const MeasurementFamily* metric_family) {
  const int dim_a = fixed.dim();
  const int dim_b = sigma.dim();
  const Matrix candidate = kron(fixed.matrix(), sigma.matrix());
  const Matrix delta = candidate - rho.matrix();

  Matrix signed_direction;
  double value;
  if (metric_family == nullptr) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(delta);
    RealVector signs = solver.eigenvalues();
    value = 0.5 * signs.cwiseAbs().sum();
    for (Eigen::Index i = 0; i < signs.size(); ++i) signs[i] = (signs[i] >= 0.0) ? 1.0 : -1.0;
    signed_direction =
        solver.eigenvectors() * signs.asDiagonal() * solver.eigenvectors().adjoint();
  } else {
    const SupResult sup = metric_family->sup_outcome_l1(HermitianOperator(delta));
    value = 0.5 * sup.value;
    const Measurement& m = *sup.maximizer;
    signed_direction = Matrix::Zero(delta.rows(), delta.cols());
    for (const auto& e : m.elements()) {
      const double outcome = (e.matrix() * delta).trace().real();
      signed_direction += (outcome >= 0.0 ? 1.0 : -1.0) * e.matrix();
    }
  }
  const Matrix pulled =
      partial_trace_first(kron(fixed.matrix(), Matrix::Identity(dim_b, dim_b)) * signed_direction,
                          dim_a, dim_b);
  return {value, HermitianOperator(0.5 * (pulled + pulled.adjoint()))};
}

}  // namespace

InfResult distance_to_family(const DensityMatrix& rho, const StateFamily& family,
                             const MeasurementFamily* metric_family, const InfOptions& options) {
  auto metric = [&](const DensityMatrix& a, const DensityMatrix& b) {
    return metric_family == nullptr ? trace_distance(a, b) : d_m(a, b, *metric_family);
  };

  if (family.kind() == StateFamily::Kind::kExplicit) {
    InfResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& member : family.members()) {
      const double v = metric(rho, member);
      if (v < best.value) {
        best.value = v;
        best.minimizer = member;
      }
    }
    return best;
  }

  const DensityMatrix& fixed = family.fixed_factor();
  const int free_dim = family.free_dim();
  if (fixed.dim() * free_dim != rho.dim()) {
    throw std::invalid_argument("distance_to_family: dimension mismatch");
  }

  InfResult best;
  best.value = std::numeric_limits<double>::infinity();
  best.converged = false;
  best.is_upper_bound = true;

  for (int restart = 0; restart < options.restarts; ++restart) {
    DensityMatrix sigma = (restart == 0)
                              ? DensityMatrix::maximally_mixed(free_dim)
                              : random_density(free_dim, derive_seed(options.seed, restart));
    double restart_best = std::numeric_limits<double>::infinity();
    DensityMatrix restart_minimizer = sigma;
    double window_reference = std::numeric_limits<double>::infinity();
    bool restart_converged = false;

    for (int iter = 0; iter < options.iterations; ++iter) {
      const Objective obj = evaluate_product_objective(rho, fixed, sigma, metric_family);
      if (obj.value < restart_best) {
        restart_best = obj.value;
        restart_minimizer = sigma;
      }
      if (iter % 50 == 49) {
        if (window_reference - restart_best < options.convergence_window_tol) {
          restart_converged = true;
          break;
        }
        window_reference = restart_best;
      }
      sigma = project_to_density(HermitianOperator(
          sigma.matrix() - options.step * obj.subgradient.matrix()));
    }
    if (restart_best < best.value) {
      best.value = restart_best;
      best.minimizer = restart_minimizer;
      best.converged = restart_converged;
    }
  }
  return best;
}

SpanCheck product_span_check(int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("product_span_check: bad dims");

  auto generating = [](int d) {
    std::vector<Matrix> elems;
    for (int i = 0; i < d; ++i) {
      Vector v = Vector::Zero(d);
      v[i] = 1.0;
      elems.push_back(v * v.adjoint());
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Vector v = Vector::Zero(d);
        v[i] = 1.0 / std::numbers::sqrt2;
        v[j] = 1.0 / std::numbers::sqrt2;
        elems.push_back(v * v.adjoint());
        v[j] = Complex(0.0, 1.0 / std::numbers::sqrt2);
        elems.push_back(v * v.adjoint());
      }
    return elems;
  };

  const auto elems_a = generating(dim_a);
  const auto elems_b = generating(dim_b);
  const int dim_ab = dim_a * dim_b;
  const int real_dim = dim_ab * dim_ab;

  RealMatrix rows(static_cast<int>(elems_a.size() * elems_b.size()), real_dim);
  int row = 0;
  for (const auto& ea : elems_a)
    for (const auto& eb : elems_b) {
      const Matrix prod = kron(ea, eb);
      int col = 0;
      for (int i = 0; i < dim_ab; ++i) rows(row, col++) = prod(i, i).real();
      for (int i = 0; i < dim_ab; ++i)
        for (int j = i + 1; j < dim_ab; ++j) {
          rows(row, col++) = prod(i, j).real();
          rows(row, col++) = prod(i, j).imag();
        }
      ++row;
    }

  Eigen::ColPivHouseholderQR<RealMatrix> qr(rows);
  qr.setThreshold(1e-8);
  SpanCheck check;
  check.spanned_dim = static_cast<int>(qr.rank());
  check.full = check.spanned_dim == dim_a * dim_a * dim_b * dim_b;
  return check;
}

std::vector<DampedRow> damped_family_demo(int dim) {
  if (dim < 2) throw std::invalid_argument("damped_family_demo: dim must be >= 2");
  const MeasurementFamily family = MeasurementFamily::damped(dim);
  std::vector<DampedRow> rows;
  rows.push_back({0, 0.0, 0.0});  // |0><0| against itself
  const DensityMatrix origin = DensityMatrix::basis_state(dim, 0);
  for (int n = 1; n < dim; ++n) {
    const DensityMatrix state = DensityMatrix::basis_state(dim, n);
    rows.push_back({n, d_m(state, origin, family), trace_distance(state, origin)});
  }
  return rows;
}

MeasurementFamily qubit_projective_grid(int count) {
  if (count < 1) throw std::invalid_argument("qubit_projective_grid: bad count");
  std::vector<Measurement> members;
  members.reserve(static_cast<std::size_t>(count));
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / count;
    const double theta = std::acos(std::clamp(z, -1.0, 1.0));
    const double phi = golden_angle * k;
    Matrix u(2, 2);
    const Complex phase(std::cos(phi), std::sin(phi));
    u(0, 0) = std::cos(theta / 2.0);
    u(1, 0) = phase * std::sin(theta / 2.0);
    u(0, 1) = -std::sin(theta / 2.0);
    u(1, 1) = phase * std::cos(theta / 2.0);
    members.push_back(basis_measurement(u));
  }
  return MeasurementFamily::explicit_list(std::move(members));
}

}  // namespace probrep
