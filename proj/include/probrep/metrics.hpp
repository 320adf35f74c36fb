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

#include <optional>
#include <vector>

#include "probrep/operators.hpp"

namespace probrep {

/// Half the 1-distance between two outcome vectors of equal length.
double statistical_distance(const ProbabilityVector& p, const ProbabilityVector& q);

/// Half the trace norm of the difference; in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// How a supremum over an infinite measurement family is resolved.
///  - kEnumerate: exact max over an explicit member list.
///  - kSample: seeded sample of `samples` members; result is a lower bound.
///    With `refine` set, the best sampled member is polished by a
///    gradient-free hill climb over its generating unitary.
///  - kAnalyticWitness: closed-form maximizer (available for the damped
///    family); result is the exact supremum.
struct SupStrategy {
  enum class Kind { kEnumerate, kSample, kAnalyticWitness };
  Kind kind = Kind::kSample;
  int samples = 200;
  std::uint64_t seed = 0;
  bool refine = false;
  int refine_iters = 600;

  static SupStrategy enumerate() { return {Kind::kEnumerate, 0, 0, false, 0}; }
  static SupStrategy sample(int count, std::uint64_t seed, bool refine = false,
                            int refine_iters = 600) {
    return {Kind::kSample, count, seed, refine, refine_iters};
  }
  static SupStrategy analytic_witness() { return {Kind::kAnalyticWitness, 0, 0, false, 0}; }
};

/// Result of a sup-optimization over a measurement family: the value, the
/// maximizing member as certificate, and whether the value is only a lower
/// bound on the true supremum.
struct SupResult {
  double value = 0.0;
  std::optional<Measurement> maximizer;
  bool is_lower_bound = false;
};

/// A finite or generator-described set of measurements, together with the
/// strategy used to resolve suprema over it.
///
/// Kinds:
///  - explicit list of measurements;
///  - product rank-1 bases on C^{dim_a} (x) C^{dim_b}: members are basis
///    measurements V (x) W from Haar unitaries. When dim_a == dim_b the same
///    unitary is used on both factors (the V (x) V form); otherwise the
///    factors are drawn independently;
///  - all rank-1 bases on C^dim;
///  - the damped family on C^dim: binary measurements {PEP, 1 - PEP} with
///    P = sum_k e^{-k} |k><k| and <0|E|0> = 0, plus the trivial {1}. This
///    family is tomographically complete but not stable.
class MeasurementFamily {
 public:
  enum class Kind { kExplicit, kProductRank1, kAllRank1, kDamped };

  static MeasurementFamily explicit_list(std::vector<Measurement> members);
  static MeasurementFamily product_rank1_bases(int dim_a, int dim_b, SupStrategy strategy);
  static MeasurementFamily all_rank1_bases(int dim, SupStrategy strategy);
  static MeasurementFamily damped(int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const SupStrategy& strategy() const { return strategy_; }
  const std::vector<Measurement>& members() const { return members_; }

  /// Sampled member at a given index (seeded deterministically from the
  /// strategy seed). Only valid for generator-described kinds.
  Measurement sampled_member(std::uint64_t index) const;

  /// Core optimization: sup over members of || P_M(a) ||_1 for a Hermitian
  /// operator a (signed outcome weights).
  SupResult sup_outcome_l1(const HermitianOperator& a) const;

 private:
  MeasurementFamily() = default;
  Kind kind_ = Kind::kExplicit;
  int dim_ = 0, dim_a_ = 0, dim_b_ = 0;
  SupStrategy strategy_;
  std::vector<Measurement> members_;
};

/// d_M(rho, sigma) = (1/2) sup_M || P_M(rho) - P_M(sigma) ||_1, resolved per
/// the family's strategy. Certificate and bound semantics as in SupResult.
SupResult d_m_certified(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const MeasurementFamily& family);
double d_m(const DensityMatrix& rho, const DensityMatrix& sigma, const MeasurementFamily& family);

/// || a ||_M = sup_M || P_M(a) ||_1 on the span of the state space.
SupResult m_norm_certified(const HermitianOperator& a, const MeasurementFamily& family);
double m_norm(const HermitianOperator& a, const MeasurementFamily& family);

/// A set of states to measure distances against.
///  - explicit list: infimum is an exact minimum;
///  - product-with-free-factor: states fixed (x) sigma with sigma ranging
///    over all density matrices of the free dimension; the infimum is
///    resolved by projected gradient descent and is an upper bound.
class StateFamily {
 public:
  enum class Kind { kExplicit, kProductFreeFactor };

  static StateFamily explicit_list(std::vector<DensityMatrix> members);
  static StateFamily product_with_free_factor(DensityMatrix fixed, int free_dim);

  Kind kind() const { return kind_; }
  const std::vector<DensityMatrix>& members() const { return members_; }
  const DensityMatrix& fixed_factor() const { return *fixed_; }
  int free_dim() const { return free_dim_; }

 private:
  StateFamily() = default;
  Kind kind_ = Kind::kExplicit;
  std::vector<DensityMatrix> members_;
  std::optional<DensityMatrix> fixed_;
  int free_dim_ = 0;
};

/// Options for the projected-gradient infimum search.
struct InfOptions {
  double step = 0.1;
  int iterations = 500;
  int restarts = 20;
  std::uint64_t seed = 0;
  double convergence_window_tol = 1e-9;
};

/// Distance from a state to a state family. `converged` is false when the
/// iterative optimizer was still improving at the iteration cap; the value is
/// an upper bound on the infimum in the iterative case.
struct InfResult {
  double value = 0.0;
  std::optional<DensityMatrix> minimizer;
  bool converged = true;
  bool is_upper_bound = false;
};

/// Infimum of the trace distance (metric_family == nullptr) or of
/// d_M(., ., *metric_family) between rho and the family.
InfResult distance_to_family(const DensityMatrix& rho, const StateFamily& family,
                             const MeasurementFamily* metric_family = nullptr,
                             const InfOptions& options = {});

/// Rank of the real span of product POVM elements E_A (x) E_B built from
/// canonical rank-1 generating sets on each side; `full` iff the rank equals
/// dim_a^2 * dim_b^2.
struct SpanCheck {
  int spanned_dim = 0;
  bool full = false;
};
SpanCheck product_span_check(int dim_a, int dim_b);

/// One row of the damped-family demonstration: d under the damped family
/// stays e^{-2n} while the trace distance stays 1 for |n><n| vs |0><0|.
struct DampedRow {
  int n;
  double d_damped;
  double delta;
};
std::vector<DampedRow> damped_family_demo(int dim);

/// Explicit family of qubit projective measurements from a quasi-uniform
/// grid of `count` Bloch directions (Fibonacci lattice).
MeasurementFamily qubit_projective_grid(int count);

}  // namespace probrep
