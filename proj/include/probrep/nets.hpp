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

#include <iosfwd>
#include <string>
#include <vector>

#include "probrep/operators.hpp"

namespace probrep {

/// Epsilon-net over the unit vectors of C^dim. Distances are plain Euclidean
/// distances between representatives; the global phase is not quotiented out,
/// so the net covers every phase representative of every state (probe points
/// are Haar samples, which carry uniform phases).
class StateNet {
 public:
  StateNet(int dim, double epsilon, std::uint64_t construction_seed,
           std::vector<PureState> points, bool certificate_passed, bool exceeds_size_bound);

  int dim() const { return dim_; }
  double epsilon() const { return epsilon_; }
  std::uint64_t construction_seed() const { return seed_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<PureState>& points() const { return points_; }
  bool certificate_passed() const { return certificate_passed_; }
  bool exceeds_size_bound() const { return exceeds_size_bound_; }

  struct Nearest {
    std::size_t index;
    double distance;
  };
  /// Nearest net point to an arbitrary unit vector, in plain Euclidean
  /// distance between representatives (the covering notion).
  Nearest nearest(const Vector& psi) const;
  /// Nearest net point after optimizing the global phase of psi. Used when
  /// snapping eigenvectors, whose phase is arbitrary while their projector is
  /// not; the phase-minimized distance never exceeds the plain one.
  Nearest nearest_up_to_phase(const Vector& psi) const;

 private:
  int dim_;
  double epsilon_;
  std::uint64_t seed_;
  std::vector<PureState> points_;
  // Real 2*dim x N layout of the points for vectorized distance queries.
  RealMatrix flat_;
  bool certificate_passed_;
  bool exceeds_size_bound_;
};

/// Greedy incremental net: sampled states are added whenever they are farther
/// than epsilon from every current point; construction stops after 10^4
/// consecutive rejections. The 10^5-probe covering certificate is then
/// evaluated; uncovered probes are admitted as net points and the certificate
/// re-run on a fresh probe stream, up to a bounded number of rounds (failure
/// to certify within the budget throws).
StateNet build_net(int dim, double epsilon, std::uint64_t seed);

/// Covering-number bound (1 + 2/epsilon)^{2 dim} and its log2.
double net_size_bound(int dim, double epsilon);
double net_size_bound_log2(int dim, double epsilon);

/// (||phi><phi| - |psi><psi||_1, 2 || |phi> - |psi> ||); the first never
/// exceeds the second.
std::pair<double, double> pure_norm_conversion_check(const PureState& phi, const PureState& psi);

/// Conic decoding recipe: outcome probabilities are rebuilt as nonnegative
/// combinations of the probabilities of rank-1 net-point elements.
struct DecodingOperation {
  const StateNet* source = nullptr;
  // coefficients[outcome] = list of (net point index, weight >= 0).
  std::vector<std::vector<std::pair<std::size_t, double>>> coefficients;
};

/// Net approximation of a POVM element: eigenvectors snap to their nearest
/// net points while eigenvalues are kept. error_bound = 2 epsilon tr(E)
/// dominates the actual trace-norm error.
struct SnapResult {
  HermitianOperator approx;
  double error_bound;
  double max_snap_distance;
  std::vector<std::pair<std::size_t, double>> recipe;  // (net index, eigenvalue)
};
SnapResult snap_element(const PovmElement& e, const StateNet& net);

/// Factor-wise snap of a product element; error_bound =
/// 2 (eps_A + eps_B) tr(E_A) tr(E_B) via the triangle split of the product.
SnapResult product_snap_element(const PovmElement& ea, const PovmElement& eb,
                                const StateNet& net_a, const StateNet& net_b);

/// Decodes a measurement's outcome distribution on rho from net-point
/// probabilities alone. per_outcome_bound[i] is the analytic snap bound for
/// element i; the realized error respects it outcome by outcome.
struct DecodeResult {
  ProbabilityVector decoded;
  double linf_error;
  std::vector<double> per_outcome_bound;
  DecodingOperation operation;
};
DecodeResult decode_measurement(const Measurement& m, const StateNet& net,
                                const DensityMatrix& rho);

/// log2 of the decoder input size needed for dimension 2^n:
/// kind all     -> 2^{n + log2(n) + 3}
/// kind product -> (2n + 2) 2^{(n+1)/2 + 2}
enum class EntropyKind { kAll, kProduct };
double entropy_budget(EntropyKind kind, int n);

/// Plain-text net serialization: a header line "dim epsilon seed" followed by
/// one line per point of whitespace-separated re/im pairs.
void save_net(const StateNet& net, std::ostream& out);
void save_net(const StateNet& net, const std::string& path);
StateNet load_net(std::istream& in);
StateNet load_net(const std::string& path);

}  // namespace probrep
