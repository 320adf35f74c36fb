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

#include <vector>

#include "probrep/operators.hpp"
#include "probrep/rational.hpp"

namespace probrep {

/// Flat state: first m diagonal entries 1/m, zero elsewhere.
DensityMatrix flat_state(int m, int dim);

/// Triangular state: diagonal weights 2(n-k)/(n(n+1)) for k = 0..n-1.
DensityMatrix triangular_state(int n, int dim);

/// Exact spectra of the two diagonal families, padded with zeros to `dim`.
std::vector<Rational> flat_spectrum_exact(int m, int dim);
std::vector<Rational> triangular_spectrum_exact(int n, int dim);

/// l1 distance between two descending spectra, zero-padded to equal length.
double spectral_distance(const RealVector& p, const RealVector& q);
Rational spectral_distance_exact(const std::vector<Rational>& p, const std::vector<Rational>& q);

/// Brute-force minimum over m in 1..4n of the exact spectral l1 distance
/// between the triangular state of order n and the flat state of order m.
/// The range covers the minimum (which sits near m = n/sqrt(2)) with room to
/// spare; the distance grows monotonically once m >> n. The accumulation runs
/// over a common denominator n(n+1)m in 128-bit integers, so the reported
/// value is exact.
struct AirplaneScan {
  int n = 0;
  Rational min;
  int argmin = 0;
  double min_as_double() const { return rational_to_double(min); }
};
AirplaneScan airplane_scan(int n);

/// Hermitian traceless operator with tr(A_+) <= 1/11: the raw material of
/// the state-pair construction below.
class TracelessWitness {
 public:
  explicit TracelessWitness(HermitianOperator a);

  int dim() const { return a_.dim(); }
  const HermitianOperator& op() const { return a_; }

 private:
  HermitianOperator a_;
};

/// Random element of the witness set: traceless Hermitian scaled so that
/// tr(A_+) is exactly at the 1/11 cap (or smaller).
TracelessWitness random_traceless_witness(int dim, std::uint64_t seed);

/// States rho = |p><p| (1 - tr A_+) + A_+ and sigma = |p><p| (1 + tr A_-) - A_-
/// built on a pointer basis vector; their difference is exactly A. The
/// working dimension defaults to max(A.dim, pointer_index + 1).
std::pair<DensityMatrix, DensityMatrix> witness_pair(const TracelessWitness& witness,
                                                     int pointer_index, int working_dim = 0);

}  // namespace probrep
