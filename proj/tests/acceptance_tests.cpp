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
//
// End-to-end acceptance suite. Every case prints one PASS/FAIL line; all
// tolerances are pinned in code.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <exception>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "probrep/antisymmetric.hpp"
#include "probrep/keylock.hpp"
#include "probrep/metrics.hpp"
#include "probrep/nets.hpp"
#include "probrep/random.hpp"
#include "probrep/scrambling.hpp"
#include "probrep/spectral.hpp"

using namespace probrep;

namespace {

class Criterion {
 public:
  Criterion(int number, const char* label) : number_(number), label_(label) {
    start_ = std::chrono::steady_clock::now();
  }
  ~Criterion() {
    const bool pass = pass_ && std::uncaught_exceptions() == 0;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::printf("criterion %d [%s]: %s (%.1f s)\n", number_, label_, pass ? "PASS" : "FAIL", secs);
    std::fflush(stdout);
  }
  void require(bool condition) { pass_ = pass_ && condition; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  int number_;
  const char* label_;
  bool pass_ = true;
  std::chrono::steady_clock::time_point start_;
};

#define ACCEPT(criterion, condition)      \
  do {                                    \
    const bool accepted_ = (condition);   \
    CHECK(accepted_);                     \
    (criterion).require(accepted_);       \
  } while (0)

}  // namespace

TEST_CASE("criterion 1: antisymmetric product statistics at desk scale") {
  Criterion criterion(1, "antisymmetric example");
  for (int n = 1; n <= 5; ++n) {
    const int d = 1 << n;
    const double off_diagonal = 1.0 / (static_cast<double>(d) * (d - 1));
    for (int basis = 0; basis < 100; ++basis) {
      const Matrix u = haar_unitary(d, derive_seed(0xA11CE, 100 * n + basis));
      const ProbabilityVector p = product_basis_distribution(n, u);
      double worst = 0.0;
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
          const double expected = x == y ? 0.0 : off_diagonal;
          worst = std::max(worst, std::abs(p[x * d + y] - expected));
        }
      ACCEPT(criterion, worst <= 1e-10);
    }
    ACCEPT(criterion, std::abs(product_representation_gap(n) - std::exp2(-n)) <= 1e-12);
  }
  ACCEPT(criterion, criterion.elapsed() < 60.0);
}

TEST_CASE("criterion 2: trace-distance floor of the randomness example") {
  Criterion criterion(2, "delta floor");

  // Independent oracle at n = 1: scan diagonal free factors (unitary
  // covariance plus convexity reduce the infimum to the diagonal slice).
  double oracle = std::numeric_limits<double>::infinity();
  const DensityMatrix rho1 = antisymmetric_state(1);
  for (int i = 0; i <= 2000; ++i) {
    const double s = i / 2000.0;
    Matrix sigma = Matrix::Zero(2, 2);
    sigma(0, 0) = s;
    sigma(1, 1) = 1.0 - s;
    const Matrix candidate = kron(Matrix(Matrix::Identity(2, 2) / 2.0), sigma);
    oracle = std::min(oracle, 0.5 * trace_norm(Matrix(rho1.matrix() - candidate)));
  }
  ACCEPT(criterion, std::abs(oracle - 0.75) <= 1e-6);

  for (int n = 1; n <= 2; ++n) {
    InfOptions options;
    options.seed = derive_seed(0xDE17A, n);
    const InfResult result =
        distance_to_family(antisymmetric_state(n), random_target_family(n), nullptr, options);
    ACCEPT(criterion, result.value >= 0.25);
    if (n == 1) ACCEPT(criterion, std::abs(result.value - oracle) <= 1e-3);
  }
  ACCEPT(criterion, criterion.elapsed() < 300.0);
}

TEST_CASE("criterion 3: spectral separation of triangular and flat states") {
  Criterion criterion(3, "airplane lemma");
  const Rational bound(2, 11);
  for (int k = 4; k <= 12; ++k) {
    const AirplaneScan scan = airplane_scan(1 << k);
    ACCEPT(criterion, scan.min >= bound);
  }
  const AirplaneScan dense = airplane_scan(1 << 12);
  const double limit = 2.0 * std::pow(1.0 - 1.0 / std::numbers::sqrt2, 2.0);
  ACCEPT(criterion, std::abs(0.5 * dense.min_as_double() - limit) <= 0.01);
  ACCEPT(criterion, criterion.elapsed() < 120.0);
}

TEST_CASE("criterion 4: Lipschitz and Haar-average bounds") {
  Criterion criterion(4, "concentration bounds");

  // 10^4 random (rho, U, U', psi) quadruples across dims 2..16.
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int dim = 2 + static_cast<int>(derive_seed(0x1195, trial) % 15);
    std::mt19937_64 rng(derive_seed(0x1195C417, trial));
    const DensityMatrix rho = random_density(dim, rng());
    const Matrix u = haar_unitary(dim, rng);
    const Matrix v = haar_unitary(dim, rng);
    const PureState psi = random_pure_state(dim, rng);
    const double separation = (u - v).norm();
    if (separation < 1e-12) continue;
    const double ratio = std::abs(d_psi(u, psi, rho) - d_psi(v, psi, rho)) /
                         (d_psi_lipschitz_bound(rho) * separation);
    worst_ratio = std::max(worst_ratio, ratio);
  }
  ACCEPT(criterion, worst_ratio <= 1.0 + 1e-9);

  // 20 configurations x 10^4 Haar samples against the average bound.
  for (int config = 0; config < 20; ++config) {
    std::mt19937_64 rng(derive_seed(0xAB7, config));
    const int dim = 2 + static_cast<int>(rng() % 15);
    DensityMatrix rho = [&]() {
      switch (config % 3) {
        case 0: return random_density(dim, rng());
        case 1: return triangular_state(dim, dim);
        default: return random_pure_state(dim, rng).to_density();
      }
    }();
    const PureState psi = random_pure_state(dim, rng);
    const MonteCarloEstimate estimate = haar_average_mc(psi, rho, 10000, rng());
    ACCEPT(criterion, estimate.mean <= haar_average_bound(rho) + 3.0 * estimate.std_error);
  }
  ACCEPT(criterion, criterion.elapsed() < 600.0);
}

TEST_CASE("criterion 5: scrambling unitaries are found reliably") {
  Criterion criterion(5, "scrambling search");
  int successes = 0;
  for (int repetition = 0; repetition < 10; ++repetition) {
    const std::uint64_t seed = derive_seed(0x5C4A, repetition);
    const auto net = random_product_net(4, 50, derive_seed(seed, 1));
    const ScrambleReport report = scramble_search(4, net, 100, seed);
    if (report.found) {
      ++successes;
      ACCEPT(criterion, report.max_ratio <= 1.0);
      ACCEPT(criterion, report.tries <= 100);
    }
  }
  ACCEPT(criterion, successes >= 9);
  ACCEPT(criterion, criterion.elapsed() < 600.0);
}

TEST_CASE("criterion 6: nets cover and decoding respects its bounds") {
  Criterion criterion(6, "nets and decoding");

  struct Config {
    int dim;
    double epsilon;
  };
  const Config configs[] = {{2, 0.5}, {2, 0.25}, {2, 0.1}, {3, 0.5}, {4, 0.5}};
  std::vector<double> qubit_decode_errors;  // for the monotonicity check

  for (const auto& [dim, epsilon] : configs) {
    const StateNet net = build_net(dim, epsilon, derive_seed(0x6E7, dim * 1000 + static_cast<int>(100 * epsilon)));
    ACCEPT(criterion, net.certificate_passed());

    double worst_snap_slack = 0.0;
    double worst_decode = 0.0;
    bool decode_ok = true;
    for (int audit = 0; audit < 1000; ++audit) {
      const PovmElement e = random_povm_element(dim, derive_seed(0x57A9, audit * 10 + dim));
      const SnapResult snap = snap_element(e, net);
      const double actual = trace_norm(Matrix(e.matrix() - snap.approx.matrix()));
      worst_snap_slack = std::max(worst_snap_slack, actual - snap.error_bound);

      const Measurement m =
          random_measurement(dim, 3, derive_seed(0xDEC0, audit * 10 + dim));
      const DensityMatrix rho = random_density(dim, derive_seed(0xD0, audit * 10 + dim));
      const DecodeResult decoded = decode_measurement(m, net, rho);
      const ProbabilityVector reference = born_rule(m, rho);
      for (int i = 0; i < m.outcomes(); ++i) {
        decode_ok = decode_ok && std::abs(decoded.decoded[i] - reference[i]) <=
                                     decoded.per_outcome_bound[i] + 1e-12;
      }
      worst_decode = std::max(worst_decode, decoded.linf_error);
    }
    ACCEPT(criterion, worst_snap_slack <= 1e-12);
    ACCEPT(criterion, decode_ok);
    if (dim == 2) qubit_decode_errors.push_back(worst_decode);

    // Product snap on a square of this net (dim x dim system).
    for (int audit = 0; audit < 1000; ++audit) {
      const PovmElement ea = random_povm_element(dim, derive_seed(0xEA, audit * 10 + dim));
      const PovmElement eb = random_povm_element(dim, derive_seed(0xEB, audit * 10 + dim));
      const SnapResult snap = product_snap_element(ea, eb, net, net);
      const double actual =
          trace_norm(Matrix(kron(ea.matrix(), eb.matrix()) - snap.approx.matrix()));
      if (actual > snap.error_bound + 1e-12) {
        ACCEPT(criterion, false);
        break;
      }
    }
  }

  // Decode error shrinks as the qubit net refines: 0.5 -> 0.25 -> 0.1.
  ACCEPT(criterion, qubit_decode_errors.size() == 3);
  ACCEPT(criterion, qubit_decode_errors[0] >= qubit_decode_errors[1]);
  ACCEPT(criterion, qubit_decode_errors[1] >= qubit_decode_errors[2]);
  ACCEPT(criterion, criterion.elapsed() < 300.0);
}

TEST_CASE("criterion 7: exact key/lock separation and local tomography") {
  Criterion criterion(7, "key/lock GPT");
  for (int n = 1; n <= 16; ++n) {
    ACCEPT(criterion, keylock::adaptive_distance(n) == Rational(1));
  }
  for (int n = 1; n <= 12; ++n) {
    ACCEPT(criterion,
           keylock::product_family_distance(n) == pow2_inv(static_cast<unsigned>(n - 1)));
  }
  for (int len = 0; len <= 3; ++len) {
    ACCEPT(criterion, keylock::local_tomography_check(len));
  }
  ACCEPT(criterion, criterion.elapsed() < 120.0);
}

TEST_CASE("criterion 8: witness pairs reconstruct their difference") {
  Criterion criterion(8, "witness construction");
  double worst = 0.0;
  bool all_valid = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + static_cast<int>(derive_seed(0x817, trial) % 15);
    const TracelessWitness witness = random_traceless_witness(dim, derive_seed(0x818, trial));
    try {
      const auto [rho, sigma] = witness_pair(witness, dim, dim + 1);
      Matrix embedded = Matrix::Zero(dim + 1, dim + 1);
      embedded.topLeftCorner(dim, dim) = witness.op().matrix();
      worst = std::max(worst, trace_norm(Matrix(rho.matrix() - sigma.matrix() - embedded)));
    } catch (const std::exception&) {
      all_valid = false;
    }
  }
  ACCEPT(criterion, all_valid);
  ACCEPT(criterion, worst <= 1e-10);
  ACCEPT(criterion, criterion.elapsed() < 60.0);
}

TEST_CASE("criterion 9: metric sanity and the damped family demonstration") {
  Criterion criterion(9, "metric sanity");

  bool dm_ok = true;
  bool norm_ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t base = derive_seed(0x9E7, trial);
    const DensityMatrix rho = random_density(4, derive_seed(base, 1));
    const DensityMatrix sigma = random_density(4, derive_seed(base, 2));
    const HermitianOperator a = random_hermitian(4, derive_seed(base, 3));
    const double delta = trace_distance(rho, sigma);
    const double tn = trace_norm(a);

    const MeasurementFamily product =
        MeasurementFamily::product_rank1_bases(2, 2, SupStrategy::sample(10, derive_seed(base, 4)));
    const MeasurementFamily all =
        MeasurementFamily::all_rank1_bases(4, SupStrategy::sample(10, derive_seed(base, 5)));
    const MeasurementFamily damped = MeasurementFamily::damped(4);
    for (const auto* family : {&product, &all, &damped}) {
      dm_ok = dm_ok && d_m(rho, sigma, *family) <= delta + 1e-9;
      norm_ok = norm_ok && m_norm(a, *family) <= tn + 1e-9;
    }
  }
  ACCEPT(criterion, dm_ok);
  ACCEPT(criterion, norm_ok);

  const auto rows = damped_family_demo(8);
  for (const auto& row : rows) {
    if (row.n == 0) {
      ACCEPT(criterion, row.d_damped == 0.0);
      continue;
    }
    ACCEPT(criterion, std::abs(row.d_damped - std::exp(-2.0 * row.n)) <= 1e-12);
    ACCEPT(criterion, std::abs(row.delta - 1.0) <= 1e-12);
  }
  ACCEPT(criterion, criterion.elapsed() < 120.0);
}
