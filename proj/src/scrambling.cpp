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

#include "probrep/scrambling.hpp"

#include <cmath>
#include <numbers>

#include "probrep/random.hpp"
#include "probrep/spectral.hpp"

namespace probrep {

double min_entropy(const DensityMatrix& rho) {
  return -std::log2(spectrum(rho.base()).maxCoeff());
}

double d_psi(const Matrix& u, const PureState& psi, const DensityMatrix& rho) {
  const int d = rho.dim();
  if (u.rows() != d || psi.dim() != d) throw std::invalid_argument("d_psi: dimension mismatch");
  const Vector rotated = u.adjoint() * psi.amplitudes();
  const double overlap = (rotated.adjoint() * rho.matrix() * rotated)(0, 0).real();
  return std::abs(overlap - 1.0 / static_cast<double>(d));
}

double d_effect(const Matrix& u, const PovmElement& e, const DensityMatrix& rho) {
  const int d = rho.dim();
  if (e.dim() != d) throw std::invalid_argument("d_effect: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(e.matrix());
  double total = 0.0;
  for (int j = 0; j < d; ++j) {
    const double p = solver.eigenvalues()[j];
    if (p <= 0.0) continue;
    total += p * d_psi(u, PureState(solver.eigenvectors().col(j)), rho);
  }
  return total;
}

double d_psi_lipschitz_bound(const DensityMatrix& rho) {
  return std::exp2(-min_entropy(rho) + 1.5);
}

double lipschitz_audit(const DensityMatrix& rho, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("lipschitz_audit: trials >= 1");
  const int d = rho.dim();
  const double bound = d_psi_lipschitz_bound(rho);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const Matrix u = haar_unitary(d, rng);
    const Matrix v = haar_unitary(d, rng);
    const PureState psi = random_pure_state(d, rng);
    const double separation = (u - v).norm();
    if (separation < 1e-12) continue;
    const double ratio = std::abs(d_psi(u, psi, rho) - d_psi(v, psi, rho)) / (bound * separation);
    worst = std::max(worst, ratio);
  }
  return worst;
}

double haar_average_bound(const DensityMatrix& rho) {
  return std::exp2(-std::log2(static_cast<double>(rho.dim())) - 0.5 * min_entropy(rho));
}

MonteCarloEstimate haar_average_mc(const PureState& psi, const DensityMatrix& rho, int samples,
                                   std::uint64_t seed) {
  if (samples < 100) throw std::invalid_argument("haar_average_mc: samples >= 100");
  const int d = rho.dim();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < samples; ++t) {
    const Matrix u = haar_unitary(d, derive_seed(seed, static_cast<std::uint64_t>(t)));
    const double value = d_psi(u, psi, rho);
    sum += value;
    sum_sq += value * value;
  }
  MonteCarloEstimate estimate;
  estimate.mean = sum / samples;
  const double variance = std::max(0.0, sum_sq / samples - estimate.mean * estimate.mean);
  estimate.std_error = std::sqrt(variance / samples);
  return estimate;
}

double delta_n(int n, std::size_t net_size) {
  if (net_size < 1) throw std::invalid_argument("delta_n: net_size >= 1");
  const double dim = std::exp2(n);
  return std::sqrt(768.0 * (1.0 + std::log(static_cast<double>(net_size))) / dim);
}

double scramble_threshold(int n, const PovmElement& e, double delta) {
  const double dim = std::exp2(n);
  return (e.matrix().trace().real() / dim) * (std::exp2(0.5 * (1.0 - n)) + delta);
}

namespace {

PovmElement compress_to_leading_block(const PovmElement& e, int dim) {
  if (e.dim() == dim) return e;
  if (e.dim() < dim) throw std::invalid_argument("scramble_search: net element too small");
  return PovmElement(HermitianOperator(e.matrix().topLeftCorner(dim, dim)));
}

}  // namespace

ScrambleReport scramble_search(int n, const std::vector<PovmElement>& net, int max_tries,
                               std::uint64_t seed, double eta_n) {
  if (n < 1 || n > 10) throw std::invalid_argument("scramble_search: n in 1..10");
  if (max_tries < 1) throw std::invalid_argument("scramble_search: max_tries >= 1");
  const int dim = 1 << n;
  if (eta_n < 0.0) eta_n = std::exp2(-n + 3);

  ScrambleReport report;
  report.n = n;
  report.dim = dim;
  const double delta = net.empty() ? 0.0 : delta_n(n, net.size());
  report.d_bound = 3.0 * eta_n + std::numbers::sqrt2 * std::exp2(-0.5 * n) + delta;

  std::vector<PovmElement> compressed;
  std::vector<double> thresholds;
  compressed.reserve(net.size());
  for (const auto& e : net) {
    compressed.push_back(compress_to_leading_block(e, dim));
    thresholds.push_back(scramble_threshold(n, compressed.back(), delta));
  }

  const DensityMatrix sigma = triangular_state(dim, dim);

  if (net.empty()) {
    report.found = true;
    report.tries = 0;
    report.unitary_seed = derive_seed(seed, 0);
    report.max_ratio = 0.0;
    return report;
  }

  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const std::uint64_t try_seed = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    const Matrix u = haar_unitary(dim, try_seed);
    double max_ratio = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < compressed.size(); ++i) {
      const double value = d_effect(u, compressed[i], sigma);
      const double threshold = thresholds[i];
      const double ratio = threshold > 0.0 ? value / threshold : (value > 1e-15 ? 2.0 : 0.0);
      max_ratio = std::max(max_ratio, ratio);
      if (ratio > 1.0) {
        ok = false;
        break;
      }
    }
    report.tries = attempt + 1;
    report.max_ratio = max_ratio;
    report.unitary_seed = try_seed;
    if (ok) {
      report.found = true;
      return report;
    }
  }
  report.found = false;
  return report;
}

std::vector<PovmElement> random_product_net(int n, int count, std::uint64_t seed) {
  const int dim_a = 1 << ((n + 1) / 2);
  const int dim_b = 1 << (n / 2);
  std::vector<PovmElement> net;
  net.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const PovmElement ea = random_povm_element(dim_a, derive_seed(seed, 2 * i));
    const PovmElement eb = random_povm_element(dim_b, derive_seed(seed, 2 * i + 1));
    net.emplace_back(HermitianOperator(kron(ea.matrix(), eb.matrix())));
  }
  return net;
}

}  // namespace probrep
