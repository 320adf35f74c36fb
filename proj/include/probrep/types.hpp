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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace probrep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Global numeric tolerances. Constraint checks (feasibility of states,
/// POVMs, projectors) use `constraint`; derived assertions use `assertion`;
/// quantities that are exact by construction are allowed `exact` slack.
struct Tolerances {
  double exact = 1e-12;
  double constraint = 1e-10;
  double assertion = 1e-9;
};

/// Mutable process-wide tolerance set.
Tolerances& tolerances();

}  // namespace probrep
