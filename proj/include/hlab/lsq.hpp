// Copyright 2026 The holonomy-lab Authors
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

#include <functional>
#include <string>

#include <Eigen/Dense>

namespace hlab {

/// Box-bounded nonlinear least squares. Infinite bounds mean unbounded.
struct LsqProblem {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residuals;
  // Optional analytic Jacobian of the residuals; central differences otherwise.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

struct LsqOptions {
  int max_evaluations = 4000;
  double xtol = 1e-14;
  double ftol = 1e-14;
};

struct LsqResult {
  Eigen::VectorXd x;
  Eigen::VectorXd std_error;
  Eigen::MatrixXd covariance;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
};

/// Levenberg-Marquardt (Eigen's MINPACK port) on bound-transformed
/// parameters. Covariance is s^2 (J^T J)^-1 in the original parameters.
LsqResult solve_lsq(const LsqProblem& problem, const Eigen::VectorXd& x0, const LsqOptions& opts = {});

/// Central-difference Jacobian.
Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x);

}  // namespace hlab
