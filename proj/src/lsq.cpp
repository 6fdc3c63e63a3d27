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

#include "hlab/lsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "hlab/qmath.hpp"

namespace hlab {

namespace {

// MINUIT-style transforms between bounded x and free u.
struct BoundMap {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  double to_x(int i, double u) const {
    const bool has_lo = std::isfinite(lo(i));
    const bool has_hi = std::isfinite(hi(i));
    if (has_lo && has_hi) return lo(i) + (hi(i) - lo(i)) * (std::sin(u) + 1.0) / 2.0;
    if (has_lo) return lo(i) - 1.0 + std::sqrt(u * u + 1.0);
    if (has_hi) return hi(i) + 1.0 - std::sqrt(u * u + 1.0);
    return u;
  }

  double to_u(int i, double x) const {
    const bool has_lo = std::isfinite(lo(i));
    const bool has_hi = std::isfinite(hi(i));
    if (has_lo && has_hi) {
      const double s = std::clamp(2.0 * (x - lo(i)) / (hi(i) - lo(i)) - 1.0, -1.0, 1.0);
      return std::asin(s);
    }
    if (has_lo) {
      const double a = std::max(x - lo(i), 0.0) + 1.0;
      return std::sqrt(a * a - 1.0);
    }
    if (has_hi) {
      const double a = std::max(hi(i) - x, 0.0) + 1.0;
      return std::sqrt(a * a - 1.0);
    }
    return x;
  }

  Eigen::VectorXd x_of(const Eigen::VectorXd& u) const {
    Eigen::VectorXd x(u.size());
    for (int i = 0; i < u.size(); ++i) x(i) = to_x(i, u(i));
    return x;
  }
};

struct Functor : Eigen::DenseFunctor<double> {
  const LsqProblem* prob;
  const BoundMap* map;

  Functor(const LsqProblem* p, const BoundMap* m, int inputs, int values)
      : Eigen::DenseFunctor<double>(inputs, values), prob(p), map(m) {}

  int operator()(const InputType& u, ValueType& fvec) const {
    fvec = prob->residuals(map->x_of(u));
    return fvec.allFinite() ? 0 : -1;
  }

  int df(const InputType& u, JacobianType& fjac) const {
    auto f = [this](const Eigen::VectorXd& uu) { return prob->residuals(map->x_of(uu)); };
    if (!prob->jacobian) {
      fjac = numeric_jacobian(f, u);
      return 0;
    }
    fjac = prob->jacobian(map->x_of(u));
    // Chain rule through the transform, dx/du by central differences.
    for (int i = 0; i < u.size(); ++i) {
      const double h = 1e-7 * std::max(1.0, std::abs(u(i)));
      const double dxdu = (map->to_x(i, u(i) + h) - map->to_x(i, u(i) - h)) / (2.0 * h);
      fjac.col(i) *= dxdu;
    }
    return 0;
  }
};

const char* status_name(Eigen::LevenbergMarquardtSpace::Status s) {
  using namespace Eigen::LevenbergMarquardtSpace;
  switch (s) {
    case ImproperInputParameters:
      return "improper input parameters";
    case RelativeReductionTooSmall:
      return "relative reduction below ftol";
    case RelativeErrorTooSmall:
      return "relative step below xtol";
    case RelativeErrorAndReductionTooSmall:
      return "relative step and reduction below tolerance";
    case CosinusTooSmall:
      return "residuals orthogonal to the Jacobian";
    case TooManyFunctionEvaluation:
      return "too many function evaluations";
    case FtolTooSmall:
      return "ftol too small, no further reduction possible";
    case XtolTooSmall:
      return "xtol too small, no further improvement possible";
    case GtolTooSmall:
      return "gtol too small, residuals orthogonal to the Jacobian";
    case UserAsked:
      return "residual evaluation failed";
    default:
      return "not started";
  }
}

}  // namespace

Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd j(f0.size(), x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp(i) += h;
    xm(i) -= h;
    j.col(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

LsqResult solve_lsq(const LsqProblem& problem, const Eigen::VectorXd& x0, const LsqOptions& opts) {
  const int np = static_cast<int>(x0.size());
  if (!problem.residuals) throw ValidationError("solve_lsq: residual function missing");
  BoundMap map;
  const double inf = std::numeric_limits<double>::infinity();
  map.lo = problem.lower.size() == np ? problem.lower : Eigen::VectorXd::Constant(np, -inf);
  map.hi = problem.upper.size() == np ? problem.upper : Eigen::VectorXd::Constant(np, inf);
  for (int i = 0; i < np; ++i) {
    if (!(map.lo(i) < map.hi(i))) throw ValidationError("solve_lsq: empty bound interval");
  }
  const Eigen::VectorXd r0 = problem.residuals(x0);
  const int nr = static_cast<int>(r0.size());
  if (nr < np) throw ValidationError("solve_lsq: fewer residuals than parameters");
  if (!r0.allFinite()) throw NumericalError("solve_lsq: non-finite residuals at the initial point");

  Eigen::VectorXd u(np);
  for (int i = 0; i < np; ++i) u(i) = map.to_u(i, x0(i));

  Functor functor(&problem, &map, np, nr);
  Eigen::LevenbergMarquardt<Functor> lm(functor);
  lm.setMaxfev(opts.max_evaluations);
  lm.setXtol(opts.xtol);
  lm.setFtol(opts.ftol);
  const auto status = lm.minimize(u);

  LsqResult res;
  res.x = map.x_of(u);
  res.iterations = static_cast<int>(lm.iterations());
  res.status = status_name(status);
  using namespace Eigen::LevenbergMarquardtSpace;
  res.converged = status == RelativeReductionTooSmall || status == RelativeErrorTooSmall ||
                  status == RelativeErrorAndReductionTooSmall || status == CosinusTooSmall ||
                  status == FtolTooSmall || status == XtolTooSmall || status == GtolTooSmall;

  const Eigen::VectorXd r = problem.residuals(res.x);
  if (!r.allFinite()) throw NumericalError("solve_lsq: non-finite residuals at the solution");
  res.residual_rms = std::sqrt(r.squaredNorm() / nr);

  const Eigen::MatrixXd j = problem.jacobian ? problem.jacobian(res.x) : numeric_jacobian(problem.residuals, res.x);
  const int dof = std::max(nr - np, 1);
  const double s2 = r.squaredNorm() / dof;
  const Eigen::MatrixXd jtj = j.transpose() * j;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jtj);
  res.covariance = s2 * cod.pseudoInverse();
  res.std_error = res.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  return res;
}

}  // namespace hlab
