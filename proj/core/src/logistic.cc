/*
 * Copyright 2026 The fairaudit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <Eigen/Dense>
#include <cmath>

#include "fairaudit/error.h"
#include "learners_internal.h"

namespace fairaudit::internal {
namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

struct Problem {
  const Matrix& x;  // intercept column last
  const Vector& y;
  const Vector& w;
  double l2;

  // sum_i w_i [log(1 + e^z_i) - y_i z_i] + l2/2 |beta|^2 (intercept free).
  double Objective(const Vector& theta) const {
    const Vector z = x * theta;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      if (w[i] == 0.0) continue;
      loss += w[i] * (Softplus(z[i]) - y[i] * z[i]);
    }
    const auto d = theta.size() - 1;
    return loss + 0.5 * l2 * theta.head(d).squaredNorm();
  }
};

}  // namespace

// Damped Newton iterations with Armijo backtracking. The objective is
// strictly convex whenever l2 > 0, and Newton steps reach the optimum to
// machine precision in a handful of iterations.
LinearModel TrainLogistic(const EncodedMatrix& x,
                          std::span<const double> weights,
                          const LearnerConfig& config) {
  const auto n = static_cast<Eigen::Index>(x.rows());
  const auto d = static_cast<Eigen::Index>(x.cols());
  Matrix design(n, d + 1);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto row = x.row(static_cast<std::size_t>(r));
    for (Eigen::Index c = 0; c < d; ++c) {
      design(r, c) = row[static_cast<std::size_t>(c)];
    }
    design(r, d) = 1.0;
  }
  Vector y(n);
  Vector w(n);
  double pos = 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = x.target()[static_cast<std::size_t>(i)];
    w[i] = weights[static_cast<std::size_t>(i)];
    pos += w[i] * y[i];
    total += w[i];
  }
  const Problem problem{design, y, w, config.l2_penalty};

  Vector theta = Vector::Zero(d + 1);
  theta[d] = std::log(pos / (total - pos));
  double objective = problem.Objective(theta);
  Vector penalty_mask = Vector::Ones(d + 1);
  penalty_mask[d] = 0.0;

  LinearModel model;
  double grad_norm = 0.0;
  int iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    const Vector z = design * theta;
    Vector residual(n);
    Vector curvature(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = Sigmoid(z[i]);
      residual[i] = w[i] * (p - y[i]);
      curvature[i] = w[i] * p * (1.0 - p);
    }
    const Vector grad = design.transpose() * residual +
                        config.l2_penalty * penalty_mask.cwiseProduct(theta);
    grad_norm = grad.norm();
    if (grad_norm <= config.tolerance) break;

    Matrix hessian = design.transpose() *
                     (design.array().colwise() * curvature.array()).matrix();
    hessian.diagonal() += config.l2_penalty * penalty_mask;
    // Tiny ridge keeps the unpenalized / separable cases solvable.
    hessian.diagonal().array() += 1e-12 * (1.0 + hessian.diagonal().maxCoeff());
    const Vector step = hessian.ldlt().solve(-grad);
    const double slope = grad.dot(step);
    if (!(slope < 0.0)) break;

    double t = 1.0;
    bool moved = false;
    for (int k = 0; k < 60; ++k) {
      const Vector candidate = theta + t * step;
      const double value = problem.Objective(candidate);
      if (value <= objective + 1e-4 * t * slope) {
        theta = candidate;
        objective = value;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // Objective flat to rounding: accept the full step if it shrinks the
      // gradient, otherwise stop.
      const Vector candidate = theta + step;
      const Vector zc = design * candidate;
      Vector rc(n);
      for (Eigen::Index i = 0; i < n; ++i) rc[i] = w[i] * (Sigmoid(zc[i]) - y[i]);
      const Vector gc = design.transpose() * rc +
                        config.l2_penalty * penalty_mask.cwiseProduct(candidate);
      if (gc.norm() < grad_norm) {
        theta = candidate;
        objective = problem.Objective(theta);
      } else {
        break;
      }
    }
  }

  model.coefficients.assign(theta.data(), theta.data() + d);
  model.intercept = theta[d];
  model.iterations = iter;
  {
    const Vector z = design * theta;
    Vector residual(n);
    for (Eigen::Index i = 0; i < n; ++i) residual[i] = w[i] * (Sigmoid(z[i]) - y[i]);
    model.gradient_norm =
        (design.transpose() * residual +
         config.l2_penalty * penalty_mask.cwiseProduct(theta))
            .norm();
  }
  return model;
}

}  // namespace fairaudit::internal
