// Copyright 2026 The phrasefix Authors.
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

#include "svr_dual_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phrasefix::testing {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Euclidean projection of v onto {z in [0, u]^2n : sum(z[:n]) = sum(z[n:])}.
// sum_i sign_i clip(v_i - t sign_i, 0, u) is piecewise linear and
// non-increasing in t; its root is found exactly between breakpoints.
std::vector<double> project(const std::vector<double>& v, double u) {
  const std::size_t n2 = v.size();
  const std::size_t n = n2 / 2;
  auto sign = [n](std::size_t i) { return i < n ? 1.0 : -1.0; };
  auto balance = [&](double t) {
    double s = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
      s += sign(i) * std::clamp(v[i] - t * sign(i), 0.0, u);
    }
    return s;
  };
  std::vector<double> knots;
  for (std::size_t i = 0; i < n2; ++i) {
    knots.push_back(v[i] * sign(i));
    knots.push_back((v[i] - u) * sign(i));
  }
  std::sort(knots.begin(), knots.end());
  double t = knots.front();
  if (balance(knots.front()) <= 0.0) {
    t = knots.front();
  } else if (balance(knots.back()) >= 0.0) {
    t = knots.back();
  } else {
    std::size_t lo = 0, hi = knots.size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      (balance(knots[mid]) > 0.0 ? lo : hi) = mid;
    }
    const double f_lo = balance(knots[lo]);
    const double f_hi = balance(knots[hi]);
    t = f_lo == f_hi ? knots[lo]
                     : knots[lo] + (knots[hi] - knots[lo]) * f_lo / (f_lo - f_hi);
  }
  std::vector<double> z(n2);
  for (std::size_t i = 0; i < n2; ++i) {
    z[i] = std::clamp(v[i] - t * sign(i), 0.0, u);
  }
  return z;
}

}  // namespace

double reference_objective(const DenseRows& x, const std::vector<double>& y,
                           const std::vector<double>& w, double b, double c,
                           double epsilon) {
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    loss += std::max(0.0, std::fabs(y[i] - dot(w, x[i]) - b) - epsilon);
  }
  return 0.5 * dot(w, w) + c / static_cast<double>(x.size()) * loss;
}

DualOracleResult solve_svr_dual(const DenseRows& x, const std::vector<double>& y,
                                double c, double epsilon, int max_iters) {
  const std::size_t n = x.size();
  const std::size_t m = x.front().size();
  const double u = c / static_cast<double>(n);

  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  double frobenius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      k[i][j] = dot(x[i], x[j]);
      frobenius += k[i][j] * k[i][j];
    }
  }
  // The Hessian in (a, a*) has norm 2 |K|_2 <= 2 |K|_F.
  const double step = 1.0 / (2.0 * std::sqrt(frobenius) + 1e-12);

  std::vector<double> z(2 * n, 0.0);
  std::vector<double> beta(n), grad(2 * n);
  DualOracleResult out;
  for (out.iterations = 0; out.iterations < max_iters; ++out.iterations) {
    for (std::size_t i = 0; i < n; ++i) beta[i] = z[i] - z[n + i];
    for (std::size_t i = 0; i < n; ++i) {
      double g = y[i];
      for (std::size_t j = 0; j < n; ++j) g -= k[i][j] * beta[j];
      grad[i] = g - epsilon;
      grad[n + i] = -g - epsilon;
    }
    std::vector<double> trial(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) trial[i] = z[i] + step * grad[i];
    std::vector<double> next = project(trial, u);
    double change = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      change = std::max(change, std::fabs(next[i] - z[i]));
    }
    z = std::move(next);
    if (change < 1e-15) break;
  }

  for (std::size_t i = 0; i < n; ++i) beta[i] = z[i] - z[n + i];
  out.weights.assign(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.weights[j] += beta[i] * x[i][j];
  }
  // The primal is convex and piecewise linear in b with kinks at r_i +- eps.
  out.primal = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - dot(out.weights, x[i]);
    for (double b : {r - epsilon, r + epsilon}) {
      double f = reference_objective(x, y, out.weights, b, c, epsilon);
      if (f < out.primal) {
        out.primal = f;
        out.bias = b;
      }
    }
  }
  double quad = 0.0, sum_z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) quad += beta[i] * k[i][j] * beta[j];
    sum_z += z[i] + z[n + i];
  }
  out.dual = -0.5 * quad - epsilon * sum_z + dot(y, beta);
  return out;
}

}  // namespace phrasefix::testing
