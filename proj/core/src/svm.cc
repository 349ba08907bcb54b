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

#include "phrasefix/svm.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "phrasefix/error.h"
#include "sparse.h"

namespace phrasefix {

void SvmConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("svm: C must be > 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("svm: epsilon must be >= 0");
  }
  if (max_iters < 1) throw InvalidArgument("svm: max_iters must be >= 1");
  if (!(step > 0.0)) throw InvalidArgument("svm: step must be > 0");
  if (!(decay >= 0.0)) throw InvalidArgument("svm: decay must be >= 0");
  if (!(tolerance > 0.0)) throw InvalidArgument("svm: tolerance must be > 0");
}

namespace {

// Margin sets larger than this skip refinement; the dense solve is cubic.
constexpr std::size_t kMaxRefineMargin = 300;

struct Iterate {
  std::vector<double> w;
  double b = 0.0;
  double objective = 0.0;
};

double loss_sum(const detail::SparseRows& x, std::span<const double> y,
                std::span<const double> w, double b, double epsilon) {
  double loss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double r = y[i] - x.dot(i, w) - b;
    loss += std::max(0.0, std::abs(r) - epsilon);
  }
  return loss;
}

double squared_norm(std::span<const double> w) {
  double s = 0.0;
  for (double v : w) s += v * v;
  return s;
}

double objective(const detail::SparseRows& x, std::span<const double> y,
                 std::span<const double> w, double b, double c, double epsilon) {
  const double n = static_cast<double>(y.size());
  return 0.5 * squared_norm(w) + (c / n) * loss_sum(x, y, w, b, epsilon);
}

// Residual pattern of a point: strictly inside the band, on one of its
// edges, or outside on one side. `side` is +1 when y lies above the fit.
struct PointState {
  enum Kind : std::uint8_t { kInside, kEdge, kOutside } kind = kInside;
  double side = 1.0;
};

std::vector<PointState> pattern_at(const detail::SparseRows& x,
                                   std::span<const double> y, const Iterate& at,
                                   double epsilon, double band) {
  std::vector<PointState> states(y.size());
  std::size_t nearest = 0;
  double nearest_gap = std::numeric_limits<double>::infinity();
  bool any_edge = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - x.dot(i, at.w) - at.b;
    const double gap = std::abs(std::abs(r) - epsilon);
    states[i].side = r < 0 ? -1.0 : 1.0;
    if (gap <= band) {
      states[i].kind = PointState::kEdge;
      any_edge = true;
    } else if (std::abs(r) > epsilon) {
      states[i].kind = PointState::kOutside;
    }
    if (gap < nearest_gap) {
      nearest_gap = gap;
      nearest = i;
    }
  }
  // Without an edge point the bias has no stationarity equation.
  if (!any_edge && !states.empty()) states[nearest].kind = PointState::kEdge;
  return states;
}

struct PatternSolution {
  Iterate point;
  std::vector<std::size_t> edges;
  std::vector<double> edge_weight;  // coefficient of x_e in w
};

// Solves the stationarity conditions of J with every point held in its
// pattern state: edge points satisfy |r| = epsilon exactly, outside points
// contribute their fixed subgradient.
std::optional<PatternSolution> solve_pattern(const detail::SparseRows& x,
                                             std::span<const double> y,
                                             std::span<const PointState> states,
                                             double c, double epsilon) {
  const std::size_t n = y.size();
  const std::size_t m = x.cols();
  const double scale = c / static_cast<double>(n);

  PatternSolution out;
  std::vector<double> g(m, 0.0);  // (C/N) sum over outside points of side * x_i
  double side_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (states[i].kind == PointState::kEdge) {
      out.edges.push_back(i);
    } else if (states[i].kind == PointState::kOutside) {
      x.axpy(i, scale * states[i].side, g);
      side_total += scale * states[i].side;
    }
  }
  const std::size_t k = out.edges.size();
  if (k == 0 || k > kMaxRefineMargin) return std::nullopt;

  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd xm = Eigen::MatrixXd::Zero(kk, static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < k; ++j) {
    auto idx = x.indices(out.edges[j]);
    auto val = x.values(out.edges[j]);
    for (std::size_t q = 0; q < idx.size(); ++q) {
      xm(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(idx[q])) = val[q];
    }
  }
  Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(m));
  // w = g + Xm' beta;  Xm w + b = y_e - side_e * epsilon;  sum beta = -S.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kk + 1, kk + 1);
  a.topLeftCorner(kk, kk) = xm * xm.transpose();
  a.topRightCorner(kk, 1).setOnes();
  a.bottomLeftCorner(1, kk).setOnes();
  Eigen::VectorXd rhs(kk + 1);
  Eigen::VectorXd xg = xm * gv;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t e = out.edges[j];
    rhs(static_cast<Eigen::Index>(j)) =
        y[e] - states[e].side * epsilon - xg(static_cast<Eigen::Index>(j));
  }
  rhs(kk) = -side_total;
  Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(rhs);
  Eigen::VectorXd w = gv + xm.transpose() * sol.head(kk);
  out.point.w.assign(w.data(), w.data() + w.size());
  out.point.b = sol(kk);
  out.edge_weight.assign(sol.data(), sol.data() + kk);
  for (double v : out.point.w) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  if (!std::isfinite(out.point.b)) return std::nullopt;
  return out;
}

// Moves edge points whose multiplier left its admissible box: beyond C/N
// the point belongs outside, below zero it belongs inside. With a zero-width
// band both edges coincide and only the magnitude is bounded.
bool release_violators(std::span<PointState> states, const PatternSolution& sol,
                       double scale, double epsilon) {
  const double slack = 1e-12 * scale;
  bool changed = false;
  for (std::size_t j = 0; j < sol.edges.size(); ++j) {
    PointState& s = states[sol.edges[j]];
    const double beta = sol.edge_weight[j];
    if (epsilon == 0.0) {
      if (std::abs(beta) > scale + slack) {
        s = {PointState::kOutside, beta < 0 ? -1.0 : 1.0};
        changed = true;
      }
      continue;
    }
    const double along = s.side * beta;
    if (along > scale + slack) {
      s.kind = PointState::kOutside;
      changed = true;
    } else if (along < -slack) {
      s.kind = PointState::kInside;
      changed = true;
    }
  }
  return changed;
}

// Exact minimizer of J on the segment [from, to]. J restricted to a line is
// convex piecewise quadratic with a kink wherever a residual crosses a band
// edge, so walking the kinks in order finds the first sign change of J'.
Iterate line_search(const detail::SparseRows& x, std::span<const double> y,
                    const Iterate& from, const Iterate& to, double c,
                    double epsilon) {
  const std::size_t n = y.size();
  const double scale = c / static_cast<double>(n);
  std::vector<double> dw(from.w.size());
  double curvature = 0.0;
  double slope = 0.0;  // derivative of the regularizer at t = 0
  for (std::size_t j = 0; j < dw.size(); ++j) {
    dw[j] = to.w[j] - from.w[j];
    curvature += dw[j] * dw[j];
    slope += from.w[j] * dw[j];
  }
  const double db = to.b - from.b;
  std::vector<double> r(n), dr(n);
  std::vector<std::pair<double, std::size_t>> kinks;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = y[i] - x.dot(i, from.w) - from.b;
    dr[i] = x.dot(i, dw) + db;
    if (dr[i] == 0.0) continue;
    for (double edge : {epsilon, -epsilon}) {
      const double t = (r[i] - edge) / dr[i];
      if (t > 0.0 && t < 1.0) kinks.emplace_back(t, i);
    }
  }
  std::sort(kinks.begin(), kinks.end());
  auto loss_slope = [&](std::size_t i, double t) {
    const double u = r[i] - t * dr[i];
    if (std::abs(u) <= epsilon) return 0.0;
    return -scale * (u > 0 ? 1.0 : -1.0) * dr[i];
  };

  std::vector<double> contribution(n);
  const double first = kinks.empty() ? 1.0 : kinks.front().first;
  for (std::size_t i = 0; i < n; ++i) {
    contribution[i] = loss_slope(i, 0.5 * first);
    slope += contribution[i];
  }
  double lo = 0.0;
  double best_t = 1.0;
  std::size_t k = 0;
  while (true) {
    const double hi = k < kinks.size() ? kinks[k].first : 1.0;
    if (slope + hi * curvature >= 0.0) {
      best_t = curvature > 0.0 ? std::clamp(-slope / curvature, lo, hi) : lo;
      break;
    }
    if (k == kinks.size()) break;
    std::size_t group_end = k;
    while (group_end < kinks.size() && kinks[group_end].first == hi) ++group_end;
    const double next = group_end < kinks.size() ? kinks[group_end].first : 1.0;
    for (; k < group_end; ++k) {
      const std::size_t i = kinks[k].second;
      slope -= contribution[i];
      contribution[i] = loss_slope(i, 0.5 * (hi + next));
      slope += contribution[i];
    }
    lo = hi;
  }

  Iterate out;
  out.w.resize(dw.size());
  for (std::size_t j = 0; j < dw.size(); ++j) out.w[j] = from.w[j] + best_t * dw[j];
  out.b = from.b + best_t * db;
  out.objective = objective(x, y, out.w, out.b, c, epsilon);
  return out;
}

// Active-set polish of the subgradient result: guess the residual pattern,
// repair it until the multipliers are admissible, solve, and step to the
// best point on the way. Only strict improvements are accepted.
Iterate refine(const detail::SparseRows& x, std::span<const double> y,
               Iterate best, double c, double epsilon) {
  static constexpr double kBands[] = {1e-9, 1e-6, 1e-4, 1e-3, 1e-2};
  constexpr int kMaxRounds = 25;  // tiny problems settle within ten
  constexpr int kMaxRepairs = 50;
  const double scale = c / static_cast<double>(y.size());
  for (int round = 0; round < kMaxRounds; ++round) {
    bool improved = false;
    for (double band : kBands) {
      std::vector<PointState> states = pattern_at(x, y, best, epsilon, band);
      std::optional<PatternSolution> sol;
      for (int repair = 0; repair < kMaxRepairs; ++repair) {
        auto next = solve_pattern(x, y, states, c, epsilon);
        if (!next) break;
        sol = std::move(next);
        if (!release_violators(states, *sol, scale, epsilon)) break;
      }
      if (!sol) continue;
      Iterate candidate = line_search(x, y, best, sol->point, c, epsilon);
      if (candidate.objective < best.objective) {
        best = std::move(candidate);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return best;
}

SvrSolution fit(const detail::SparseRows& x, std::span<const double> y,
                const SvmConfig& config) {
  const std::size_t n = y.size();
  const std::size_t m = x.cols();
  const double scale = config.c / static_cast<double>(n);
  const double eps = config.epsilon;

  std::vector<double> w(m, 0.0);
  double b = 0.0;
  Iterate best{w, b, objective(x, y, w, b, config.c, eps)};
  double best_at_checkpoint = best.objective;
  int next_checkpoint = 64;

  std::vector<double> gw(m);
  int t = 0;
  for (; t < config.max_iters; ++t) {
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = y[i] - x.dot(i, w) - b;
      double excess = std::abs(r) - eps;
      if (excess > 0.0) {
        loss += excess;
        double s = r > 0 ? 1.0 : -1.0;
        x.axpy(i, -scale * s, gw);
        gb -= scale * s;
      }
    }
    double f = 0.5 * squared_norm(w) + scale * loss;
    if (!std::isfinite(f)) {
      throw TrainingError("svm objective is not finite at iteration " +
                          std::to_string(t));
    }
    if (f < best.objective) {
      best.w = w;
      best.b = b;
      best.objective = f;
    }
    if (t == next_checkpoint) {
      // Geometric windows: compare against the best from half as long ago.
      if (best_at_checkpoint - best.objective <
          config.tolerance * (1.0 + std::abs(best.objective))) {
        break;
      }
      best_at_checkpoint = best.objective;
      next_checkpoint *= 2;
    }
    const double eta = config.step / (1.0 + t * config.decay);
    for (std::size_t j = 0; j < m; ++j) w[j] -= eta * (w[j] + gw[j]);
    b -= eta * gb;
  }
  if (t == config.max_iters) {
    double f = objective(x, y, w, b, config.c, eps);
    if (f < best.objective) best = Iterate{w, b, f};
  }
  if (config.refine) best = refine(x, y, std::move(best), config.c, eps);

  SvrSolution out;
  out.weights = std::move(best.w);
  out.bias = best.b;
  out.objective = best.objective;
  out.iterations = t;
  return out;
}

detail::SparseRows design_of(const SvrProblem& problem) {
  if (problem.x.empty()) throw TrainingError("svm: empty training set");
  if (problem.x.size() != problem.y.size()) {
    throw TrainingError("svm: row count does not match target count");
  }
  for (double v : problem.y) {
    if (!std::isfinite(v)) throw TrainingError("svm: non-finite target");
  }
  return detail::SparseRows(problem.x, problem.x.front().size());
}

}  // namespace

double svr_objective(const SvrProblem& problem, std::span<const double> weights,
                     double bias, double c, double epsilon) {
  detail::SparseRows x = design_of(problem);
  if (weights.size() != x.cols()) throw InvalidArgument("svm: dimension mismatch");
  return objective(x, problem.y, weights, bias, c, epsilon);
}

std::vector<double> svr_subgradient(const SvrProblem& problem,
                                    std::span<const double> weights, double bias,
                                    double c, double epsilon) {
  detail::SparseRows x = design_of(problem);
  if (weights.size() != x.cols()) throw InvalidArgument("svm: dimension mismatch");
  const double scale = c / static_cast<double>(problem.y.size());
  std::vector<double> g(weights.begin(), weights.end());
  g.push_back(0.0);
  for (std::size_t i = 0; i < problem.y.size(); ++i) {
    double r = problem.y[i] - x.dot(i, weights) - bias;
    if (std::abs(r) - epsilon > 0.0) {
      double s = r > 0 ? 1.0 : -1.0;
      x.axpy(i, -scale * s, std::span<double>(g).first(x.cols()));
      g.back() -= scale * s;
    }
  }
  return g;
}

SvrSolution fit_linear_svr(const SvrProblem& problem, const SvmConfig& config) {
  config.validate();
  detail::SparseRows x = design_of(problem);
  return fit(x, problem.y, config);
}

SvmModel train_svm(const DocTermMatrix& matrix, const SvmConfig& config,
                   std::span<const PhraseId> classes) {
  config.validate();
  if (matrix.num_rows() == 0) throw TrainingError("svm: empty training matrix");
  if (!matrix.has_labels()) throw TrainingError("svm: training matrix has no labels");
  if (matrix.num_columns() == 0) throw TrainingError("svm: empty vocabulary");

  std::set<PhraseId> present(matrix.labels().begin(), matrix.labels().end());
  std::vector<PhraseId> labels;
  if (classes.empty()) {
    labels.assign(present.begin(), present.end());
  } else {
    std::set<PhraseId> requested(classes.begin(), classes.end());
    for (PhraseId c : requested) {
      if (!present.count(c)) {
        throw TrainingError("svm: class " + std::to_string(c) +
                            " has no training examples");
      }
    }
    labels.assign(requested.begin(), requested.end());
  }

  detail::SparseRows x(matrix.rows(), matrix.num_columns());
  SvmModel model;
  model.vocabulary = matrix.vocabulary();
  model.config = config;
  std::vector<double> y(matrix.num_rows());
  for (PhraseId label : labels) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = matrix.labels()[i] == label ? 1.0 : -1.0;
    }
    SvrSolution sol = fit(x, y, config);
    model.classes.push_back(
        SvmClass{label, std::move(sol.weights), sol.bias, sol.objective,
                 sol.iterations});
  }
  return model;
}

double decision_value(const SvmModel& model, std::span<const double> x,
                      PhraseId label) {
  for (const SvmClass& c : model.classes) {
    if (c.label != label) continue;
    if (x.size() != c.weights.size()) {
      throw InvalidArgument("svm: feature vector has length " +
                            std::to_string(x.size()) + ", model expects " +
                            std::to_string(c.weights.size()));
    }
    double v = c.bias;
    for (std::size_t j = 0; j < x.size(); ++j) v += c.weights[j] * x[j];
    return v;
  }
  throw InvalidArgument("svm: unknown class " + std::to_string(label));
}

PhraseId classify_svm_features(const SvmModel& model, std::span<const double> x) {
  if (model.classes.empty()) throw InvalidArgument("svm: model has no classes");
  PhraseId best = model.classes.front().label;
  double best_value = -std::numeric_limits<double>::infinity();
  for (const SvmClass& c : model.classes) {
    double v = decision_value(model, x, c.label);
    if (v > best_value || (v == best_value && c.label < best)) {
      best_value = v;
      best = c.label;
    }
  }
  return best;
}

PhraseId classify_svm(const SvmModel& model, std::string_view transcript) {
  return classify_svm_features(model,
                               vectorize(tokenize(transcript), model.vocabulary));
}

}  // namespace phrasefix
