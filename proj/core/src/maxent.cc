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

#include "phrasefix/maxent.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "phrasefix/error.h"
#include "sparse.h"

namespace phrasefix {

void MaxentConfig::validate() const {
  if (max_iters < 0) throw InvalidArgument("maxent: max_iters must be >= 0");
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidArgument("maxent: step must be > 0");
  }
  if (!(tolerance > 0.0)) throw InvalidArgument("maxent: tolerance must be > 0");
  if (!(l2 >= 0.0) || !std::isfinite(l2)) {
    throw InvalidArgument("maxent: l2 must be >= 0");
  }
}

MaxentModel::MaxentModel(Vocabulary vocabulary, std::vector<PhraseId> classes)
    : vocabulary_(std::move(vocabulary)),
      classes_(std::move(classes)),
      lambda_(vocabulary_.size() * classes_.size(), 0.0) {}

namespace {

// Softmax of class scores in place; returns log of the normalizer.
double softmax_in_place(std::span<double> scores) {
  double shift = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (double& s : scores) {
    s = std::exp(s - shift);
    z += s;
  }
  for (double& s : scores) s /= z;
  return shift + std::log(z);
}

void sparse_scores(const MaxentModel& model, const detail::SparseRows& x,
                   std::size_t r, std::span<double> scores) {
  std::fill(scores.begin(), scores.end(), 0.0);
  const std::size_t k = model.num_classes();
  auto lambda = model.parameters();
  auto idx = x.indices(r);
  auto val = x.values(r);
  for (std::size_t q = 0; q < idx.size(); ++q) {
    const double* row = lambda.data() + idx[q] * k;
    for (std::size_t c = 0; c < k; ++c) scores[c] += val[q] * row[c];
  }
}

struct Problem {
  detail::SparseRows x;
  std::vector<std::size_t> label_index;  // class position per row
};

Problem make_problem(const MaxentModel& model, const DocTermMatrix& matrix) {
  if (matrix.num_rows() == 0) throw TrainingError("maxent: empty training matrix");
  if (!matrix.has_labels()) throw TrainingError("maxent: training matrix has no labels");
  if (!(matrix.vocabulary() == model.vocabulary())) {
    throw InvalidArgument("maxent: matrix and model vocabularies differ");
  }
  Problem p{detail::SparseRows(matrix.rows(), matrix.num_columns()), {}};
  auto classes = model.classes();
  for (PhraseId label : matrix.labels()) {
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) {
      throw InvalidArgument("maxent: label " + std::to_string(label) +
                            " is not a model class");
    }
    p.label_index.push_back(static_cast<std::size_t>(it - classes.begin()));
  }
  return p;
}

// Mean log-likelihood; when `gradient` is non-empty it receives the
// empirical minus model expectations.
double evaluate(const MaxentModel& model, const Problem& p,
                std::span<double> gradient) {
  const std::size_t k = model.num_classes();
  const std::size_t n = p.label_index.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> probs(k);
  if (!gradient.empty()) std::fill(gradient.begin(), gradient.end(), 0.0);
  double ll = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    sparse_scores(model, p.x, r, probs);
    const double gold_score = probs[p.label_index[r]];
    const double log_z = softmax_in_place(probs);
    ll += gold_score - log_z;
    if (gradient.empty()) continue;
    auto idx = p.x.indices(r);
    auto val = p.x.values(r);
    for (std::size_t q = 0; q < idx.size(); ++q) {
      double* row = gradient.data() + idx[q] * k;
      const double v = val[q] * inv_n;
      row[p.label_index[r]] += v;
      for (std::size_t c = 0; c < k; ++c) row[c] -= v * probs[c];
    }
  }
  return ll * inv_n;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> predict_proba(const MaxentModel& model,
                                  std::span<const double> x) {
  if (x.size() != model.vocabulary().size()) {
    throw InvalidArgument("maxent: feature vector has length " +
                          std::to_string(x.size()) + ", model expects " +
                          std::to_string(model.vocabulary().size()));
  }
  const std::size_t k = model.num_classes();
  if (k == 0) throw InvalidArgument("maxent: model has no classes");
  std::vector<double> scores(k, 0.0);
  for (std::size_t w = 0; w < x.size(); ++w) {
    if (x[w] == 0.0) continue;
    for (std::size_t c = 0; c < k; ++c) scores[c] += x[w] * model.lambda(w, c);
  }
  softmax_in_place(scores);
  return scores;
}

double mean_log_likelihood(const MaxentModel& model, const DocTermMatrix& matrix) {
  return evaluate(model, make_problem(model, matrix), {});
}

std::vector<double> log_likelihood_gradient(const MaxentModel& model,
                                            const DocTermMatrix& matrix) {
  std::vector<double> g(model.parameters().size());
  evaluate(model, make_problem(model, matrix), g);
  return g;
}

double feature_expectation_gap(const MaxentModel& model,
                               const DocTermMatrix& matrix) {
  return max_abs(log_likelihood_gradient(model, matrix));
}

MaxentModel train_maxent(const DocTermMatrix& matrix, const MaxentConfig& config,
                         std::span<const PhraseId> classes) {
  config.validate();
  if (matrix.num_rows() == 0) throw TrainingError("maxent: empty training matrix");
  if (!matrix.has_labels()) throw TrainingError("maxent: training matrix has no labels");

  std::set<PhraseId> present(matrix.labels().begin(), matrix.labels().end());
  std::vector<PhraseId> labels;
  if (classes.empty()) {
    labels.assign(present.begin(), present.end());
  } else {
    std::set<PhraseId> requested(classes.begin(), classes.end());
    for (PhraseId c : requested) {
      if (!present.count(c)) {
        throw TrainingError("maxent: class " + std::to_string(c) +
                            " has no training examples");
      }
    }
    labels.assign(requested.begin(), requested.end());
  }

  MaxentModel model(matrix.vocabulary(), labels);
  const Problem problem = make_problem(model, matrix);
  const std::size_t dim = model.parameters().size();

  // Penalized objective and its ascent direction at the current parameters.
  auto penalized = [&](const MaxentModel& m, std::span<double> grad,
                       int iteration) {
    double ll = evaluate(m, problem, grad);
    if (config.l2 > 0.0) {
      auto lambda = m.parameters();
      double sq = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        sq += lambda[i] * lambda[i];
        grad[i] -= config.l2 * lambda[i];
      }
      ll -= 0.5 * config.l2 * sq;
    }
    if (!std::isfinite(ll)) {
      throw TrainingError("maxent: likelihood is not finite at iteration " +
                          std::to_string(iteration));
    }
    return ll;
  };

  std::vector<double> grad(dim);
  std::vector<double> trial_grad(dim);
  double objective = penalized(model, grad, 0);
  double step = config.step;
  const double min_step = config.step * std::ldexp(1.0, -60);

  MaxentDiagnostics diag;
  diag.stop = MaxentStop::kMaxIterations;
  MaxentModel trial = model;
  int it = 0;
  for (; it < config.max_iters; ++it) {
    if (max_abs(grad) < config.tolerance) {
      diag.stop = MaxentStop::kConverged;
      break;
    }
    bool accepted = false;
    while (step >= min_step) {
      auto base = model.parameters();
      auto next = trial.parameters();
      for (std::size_t i = 0; i < dim; ++i) next[i] = base[i] + step * grad[i];
      double trial_objective = penalized(trial, trial_grad, it + 1);
      if (trial_objective >= objective) {
        std::swap(model, trial);
        grad.swap(trial_grad);
        objective = trial_objective;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      diag.stop = MaxentStop::kStalled;
      break;
    }
  }
  if (it == config.max_iters && max_abs(grad) < config.tolerance) {
    diag.stop = MaxentStop::kConverged;
  }
  diag.iterations = it;
  diag.gradient_norm = max_abs(grad);
  diag.log_likelihood = evaluate(model, problem, {});
  model.set_diagnostics(diag);
  return model;
}

PhraseId classify_maxent_features(const MaxentModel& model,
                                  std::span<const double> x) {
  std::vector<double> p = predict_proba(model, x);
  auto classes = model.classes();
  std::size_t best = 0;
  for (std::size_t c = 1; c < p.size(); ++c) {
    if (p[c] > p[best] || (p[c] == p[best] && classes[c] < classes[best])) {
      best = c;
    }
  }
  return classes[best];
}

PhraseId classify_maxent(const MaxentModel& model, std::string_view transcript) {
  return classify_maxent_features(
      model, vectorize(tokenize(transcript), model.vocabulary()));
}

}  // namespace phrasefix
