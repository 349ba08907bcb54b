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

// Maximum entropy (multinomial logistic) phrase classifier.
//
// With word-frequency features f_{w,c'}(d, c) = [c == c'] N(d,w)/N(d) the
// conditional model is P(c|d) = exp(lambda_c'x) / sum_c' exp(lambda_c''x),
// where lambda_c is the column of the parameter matrix for class c. At the
// maximum of the mean conditional log-likelihood, model feature
// expectations equal empirical ones; feature_expectation_gap measures how
// far a model is from that point.

#ifndef PHRASEFIX_MAXENT_H_
#define PHRASEFIX_MAXENT_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "phrasefix/corpus.h"

namespace phrasefix {

struct MaxentConfig {
  int max_iters = 5000;
  double step = 1.0;         // initial ascent step; halved on a decrease
  double tolerance = 1e-4;   // stop once the expectation gap drops below
  double l2 = 0.0;           // optional penalty (l2/2)|lambda|^2

  void validate() const;
  bool operator==(const MaxentConfig&) const = default;
};

// kStalled: no step down to 2^-60 of the initial one increased the
// likelihood.
enum class MaxentStop { kConverged, kMaxIterations, kStalled };

struct MaxentDiagnostics {
  int iterations = 0;
  double gradient_norm = 0.0;   // max-norm of the final ascent direction
  double log_likelihood = 0.0;  // mean over training documents
  MaxentStop stop = MaxentStop::kMaxIterations;
};

class MaxentModel {
 public:
  MaxentModel() = default;
  // Zero parameters over the given vocabulary and classes.
  MaxentModel(Vocabulary vocabulary, std::vector<PhraseId> classes);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  std::span<const PhraseId> classes() const { return classes_; }
  std::size_t num_classes() const { return classes_.size(); }

  // lambda for (term column, class index).
  double lambda(std::size_t term, std::size_t klass) const {
    return lambda_[term * classes_.size() + klass];
  }
  double& lambda(std::size_t term, std::size_t klass) {
    return lambda_[term * classes_.size() + klass];
  }
  // Row-major |vocabulary| x |classes|.
  std::span<const double> parameters() const { return lambda_; }
  std::span<double> parameters() { return lambda_; }

  const MaxentDiagnostics& diagnostics() const { return diagnostics_; }
  void set_diagnostics(const MaxentDiagnostics& d) { diagnostics_ = d; }

 private:
  Vocabulary vocabulary_;
  std::vector<PhraseId> classes_;
  std::vector<double> lambda_;
  MaxentDiagnostics diagnostics_;
};

// P(c|x) for every class, in model.classes() order. Max-shifted before
// exponentiation. Throws InvalidArgument on a dimension mismatch.
std::vector<double> predict_proba(const MaxentModel& model,
                                  std::span<const double> x);

// Mean over rows of log P(label|row).
double mean_log_likelihood(const MaxentModel& model,
                           const DocTermMatrix& matrix);

// Gradient of mean_log_likelihood with respect to the parameters, laid out
// like MaxentModel::parameters(): empirical minus model feature expectation.
std::vector<double> log_likelihood_gradient(const MaxentModel& model,
                                            const DocTermMatrix& matrix);

// max over (w, c) of |empirical - model expectation of f_{w,c}|, both
// averaged uniformly over rows.
double feature_expectation_gap(const MaxentModel& model,
                               const DocTermMatrix& matrix);

// Full-batch gradient ascent from lambda = 0 with step halving on any
// decrease of the (penalized) likelihood. Classes are `classes`, or the
// distinct labels when empty. Throws TrainingError on an empty or
// unlabelled matrix, a listed class with no rows, or a non-finite
// likelihood (the message names the iteration).
MaxentModel train_maxent(const DocTermMatrix& matrix, const MaxentConfig& config,
                         std::span<const PhraseId> classes = {});

// Argmax of predict_proba; ties go to the lowest class id.
PhraseId classify_maxent_features(const MaxentModel& model,
                                  std::span<const double> x);
PhraseId classify_maxent(const MaxentModel& model, std::string_view transcript);

}  // namespace phrasefix

#endif  // PHRASEFIX_MAXENT_H_
