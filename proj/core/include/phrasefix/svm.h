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

// Linear epsilon-insensitive support vector machine, trained one-vs-rest
// over the phrase classes.
//
// Each binary machine f(x) = w'x + b minimizes the primal
//
//   J(w, b) = 1/2 |w|^2 + (C/N) sum_i max(0, |y_i - f(x_i)| - epsilon)
//
// with y_i = +1 for the class and -1 for the rest. Residuals inside the
// epsilon band cost nothing.

#ifndef PHRASEFIX_SVM_H_
#define PHRASEFIX_SVM_H_

#include <span>
#include <string_view>
#include <vector>

#include "phrasefix/corpus.h"

namespace phrasefix {

struct SvmConfig {
  double c = 1.0;          // regularization weight, > 0
  double epsilon = 0.1;    // width of the zero-loss band, >= 0
  int max_iters = 20000;   // subgradient iterations, >= 1
  double step = 1.0;       // initial step eta0, > 0
  double decay = 1.0;      // eta_t = eta0 / (1 + t * decay), >= 0
  double tolerance = 1e-10;  // stop when the best objective stalls, > 0
  // Re-solve the final active set exactly (see fit_linear_svr).
  bool refine = true;

  // Throws InvalidArgument.
  void validate() const;
  bool operator==(const SvmConfig&) const = default;
};

// A dense design matrix for a single binary problem. Rows may hold any
// finite values.
struct SvrProblem {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
};

struct SvrSolution {
  std::vector<double> weights;
  double bias = 0.0;
  double objective = 0.0;
  int iterations = 0;
};

// J(w, b) as defined above.
double svr_objective(const SvrProblem& problem, std::span<const double> weights,
                     double bias, double c, double epsilon);

// One element of the subdifferential of J at (w, b): weights first, bias
// last. Residuals exactly on the band edge contribute zero.
std::vector<double> svr_subgradient(const SvrProblem& problem,
                                    std::span<const double> weights,
                                    double bias, double c, double epsilon);

// Full-batch subgradient descent from w = 0, b = 0, keeping the best
// iterate. When config.refine is set, the residual pattern of the best
// iterate is then used to solve the stationarity system of J restricted to
// that pattern, and the result is kept only if it lowers J. Deterministic.
SvrSolution fit_linear_svr(const SvrProblem& problem, const SvmConfig& config);

struct SvmClass {
  PhraseId label = 0;
  std::vector<double> weights;
  double bias = 0.0;
  double objective = 0.0;
  int iterations = 0;
};

struct SvmModel {
  Vocabulary vocabulary;
  SvmConfig config;
  std::vector<SvmClass> classes;  // ascending label
};

// One-vs-rest over `classes`, or over the distinct labels of the matrix when
// `classes` is empty. Throws TrainingError for an empty or unlabelled matrix,
// a listed class with no rows, or non-finite features.
SvmModel train_svm(const DocTermMatrix& matrix, const SvmConfig& config,
                   std::span<const PhraseId> classes = {});

// w_c'x + b_c. Throws InvalidArgument on a dimension mismatch or an unknown
// class.
double decision_value(const SvmModel& model, std::span<const double> x,
                      PhraseId label);

// Argmax of decision values over a feature vector; ties go to the lowest
// label.
PhraseId classify_svm_features(const SvmModel& model, std::span<const double> x);

// tokenize -> vectorize -> classify_svm_features.
PhraseId classify_svm(const SvmModel& model, std::string_view transcript);

}  // namespace phrasefix

#endif  // PHRASEFIX_SVM_H_
