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

// Scoring, chi-squared tests of independence, pooled proportion tests and
// per-level summaries.

#ifndef PHRASEFIX_STATS_H_
#define PHRASEFIX_STATS_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "phrasefix/corpus.h"

namespace phrasefix {

struct Score {
  int correct = 0;
  int total = 0;

  double percent() const {
    return total == 0 ? 0.0 : 100.0 * correct / total;
  }
  bool operator==(const Score&) const = default;
};

// Counts exact (predicted, target) matches. kUnrecognized never matches.
Score score(std::span<const std::pair<PhraseId, PhraseId>> predictions);

// Non-negative r x c counts, row-major.
class ContingencyTable {
 public:
  ContingencyTable(std::size_t rows, std::size_t cols,
                   std::vector<long long> counts);

  // 2 x k table: row 0 correct, row 1 incorrect (total - correct).
  static ContingencyTable correct_incorrect(std::span<const int> correct,
                                            std::span<const int> totals);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long long at(std::size_t r, std::size_t c) const {
    return counts_[r * cols_ + c];
  }
  long long row_total(std::size_t r) const;
  long long col_total(std::size_t c) const;
  long long grand_total() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<long long> counts_;
};

struct ChiSquared {
  double statistic = 0.0;
  int df = 0;
};

// Pearson statistic without continuity correction, df = (r-1)(c-1).
// Throws InvalidArgument("degenerate table") when any margin is zero.
ChiSquared chi_squared_statistic(const ContingencyTable& table);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Upper tail Q(df/2, chi2/2). Throws InvalidArgument for df < 1 or chi2 < 0.
double chi_squared_pvalue(double chi2, int df);

// Two-sided pooled two-proportion z-test. Returns 1 when the pooled
// proportion is 0 or 1.
double two_proportion_test(int c1, int n1, int c2, int n2);

struct LevelSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) standard deviation
};

// Mean and sample standard deviation of the 16 per-phrase percentages.
// Throws InvalidArgument unless exactly kPhrasesPerSet values are given.
LevelSummary summarize(std::span<const double> percents);

}  // namespace phrasefix

#endif  // PHRASEFIX_STATS_H_
