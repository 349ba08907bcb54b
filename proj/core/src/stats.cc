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

#include "phrasefix/stats.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "phrasefix/bag_of_sentences.h"
#include "phrasefix/error.h"

namespace phrasefix {

Score score(std::span<const std::pair<PhraseId, PhraseId>> predictions) {
  Score s;
  for (const auto& [predicted, target] : predictions) {
    ++s.total;
    if (predicted != kUnrecognized && predicted == target) ++s.correct;
  }
  return s;
}

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols,
                                   std::vector<long long> counts)
    : rows_(rows), cols_(cols), counts_(std::move(counts)) {
  if (rows_ == 0 || cols_ == 0) {
    throw InvalidArgument("contingency table must be non-empty");
  }
  if (counts_.size() != rows_ * cols_) {
    throw InvalidArgument("contingency table has " +
                          std::to_string(counts_.size()) + " counts, expected " +
                          std::to_string(rows_ * cols_));
  }
  for (long long c : counts_) {
    if (c < 0) throw InvalidArgument("contingency counts must be >= 0");
  }
}

ContingencyTable ContingencyTable::correct_incorrect(
    std::span<const int> correct, std::span<const int> totals) {
  if (correct.size() != totals.size()) {
    throw InvalidArgument("correct and total counts differ in length");
  }
  const std::size_t k = correct.size();
  std::vector<long long> counts(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    if (correct[j] < 0 || correct[j] > totals[j]) {
      throw InvalidArgument("correct count outside [0, total]");
    }
    counts[j] = correct[j];
    counts[k + j] = static_cast<long long>(totals[j]) - correct[j];
  }
  return ContingencyTable(2, k, std::move(counts));
}

long long ContingencyTable::row_total(std::size_t r) const {
  long long sum = 0;
  for (std::size_t c = 0; c < cols_; ++c) sum += at(r, c);
  return sum;
}

long long ContingencyTable::col_total(std::size_t c) const {
  long long sum = 0;
  for (std::size_t r = 0; r < rows_; ++r) sum += at(r, c);
  return sum;
}

long long ContingencyTable::grand_total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0LL);
}

ChiSquared chi_squared_statistic(const ContingencyTable& table) {
  if (table.rows() < 2 || table.cols() < 2) {
    throw InvalidArgument("chi-squared needs at least a 2 x 2 table");
  }
  std::vector<double> row(table.rows());
  std::vector<double> col(table.cols());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    row[r] = static_cast<double>(table.row_total(r));
    if (row[r] == 0.0) throw InvalidArgument("degenerate table");
  }
  for (std::size_t c = 0; c < table.cols(); ++c) {
    col[c] = static_cast<double>(table.col_total(c));
    if (col[c] == 0.0) throw InvalidArgument("degenerate table");
  }
  const double n = static_cast<double>(table.grand_total());
  ChiSquared out;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      const double expected = row[r] * col[c] / n;
      const double diff = static_cast<double>(table.at(r, c)) - expected;
      out.statistic += diff * diff / expected;
    }
  }
  out.df = static_cast<int>((table.rows() - 1) * (table.cols() - 1));
  return out;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 100000;

// P(a, x) by the power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxTerms; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction; for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a) || !(x >= 0.0) || std::isnan(x)) {
    throw InvalidArgument("incomplete gamma needs a > 0 and x >= 0");
  }
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double chi_squared_pvalue(double chi2, int df) {
  if (df < 1) throw InvalidArgument("degrees of freedom must be >= 1");
  if (!(chi2 >= 0.0)) throw InvalidArgument("chi-squared statistic must be >= 0");
  return regularized_gamma_q(0.5 * df, 0.5 * chi2);
}

double two_proportion_test(int c1, int n1, int c2, int n2) {
  if (n1 <= 0 || n2 <= 0) throw InvalidArgument("sample sizes must be > 0");
  if (c1 < 0 || c1 > n1 || c2 < 0 || c2 > n2) {
    throw InvalidArgument("successes outside [0, n]");
  }
  const double p1 = static_cast<double>(c1) / n1;
  const double p2 = static_cast<double>(c2) / n2;
  const double pooled = static_cast<double>(c1 + c2) / (n1 + n2);
  if (pooled == 0.0 || pooled == 1.0) return 1.0;
  const double se =
      std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  const double z = (p1 - p2) / se;
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

LevelSummary summarize(std::span<const double> percents) {
  if (percents.size() != static_cast<std::size_t>(kPhrasesPerSet)) {
    throw InvalidArgument("summary needs " + std::to_string(kPhrasesPerSet) +
                          " per-phrase values, got " +
                          std::to_string(percents.size()));
  }
  const double n = static_cast<double>(percents.size());
  LevelSummary s;
  for (double v : percents) s.mean += v;
  s.mean /= n;
  double ss = 0.0;
  for (double v : percents) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / (n - 1.0));
  return s;
}

}  // namespace phrasefix
