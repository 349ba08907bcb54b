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

#include "sparse.h"

#include <cmath>
#include <string>

#include "phrasefix/error.h"

namespace phrasefix::detail {

SparseRows::SparseRows(const std::vector<std::vector<double>>& dense,
                       std::size_t cols)
    : cols_(cols) {
  offsets_.reserve(dense.size() + 1);
  offsets_.push_back(0);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) {
      throw TrainingError("row " + std::to_string(r) + " has " +
                          std::to_string(dense[r].size()) +
                          " features, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      double v = dense[r][c];
      if (!std::isfinite(v)) {
        throw TrainingError("non-finite feature at row " + std::to_string(r) +
                            ", column " + std::to_string(c));
      }
      if (v != 0.0) {
        index_.push_back(c);
        value_.push_back(v);
      }
    }
    offsets_.push_back(index_.size());
  }
}

double SparseRows::dot(std::size_t r, std::span<const double> w) const {
  double sum = 0.0;
  for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
    sum += value_[k] * w[index_[k]];
  }
  return sum;
}

void SparseRows::axpy(std::size_t r, double alpha, std::span<double> out) const {
  for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
    out[index_[k]] += alpha * value_[k];
  }
}

}  // namespace phrasefix::detail
