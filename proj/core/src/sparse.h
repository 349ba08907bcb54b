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

#ifndef PHRASEFIX_SRC_SPARSE_H_
#define PHRASEFIX_SRC_SPARSE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace phrasefix::detail {

// Compressed sparse rows; the training paths touch only the few non-zero
// word frequencies of each document.
class SparseRows {
 public:
  SparseRows() = default;
  // Throws TrainingError on a non-finite entry or ragged rows.
  SparseRows(const std::vector<std::vector<double>>& dense, std::size_t cols);

  std::size_t rows() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t cols() const { return cols_; }

  std::span<const std::size_t> indices(std::size_t r) const {
    return {index_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }
  std::span<const double> values(std::size_t r) const {
    return {value_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }

  double dot(std::size_t r, std::span<const double> w) const;
  // out += alpha * row(r)
  void axpy(std::size_t r, double alpha, std::span<double> out) const;

 private:
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> index_;
  std::vector<double> value_;
};

}  // namespace phrasefix::detail

#endif  // PHRASEFIX_SRC_SPARSE_H_
