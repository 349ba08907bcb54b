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

// Phrase sets, transcript ingestion, tokenization and the word-frequency
// document-term matrix shared by the SVM and maximum entropy classifiers.

#ifndef PHRASEFIX_CORPUS_H_
#define PHRASEFIX_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace phrasefix {

enum class PhraseType { kAsIs, kReduced, kPersonalized };

inline constexpr PhraseType kAllPhraseTypes[] = {
    PhraseType::kAsIs, PhraseType::kReduced, PhraseType::kPersonalized};

// "as_is", "reduced", "personalized".
std::string_view to_string(PhraseType type);
PhraseType parse_phrase_type(std::string_view name);

using PhraseId = int;

inline constexpr std::size_t kPhrasesPerSet = 16;

struct Phrase {
  PhraseId id = 0;
  // Normalized form: lowercase, single-space separated, no punctuation.
  std::string text;
  // Wording as printed on the checklist, e.g. "Implant(s) available".
  std::string display;
  PhraseType type = PhraseType::kAsIs;
};

// The 16 target phrases of one phrase type. Ids are 0..15 and every
// normalized text is distinct.
class PhraseSet {
 public:
  // Builds a set from 16 checklist wordings; id i is wordings[i].
  PhraseSet(PhraseType type, std::span<const std::string> wordings);

  PhraseType type() const { return type_; }
  std::span<const Phrase> phrases() const { return phrases_; }
  std::size_t size() const { return phrases_.size(); }
  bool contains(PhraseId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < phrases_.size();
  }
  // Throws InvalidArgument for an id outside the set.
  const Phrase& at(PhraseId id) const;

 private:
  PhraseType type_;
  std::vector<Phrase> phrases_;
};

// The shipped checklist wordings for each phrase type.
const PhraseSet& builtin_phrase_set(PhraseType type);

enum class Role { kTrain, kTest };

std::string_view to_string(Role role);
Role parse_role(std::string_view name);

// One spoken-phrase trial.
struct Observation {
  std::string transcript;  // verbatim recognizer output
  PhraseId target = 0;
  PhraseType phrase_type = PhraseType::kAsIs;
  std::string participant;
  int repetition = 1;
  Role role = Role::kTest;

  bool operator==(const Observation&) const = default;
};

using Document = std::vector<std::string>;

// Lowercases, drops every character that is not a letter, digit, ampersand
// or whitespace, then splits on whitespace.
Document tokenize(std::string_view raw);

// tokenize() re-joined with single spaces.
std::string normalize(std::string_view raw);

// Ordered distinct terms with an inverse index.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Keeps the given order; throws InvalidArgument on duplicates.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::span<const std::string> terms() const { return terms_; }
  const std::string& term(std::size_t column) const { return terms_.at(column); }
  std::optional<std::size_t> index_of(std::string_view term) const;

  bool operator==(const Vocabulary& other) const {
    return terms_ == other.terms_;
  }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Distinct tokens across docs in lexicographic order. Throws InvalidArgument
// ("empty corpus") when docs is empty.
Vocabulary build_vocabulary(std::span<const Document> docs);

// Word frequencies N(d,w)/N(d). Out-of-vocabulary tokens count toward N(d)
// only, so the entries sum to less than one when any are present.
std::vector<double> vectorize(const Document& doc, const Vocabulary& vocab);

// One feature row per document, optionally labelled.
class DocTermMatrix {
 public:
  DocTermMatrix(Vocabulary vocab, std::vector<std::vector<double>> rows,
                std::vector<PhraseId> labels = {});

  static DocTermMatrix from_documents(std::span<const Document> docs,
                                      Vocabulary vocab,
                                      std::vector<PhraseId> labels = {});

  const Vocabulary& vocabulary() const { return vocab_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_columns() const { return vocab_.size(); }
  std::span<const double> row(std::size_t i) const { return rows_.at(i); }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  bool has_labels() const { return !labels_.empty(); }
  std::span<const PhraseId> labels() const { return labels_; }

 private:
  Vocabulary vocab_;
  std::vector<std::vector<double>> rows_;
  std::vector<PhraseId> labels_;
};

// Corpus CSV: transcript,target_id,phrase_type,participant,repetition,role.
// Errors name the 1-based data row, e.g. "target out of range, row 2".
std::vector<Observation> read_corpus(std::istream& in);
std::vector<Observation> load_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, std::span<const Observation> obs);
void save_corpus(const std::filesystem::path& path,
                 std::span<const Observation> obs);

// Partitions by role, preserving order within each part.
std::pair<std::vector<Observation>, std::vector<Observation>> split_by_role(
    std::span<const Observation> obs);

}  // namespace phrasefix

#endif  // PHRASEFIX_CORPUS_H_
