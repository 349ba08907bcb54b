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

// Report tables for experiment runs and for the published-table replay.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "csv.h"
#include "embedded.h"
#include "phrasefix/error.h"
#include "phrasefix/harness.h"

namespace phrasefix {
namespace {

constexpr double kPublishedTolerance = 0.002;
constexpr double kMeanTolerance = 0.1;
constexpr int kPublishedTotal = 80;

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

// Percentages of small counts land exactly on ties (66.25); round them up
// like the printed tables do rather than to even.
std::string percent_1dp(double pct) {
  return fixed(std::floor(pct * 10.0 + 0.5) / 10.0, 1);
}

std::string format_p(double p) { return p < 0.001 ? "<0.001" : fixed(p, 3); }

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, std::vector<std::string> header)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot write '" + path.string() + "'");
    row(header);
  }
  void row(const std::vector<std::string>& fields) {
    csv::write_record(out_, fields);
  }
  std::filesystem::path close() {
    out_.close();
    if (!out_) throw Error("failed writing '" + path_.string() + "'");
    return path_;
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());
}

// The column a level contributes to a per-phrase level table.
const CellResult* level_cell(const DesignResult& result, PhraseType type,
                             Level level) {
  return result.find(type, level,
                     level == Level::kTrain0 ? Method::kGoogleOnly
                                             : Method::kBagOfSentences);
}

std::filesystem::path write_levels(const DesignResult& result, PhraseType type,
                                   const std::filesystem::path& out_dir) {
  const PhraseSet& phrases = builtin_phrase_set(type);
  const CellResult* cells[3];
  for (std::size_t i = 0; i < 3; ++i) {
    cells[i] = level_cell(result, type, kAllLevels[i]);
  }
  CsvFile file(out_dir / ("levels_" + std::string(to_string(type)) + ".csv"),
               {"phrase", "pct_level0", "n0", "pct_level1", "n1", "pct_level2",
                "n2", "p_value"});
  for (const Phrase& p : phrases.phrases()) {
    std::vector<std::string> fields = {p.display};
    std::vector<int> correct, totals;
    for (const CellResult* cell : cells) {
      if (!cell) {
        fields.insert(fields.end(), {"", ""});
        continue;
      }
      const Score& s = cell->per_phrase[static_cast<std::size_t>(p.id)];
      fields.push_back(percent_1dp(s.percent()));
      fields.push_back(std::to_string(s.correct));
      correct.push_back(s.correct);
      totals.push_back(s.total);
    }
    std::string p_value = "NA";
    if (correct.size() >= 2) {
      try {
        auto stat = chi_squared_statistic(
            ContingencyTable::correct_incorrect(correct, totals));
        p_value = format_p(chi_squared_pvalue(stat.statistic, stat.df));
      } catch (const InvalidArgument&) {
        // All correct or all incorrect: independence is untestable.
      }
    }
    fields.push_back(p_value);
    file.row(fields);
  }
  return file.close();
}

std::vector<double> percents(const CellResult& cell) {
  std::vector<double> out;
  for (const Score& s : cell.per_phrase) out.push_back(s.percent());
  return out;
}

Score pooled(const CellResult& cell) {
  Score total;
  for (const Score& s : cell.per_phrase) {
    total.correct += s.correct;
    total.total += s.total;
  }
  return total;
}

struct PublishedRow {
  std::string phrase;
  double pct[3];
  int correct[3];
  std::string p_value;
};

std::vector<PublishedRow> published_rows(std::string_view file) {
  std::istringstream in{std::string(detail::embedded_file(file))};
  auto header = csv::read_record(in);
  if (!header || header->size() != 8) {
    throw ParseError(std::string(file) + ": unexpected header");
  }
  std::vector<PublishedRow> rows;
  while (auto record = csv::read_record(in)) {
    if (record->size() == 1 && record->front().empty()) continue;
    if (record->size() != 8) throw ParseError(std::string(file) + ": bad row");
    PublishedRow row;
    row.phrase = (*record)[0];
    for (std::size_t i = 0; i < 3; ++i) {
      auto pct = csv::parse_double((*record)[1 + 2 * i]);
      auto n = csv::parse_int((*record)[2 + 2 * i]);
      if (!pct || !n) throw ParseError(std::string(file) + ": bad number");
      row.pct[i] = *pct;
      row.correct[i] = static_cast<int>(*n);
    }
    row.p_value = (*record)[7];
    rows.push_back(std::move(row));
  }
  return rows;
}

bool p_matches(double computed, const std::string& published) {
  if (!published.empty() && published.front() == '<') {
    auto bound = csv::parse_double(std::string_view(published).substr(1));
    return bound && computed < *bound;
  }
  auto value = csv::parse_double(published);
  return value && std::fabs(computed - *value) <= kPublishedTolerance;
}

}  // namespace

std::vector<std::filesystem::path> write_design_reports(
    const ExperimentConfig& config, const DesignResult& result,
    const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::filesystem::path> written;

  {
    const auto path = out_dir / "counts.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << design_json(config, result);
    if (!out) throw Error("failed writing '" + path.string() + "'");
    written.push_back(path);
  }

  {
    CsvFile file(out_dir / "timing.csv",
                 {"phrase_type", "level", "method", "elapsed_seconds"});
    for (const CellResult& c : result.cells) {
      file.row({std::string(to_string(c.phrase_type)),
                std::string(to_string(c.level)),
                std::string(to_string(c.method)), fixed(c.elapsed_seconds, 6)});
    }
    written.push_back(file.close());
  }

  for (PhraseType type : config.phrase_types) {
    if (!level_cell(result, type, Level::kTrain0)) continue;
    written.push_back(write_levels(result, type, out_dir));
  }

  {
    CsvFile file(out_dir / "type_means.csv",
                 {"phrase_type", "level", "method", "mean", "std"});
    for (const CellResult& c : result.cells) {
      LevelSummary s = summarize(percents(c));
      file.row({std::string(to_string(c.phrase_type)),
                std::string(to_string(c.level)),
                std::string(to_string(c.method)), fixed(s.mean, 2),
                fixed(s.stddev, 2)});
    }
    written.push_back(file.close());
  }

  {
    CsvFile file(out_dir / "classifiers.csv",
                 {"phrase_type", "level", "method", "correct", "total",
                  "mean_percent", "p_value_vs_bos"});
    for (const CellResult& c : result.cells) {
      const Score total = pooled(c);
      std::string p_value = "NA";
      const CellResult* bos =
          result.find(c.phrase_type, c.level, Method::kBagOfSentences);
      if (bos && bos != &c && total.total > 0) {
        const Score base = pooled(*bos);
        if (base.total > 0) {
          p_value = format_p(two_proportion_test(total.correct, total.total,
                                                 base.correct, base.total));
        }
      }
      file.row({std::string(to_string(c.phrase_type)),
                std::string(to_string(c.level)),
                std::string(to_string(c.method)), std::to_string(total.correct),
                std::to_string(total.total), fixed(c.mean_percent, 2), p_value});
    }
    written.push_back(file.close());
  }
  return written;
}

ReplayReport replay_published_tables() {
  ReplayReport report;
  const std::pair<PhraseType, std::string_view> tables[] = {
      {PhraseType::kAsIs, "published_as_is_counts.csv"},
      {PhraseType::kReduced, "published_reduced_counts.csv"}};
  for (const auto& [type, file] : tables) {
    const auto rows = published_rows(file);
    double pct_sum[3] = {0.0, 0.0, 0.0};
    for (const PublishedRow& row : rows) {
      ReplayRow r;
      r.phrase_type = type;
      r.phrase = row.phrase;
      const int totals[3] = {kPublishedTotal, kPublishedTotal, kPublishedTotal};
      for (std::size_t i = 0; i < 3; ++i) {
        r.correct[i] = row.correct[i];
        pct_sum[i] += row.pct[i];
      }
      r.chi2 = chi_squared_statistic(
          ContingencyTable::correct_incorrect(r.correct, totals));
      r.p_value = chi_squared_pvalue(r.chi2.statistic, r.chi2.df);
      r.published = row.p_value;
      r.matches = p_matches(r.p_value, r.published);
      report.rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < 3; ++i) {
      ReplayMean m;
      m.phrase_type = type;
      m.level = kAllLevels[i];
      m.computed = pct_sum[i] / static_cast<double>(rows.size());
      report.means.push_back(m);
    }
  }

  std::istringstream in{std::string(detail::embedded_file("published_type_means.csv"))};
  csv::read_record(in);
  while (auto record = csv::read_record(in)) {
    if (record->size() == 1 && record->front().empty()) continue;
    if (record->size() != 4) throw ParseError("published_type_means.csv: bad row");
    const PhraseType type = parse_phrase_type((*record)[0]);
    const Level level = parse_level((*record)[1]);
    auto mean = csv::parse_double((*record)[2]);
    if (!mean) throw ParseError("published_type_means.csv: bad mean");
    auto it = std::find_if(report.means.begin(), report.means.end(),
                           [&](const ReplayMean& m) {
                             return m.phrase_type == type && m.level == level;
                           });
    if (it == report.means.end()) {
      ReplayMean m;
      m.phrase_type = type;
      m.level = level;
      it = report.means.insert(report.means.end(), m);
    }
    it->published = *mean;
    it->matches = it->computed &&
                  std::fabs(*it->computed - *mean) <= kMeanTolerance + 1e-9;
  }
  return report;
}

std::vector<std::filesystem::path> write_replay_reports(
    const ReplayReport& report, const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  std::vector<std::filesystem::path> written;
  {
    CsvFile file(out_dir / "replay_pvalues.csv",
                 {"phrase_type", "phrase", "n_google_only", "n_train5",
                  "n_train10", "chi2", "df", "p_value", "published", "matches"});
    for (const ReplayRow& r : report.rows) {
      file.row({std::string(to_string(r.phrase_type)), r.phrase,
                std::to_string(r.correct[0]), std::to_string(r.correct[1]),
                std::to_string(r.correct[2]), fixed(r.chi2.statistic, 4),
                std::to_string(r.chi2.df), fixed(r.p_value, 6), r.published,
                r.matches ? "yes" : "no"});
    }
    written.push_back(file.close());
  }
  {
    CsvFile file(out_dir / "replay_means.csv",
                 {"phrase_type", "level", "computed", "published", "diff",
                  "matches"});
    for (const ReplayMean& m : report.means) {
      file.row({std::string(to_string(m.phrase_type)),
                std::string(to_string(m.level)),
                m.computed ? fixed(*m.computed, 4) : "NA", fixed(m.published, 1),
                m.computed ? fixed(*m.computed - m.published, 4) : "NA",
                m.computed ? (m.matches ? "yes" : "no") : "NA"});
    }
    written.push_back(file.close());
  }
  return written;
}

}  // namespace phrasefix
