#pragma once

// Datasets with one categorical feature, d numeric features and one target.
//
// CSV layout: UTF-8, comma separated, header row first. Numbers are written
// unquoted with 17 significant digits. A categorical value is quoted only when
// it contains a comma or a quote; multi-label cells separate labels with '|'.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "augbin/bitcode.hpp"
#include "augbin/errors.hpp"
#include "augbin/splitmix64.hpp"

namespace augbin {

/// One training instance.
struct Example {
  CategoryId category;
  std::vector<double> numeric;
  std::vector<double> target;

  bool operator==(const Example&) const = default;
};

struct DatasetSchema {
  std::string categorical = "category";
  bool multi_label = false;
  std::vector<std::string> numeric;
  std::string target = "y";

  void validate() const {
    std::set<std::string> seen{categorical};
    for (const auto& name : numeric) {
      if (!seen.insert(name).second) {
        throw std::invalid_argument("duplicate column name '" + name + "'");
      }
    }
    if (seen.contains(target)) {
      throw std::invalid_argument("target column '" + target + "' is also a feature");
    }
  }
};

struct Dataset {
  DatasetSchema schema;
  CategoryVocab vocab;
  std::vector<Example> rows;

  std::size_t numeric_width() const { return schema.numeric.size(); }
};

// ---------------------------------------------------------------------------
// Composite categories for multi-label cells.

/// Extends a base vocabulary with one id per distinct label set. Singleton
/// sets map to the base id; larger sets are appended after the base ids.
class CompositeRegistry {
 public:
  explicit CompositeRegistry(CategoryVocab base)
      : vocab_(std::move(base)), base_size_(vocab_.size()) {}

  const CategoryVocab& vocab() const { return vocab_; }
  std::size_t base_size() const { return base_size_; }

  /// Sorted, deduplicated labels joined by '|'.
  static std::string canonical_key(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::string key;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) key += '|';
      key += labels[i];
    }
    return key;
  }

  CategoryId id(const std::vector<std::string>& labels) {
    if (labels.empty()) throw std::invalid_argument("composite_id: empty label set");
    for (const auto& label : labels) {
      if (!vocab_.contains(label) || vocab_.id(label).value > base_size_) {
        throw VocabMissError("unknown category '" + label + "'");
      }
    }
    const std::string key = canonical_key(labels);
    if (key.find('|') == std::string::npos) return vocab_.id(key);
    return vocab_.append(key);
  }

 private:
  CategoryVocab vocab_;
  std::size_t base_size_;
};

inline CategoryId composite_id(const std::vector<std::string>& labels,
                               CompositeRegistry& registry) {
  return registry.id(labels);
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"' && field.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field += ch;
    }
  }
  if (quoted) throw DataError("unterminated quoted field", row);
  fields.push_back(std::move(field));
  return fields;
}

inline std::vector<std::string> split_labels(const std::string& cell) {
  std::vector<std::string> labels;
  std::string current;
  for (char ch : cell) {
    if (ch == '|') {
      labels.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  labels.push_back(current);
  return labels;
}

inline double parse_number(const std::string& text, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw DataError("cannot parse '" + text + "' as a number", row, col);
  }
  if (!std::isfinite(value)) {
    throw DataError("non-finite value '" + text + "'", row, col);
  }
  return value;
}

inline std::string quote_if_needed(const std::string& value) {
  if (value.find_first_of(",\"") == std::string::npos) return value;
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value,
                                 std::chars_format::general, 17);
  return std::string(buffer, ptr);
}

}  // namespace detail

/// Parses CSV text. Without `fixed_vocab` the vocabulary is built from the
/// categorical column; with it, labels outside the vocabulary raise
/// VocabMissError.
inline Dataset parse_csv(std::istream& in, const DatasetSchema& schema,
                         const CategoryVocab* fixed_vocab = nullptr) {
  schema.validate();
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = detail::split_csv_line(line, 1);

  auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("missing column '" + name + "'", 1);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cat_col = column_of(schema.categorical);
  std::vector<std::size_t> num_cols;
  for (const auto& name : schema.numeric) num_cols.push_back(column_of(name));
  const std::size_t target_col = column_of(schema.target);

  struct RawRow {
    std::string category;
    std::size_t row;
    Example example;
  };
  std::vector<RawRow> raw;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = detail::split_csv_line(line, row);
    if (fields.size() != header.size()) {
      throw DataError("expected " + std::to_string(header.size()) + " fields, got " +
                          std::to_string(fields.size()),
                      row);
    }
    RawRow r{fields[cat_col], row, {}};
    for (std::size_t j = 0; j < num_cols.size(); ++j) {
      r.example.numeric.push_back(
          detail::parse_number(fields[num_cols[j]], row, num_cols[j] + 1));
    }
    r.example.target.push_back(
        detail::parse_number(fields[target_col], row, target_col + 1));
    if (r.category.empty()) throw DataError("empty category", row, cat_col + 1);
    raw.push_back(std::move(r));
  }
  if (raw.empty()) throw DataError("dataset has no rows");

  Dataset data;
  data.schema = schema;
  if (fixed_vocab) {
    data.vocab = *fixed_vocab;
  } else if (!schema.multi_label) {
    std::vector<std::string> labels;
    for (const auto& r : raw) labels.push_back(r.category);
    data.vocab = build_vocab(labels);
  } else {
    // Base vocabulary from individual labels, then observed composite sets in
    // sorted key order so ids do not depend on row order.
    std::vector<std::string> singles;
    std::set<std::string> composite_keys;
    for (const auto& r : raw) {
      auto labels = detail::split_labels(r.category);
      singles.insert(singles.end(), labels.begin(), labels.end());
      const auto key = CompositeRegistry::canonical_key(labels);
      if (key.find('|') != std::string::npos) composite_keys.insert(key);
    }
    CompositeRegistry registry(build_vocab(singles));
    for (const auto& key : composite_keys) registry.id(detail::split_labels(key));
    data.vocab = registry.vocab();
  }

  for (auto& r : raw) {
    std::string key = r.category;
    if (schema.multi_label) key = CompositeRegistry::canonical_key(detail::split_labels(key));
    if (!data.vocab.contains(key)) {
      throw VocabMissError("unknown category '" + r.category + "'", r.row, cat_col + 1);
    }
    r.example.category = data.vocab.id(key);
    data.rows.push_back(std::move(r.example));
  }
  return data;
}

inline Dataset load_csv(const std::string& path, const DatasetSchema& schema,
                        const CategoryVocab* fixed_vocab = nullptr) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_csv(in, schema, fixed_vocab);
}

/// Header names of a CSV file.
inline std::vector<std::string> read_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return detail::split_csv_line(line, 1);
}

inline void write_csv(std::ostream& out, const Dataset& data) {
  out << detail::quote_if_needed(data.schema.categorical);
  for (const auto& name : data.schema.numeric) out << ',' << detail::quote_if_needed(name);
  out << ',' << detail::quote_if_needed(data.schema.target) << '\n';
  for (const auto& ex : data.rows) {
    out << detail::quote_if_needed(data.vocab.label(ex.category));
    for (double v : ex.numeric) out << ',' << detail::format_number(v);
    out << ',' << detail::format_number(ex.target.at(0)) << '\n';
  }
}

inline void save_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out, data);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// Synthetic data

/// Label of category c among `count`: "c" followed by c zero-padded to the
/// digit count of `count`, so lexicographic order equals numeric order.
inline std::string synth_label(std::size_t c, std::size_t count) {
  const std::size_t digits = std::to_string(count).size();
  std::string number = std::to_string(c);
  return "c" + std::string(digits - number.size(), '0') + number;
}

/// Seeded synthetic regression data.
///
/// Recipe, all draws from one SplitMix64(seed) stream in this order:
///   1. mu_c ~ U(-1, 1) for c = 1..N;
///   2. a_j ~ U(-1, 1) for j = 1..d;
///   3. per row: c = 1 + floor(u * N), x_j ~ U(-1, 1) for j = 1..d, then one
///      Box-Muller deviate e (always drawn, even when sigma = 0);
///      y = ((mu_c + a_1 x_1) + ... + a_d x_d) + sigma * e.
/// U(lo, hi) is lo + (hi - lo) * u with u = (next() >> 11) * 2^-53.
inline Dataset synth_gen(std::uint64_t seed, std::size_t categories, std::size_t numeric,
                         std::size_t rows, double sigma) {
  if (categories == 0) throw std::invalid_argument("synth_gen: need at least one category");
  if (rows == 0) throw std::invalid_argument("synth_gen: need at least one row");

  Dataset data;
  data.schema.categorical = "category";
  data.schema.target = "y";
  for (std::size_t j = 1; j <= numeric; ++j) data.schema.numeric.push_back("x" + std::to_string(j));

  std::vector<std::string> labels;
  for (std::size_t c = 1; c <= categories; ++c) labels.push_back(synth_label(c, categories));
  data.vocab = build_vocab(labels);

  SplitMix64 rng(seed);
  BoxMuller gauss;
  std::vector<double> mu(categories);
  for (double& m : mu) m = rng.next_uniform(-1.0, 1.0);
  std::vector<double> slope(numeric);
  for (double& a : slope) a = rng.next_uniform(-1.0, 1.0);

  data.rows.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Example ex;
    ex.category = CategoryId{static_cast<std::uint32_t>(1 + rng.next_index(categories))};
    ex.numeric.resize(numeric);
    for (double& x : ex.numeric) x = rng.next_uniform(-1.0, 1.0);
    const double noise = gauss(rng);
    double y = mu[ex.category.index()];
    for (std::size_t j = 0; j < numeric; ++j) y += slope[j] * ex.numeric[j];
    ex.target = {y + sigma * noise};
    data.rows.push_back(std::move(ex));
  }
  return data;
}

}  // namespace augbin
