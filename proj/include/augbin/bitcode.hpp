#pragma once

// Category numbering and bit codes.
//
// Conventions used throughout the library:
//   * categories are numbered 1..N; the all-zeros code is never a category;
//   * the bit width is the smallest n with 2^n - 1 >= N;
//   * bit vectors are least-significant-bit first and bit positions are
//     1-indexed, so c = 13 (binary 1101) has positions {1, 3, 4} and vector
//     [1, 0, 1, 1].

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "augbin/errors.hpp"

namespace augbin {

/// 1-based category number.
struct CategoryId {
  std::uint32_t value = 0;

  constexpr CategoryId() = default;
  explicit constexpr CategoryId(std::uint32_t v) : value(v) {}

  /// Zero-based row index into per-category tables.
  constexpr std::size_t index() const { return value - 1; }

  friend constexpr auto operator<=>(CategoryId, CategoryId) = default;
};

/// Smallest n with 2^n - 1 >= category_count.
inline std::size_t bit_width(std::size_t category_count) {
  if (category_count == 0) {
    throw std::invalid_argument("bit_width: no categories to encode");
  }
  std::size_t n = 0;
  // Compare against 2^n - 1 without overflowing for large counts.
  while (n < 64 && ((std::uint64_t{1} << n) - 1) < category_count) ++n;
  return n == 0 ? 1 : n;
}

/// Bit representation of one category.
class BitCode {
 public:
  BitCode() = default;

  /// Builds a code from a raw LSB-first 0/1 vector.
  static BitCode from_vector(std::vector<std::uint8_t> bits) {
    BitCode code;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] > 1) throw std::invalid_argument("BitCode: entries must be 0 or 1");
      if (bits[i] == 1) code.positions_.push_back(i + 1);
    }
    code.vector_ = std::move(bits);
    return code;
  }

  std::size_t width() const { return vector_.size(); }

  /// Ascending 1-indexed positions of the one bits.
  const std::vector<std::size_t>& positions() const { return positions_; }

  /// LSB-first 0/1 vector of length width().
  const std::vector<std::uint8_t>& vector() const { return vector_; }

  /// Number of one bits.
  std::size_t ones() const { return positions_.size(); }

  bool operator==(const BitCode&) const = default;

 private:
  std::vector<std::size_t> positions_;
  std::vector<std::uint8_t> vector_;
};

/// Binary expansion of c padded to `width` bits.
inline BitCode encode(CategoryId c, std::size_t width) {
  if (c.value == 0) throw std::out_of_range("encode: category id 0 is unused");
  if (width < 32 && (std::uint64_t{c.value} >> width) != 0) {
    throw std::out_of_range("encode: category " + std::to_string(c.value) +
                            " does not fit in " + std::to_string(width) + " bits");
  }
  std::vector<std::uint8_t> bits(width, 0);
  for (std::size_t i = 0; i < width && i < 32; ++i) {
    bits[i] = static_cast<std::uint8_t>((c.value >> i) & 1U);
  }
  return BitCode::from_vector(std::move(bits));
}

inline CategoryId decode(const BitCode& code) {
  std::uint64_t value = 0;
  for (std::size_t pos : code.positions()) {
    if (pos > 32) throw std::out_of_range("decode: code wider than a category id");
    value |= std::uint64_t{1} << (pos - 1);
  }
  if (value == 0) throw std::out_of_range("decode: all-zero code is not a category");
  return CategoryId{static_cast<std::uint32_t>(value)};
}

/// Number of shared one-positions between two codes.
inline std::size_t overlap(const BitCode& a, const BitCode& b) {
  std::size_t count = 0;
  const std::size_t w = std::min(a.width(), b.width());
  for (std::size_t i = 0; i < w; ++i) count += a.vector()[i] & b.vector()[i];
  return count;
}

/// Label <-> id mapping with ids assigned in lexicographic label order.
class CategoryVocab {
 public:
  CategoryVocab() = default;

  std::size_t size() const { return labels_.size(); }
  std::size_t bit_width() const { return width_; }
  const std::vector<std::string>& labels() const { return labels_; }

  const std::string& label(CategoryId c) const {
    if (c.value == 0 || c.value > labels_.size()) {
      throw std::out_of_range("CategoryVocab: id " + std::to_string(c.value) +
                              " out of range");
    }
    return labels_[c.index()];
  }

  bool contains(const std::string& label) const { return ids_.contains(label); }

  /// Throws VocabMissError for labels outside the vocabulary.
  CategoryId id(const std::string& label) const {
    auto it = ids_.find(label);
    if (it == ids_.end()) throw VocabMissError("unknown category '" + label + "'");
    return it->second;
  }

  BitCode code(CategoryId c) const {
    label(c);
    return encode(c, width_);
  }

  /// Appends a label with the next free id. Used to extend a base vocabulary
  /// with composite categories; the sort order of earlier ids is kept.
  CategoryId append(const std::string& label) {
    if (auto it = ids_.find(label); it != ids_.end()) return it->second;
    labels_.push_back(label);
    CategoryId c{static_cast<std::uint32_t>(labels_.size())};
    ids_.emplace(label, c);
    width_ = augbin::bit_width(labels_.size());
    return c;
  }

  bool operator==(const CategoryVocab& other) const {
    return labels_ == other.labels_;
  }

  friend CategoryVocab build_vocab(const std::vector<std::string>& raw_labels);

 private:
  std::vector<std::string> labels_;
  std::map<std::string, CategoryId> ids_;
  std::size_t width_ = 0;
};

/// Deduplicates, sorts, and numbers labels 1..N.
inline CategoryVocab build_vocab(const std::vector<std::string>& raw_labels) {
  if (raw_labels.empty()) throw std::invalid_argument("build_vocab: no labels");
  std::vector<std::string> sorted = raw_labels;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  CategoryVocab vocab;
  for (const auto& label : sorted) vocab.append(label);
  return vocab;
}

}  // namespace augbin
