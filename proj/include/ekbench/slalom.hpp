#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekbench/digit_string.hpp"

namespace ekbench {

// A finite slalom above a base string: for each column i ≥ |base| a set
// S(i) ⊆ {0..i+2} of blocked digits.  Canonical form keeps columns as
// sorted digit vectors, strips digits ≥ i+3, and trims trailing empty
// columns; the height is the first column index from which everything is
// empty (= |base| for the slalom with no blocked digits).
class Slalom {
 public:
  explicit Slalom(DigitString base) : base_(std::move(base)) {}
  // columns maps absolute column index -> blocked digits.  Indices below
  // |base| are rejected; out-of-alphabet digits are stripped.
  Slalom(DigitString base, const std::map<int, std::vector<int>>& columns);

  const DigitString& base() const { return base_; }
  std::size_t base_length() const { return base_.size(); }

  // Height: base length + number of stored columns (trailing empties trimmed).
  std::size_t height() const { return base_.size() + cols_.size(); }

  // Largest blocked-set size over all columns (0 for the empty slalom).
  int width() const;

  // Blocked digits at absolute column i (empty outside [|base|, height)).
  const std::vector<int>& at(std::size_t column) const;
  bool blocks(std::size_t column, int digit) const;

  // Copy with one extra blocked digit (no-op if already blocked or the
  // digit is outside the column alphabet).
  Slalom augmented(std::size_t column, int digit) const;

  bool empty() const { return cols_.empty(); }

  // Canonical text: "<base>;i:{d,...};...;ht=H", nonempty columns only.
  std::string str() const;

  bool operator==(const Slalom&) const = default;

 private:
  DigitString base_;
  std::vector<std::vector<int>> cols_;  // cols_[j] = column |base|+j, sorted
};

// t escapes S: t ⊇ base, |t| ≥ ht(S), and t(i) ∉ S(i) for every column
// i in [|base|, |t|).
bool escapes(const DigitString& t, const Slalom& s);

// Canonical order on slaloms over a common base: primary key height,
// secondary key the tuple of column bitmasks compared lexicographically
// from column |base| (mask = Σ 2^digit over blocked digits).
bool canonical_less(const Slalom& a, const Slalom& b);

// All canonical slaloms of width ≤ k above base with height ≤ maxHeight,
// in canonical order, no duplicates.
std::vector<Slalom> enumerate_slaloms(const DigitString& base, int k, std::size_t max_height);

// How many slaloms enumerate_slaloms would yield (1 for the empty slalom
// plus the exact-height layers), saturated at cap+1 so callers can budget
// without overflow.
std::uint64_t slalom_count(std::size_t base_length, int k, std::size_t max_height,
                           std::uint64_t cap);

// Streaming version of the same order with no height bound: yields the
// empty slalom, then exact-height layers h = |base|+1, |base|+2, ...
// Each layer enumerates column bitmask tuples in lexicographic order with
// the last column nonempty.  Used where the n-th canonical slalom is
// needed without materializing a full layer.
class SlalomStream {
 public:
  SlalomStream(DigitString base, int k);
  Slalom next();  // never exhausts for k ≥ 1; throws for k = 0 past the first

 private:
  bool advance_odometer();
  void start_layer(std::size_t h);

  DigitString base_;
  int k_;
  std::size_t height_ = 0;       // current exact-height layer (0 = empty slalom pending)
  bool empty_emitted_ = false;
  std::vector<std::uint64_t> masks_;  // odometer, masks_[j] = column |base|+j
};

std::uint64_t column_mask(const Slalom& s, std::size_t column);

}  // namespace ekbench
