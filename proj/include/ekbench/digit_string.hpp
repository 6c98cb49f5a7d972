#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ekbench {

// Column i of the digit space carries the alphabet {0, ..., i+2}.
inline int alphabet_size(std::size_t column) { return static_cast<int>(column) + 3; }

// Hard cap on string length; keeps factorials and column alphabets bounded.
inline constexpr std::size_t kMaxDigits = 64;

// A finite string s with s(i) < i+3 for every i < |s|.  Immutable value type.
// Canonical text form: "[1,3,0]", "[]" for the empty string.
class DigitString {
 public:
  DigitString() = default;
  explicit DigitString(std::vector<int> digits);

  static DigitString parse(const std::string& text);

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  int at(std::size_t i) const { return digits_[i]; }
  const std::vector<int>& digits() const { return digits_; }

  // this ⊇ s (s is a prefix of this; every string extends itself).
  bool extends(const DigitString& s) const;

  DigitString extended(int digit) const;         // this ⌢ digit
  DigitString prefix(std::size_t length) const;  // this ↾ length

  std::string str() const;

  bool operator==(const DigitString&) const = default;
  // Default ordering is lexicographic with prefixes first (the order a
  // depth-first walk of the digit tree visits nodes in).
  std::strong_ordering operator<=>(const DigitString& other) const;

 private:
  std::vector<int> digits_;
};

// Length-first order: shorter strings precede longer ones, ties broken
// lexicographically.  This is the documented member order of families.
bool shortlex_less(const DigitString& a, const DigitString& b);

// s ‖ t: s(i) + t(i) != i+2 for all i < min(|s|, |t|).
bool parallel(const DigitString& s, const DigitString& t);

// s(i) != i+2 for all i < |s| (the defining property of prefixes of the
// product set avoiding the top digit of every column).
bool cek_prefix(const DigitString& s);

struct ParallelWitness {
  bool is_parallel = false;
  DigitString witness;  // w(i) = (s(i)+t(i)) mod (i+3)
};

// For equal-length s, t: s ‖ t iff the columnwise mod-sum witness avoids
// i+2 in every column.  Throws Error(length_mismatch) otherwise.
ParallelWitness parallel_iff_cek(const DigitString& s, const DigitString& t);

}  // namespace ekbench
