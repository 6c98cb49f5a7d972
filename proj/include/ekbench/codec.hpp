#pragma once

#include "ekbench/digit_string.hpp"
#include "ekbench/rational.hpp"

namespace ekbench {

// Factorial-base codec: to_real(s) = Σ_{m<|s|} s(m) / (m+3)!.
Rat to_real(const DigitString& s);

// Exact tail bound: every infinite extension of s lands in
// [to_real(s), to_real(s) + cylinder_tail(|s|)], where
// cylinder_tail(L) = Σ_{m≥L} (m+2)/(m+3)! = 1/(L+2)!.
Rat cylinder_tail(std::size_t length);

// A digit string read as a point of the full product space by padding
// with zero digits.  Documentation-level embedding: the padding does not
// change the encoded real, so the canonical form strips trailing zeros.
class FiniteSupportPoint {
 public:
  explicit FiniteSupportPoint(DigitString s);
  const DigitString& canonical() const { return s_; }
  Rat value() const { return to_real(s_); }
  // Digit at any column (0 beyond the stored support).
  int digit(std::size_t column) const;

 private:
  DigitString s_;
};

}  // namespace ekbench
