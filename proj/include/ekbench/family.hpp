#pragma once

#include <string>
#include <vector>

#include "ekbench/digit_string.hpp"

namespace ekbench {

// A finite set of digit strings above a common base, kept shortlex-sorted
// and duplicate-free.  Every member extends the base (the base itself may
// be a member).
class FiniteFamily {
 public:
  explicit FiniteFamily(DigitString base) : base_(std::move(base)) {}
  FiniteFamily(DigitString base, std::vector<DigitString> members);

  const DigitString& base() const { return base_; }
  const std::vector<DigitString>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const DigitString& t) const;

  // Longest member length (base length when empty).
  std::size_t depth() const;

  FiniteFamily without(const std::vector<DigitString>& removed) const;

 private:
  DigitString base_;
  std::vector<DigitString> members_;
};

// All extensions of base with length in [min_len, max_len] (absolute
// lengths, clamped below at |base|).
FiniteFamily full_product(const DigitString& base, std::size_t min_len, std::size_t max_len);

}  // namespace ekbench
