#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "ekbench/digit_string.hpp"

namespace ekbench {

// An open dense set given as the union of cylinders [f(sigma)] over all
// sigma, where f is a default rule (append fixed digits) overridden on a
// finite exception table.  Every f(sigma) must extend sigma; the default
// rule appends digits < 3 so it is valid in every column.
class DenseOpenSpec {
 public:
  // default rule: f(sigma) = sigma followed by append (e.g. {0}).
  explicit DenseOpenSpec(std::vector<int> append = {0},
                         std::map<DigitString, DigitString> exceptions = {});

  DigitString apply(const DigitString& sigma) const;
  const std::vector<int>& append_digits() const { return append_; }
  const std::map<DigitString, DigitString>& exceptions() const { return exceptions_; }

  // Text form "append=0,0|[..]->[..]|..." used in logs and reports.
  std::string str() const;
  static DenseOpenSpec parse(const std::string& text);

  bool operator==(const DenseOpenSpec&) const = default;

 private:
  std::vector<int> append_;
  std::map<DigitString, DigitString> exceptions_;
};

enum class OpenVerdict { CONTAINED, UNDECIDED_AT_DEPTH };

const char* open_verdict_name(OpenVerdict v);

// CONTAINED iff [s] is inside the union, i.e. some prefix sigma of s has
// f(sigma) a prefix of s.  The sufficient test is also necessary for the
// cylinder [s] itself; deeper strings can still enter the set, hence
// UNDECIDED_AT_DEPTH rather than a negative verdict.
OpenVerdict dense_open_member(const DenseOpenSpec& f, const DigitString& s);

// Shortest extension of s (breadth-first, digits ascending) whose
// cylinder is inside the set; extensions failing `admit` are pruned
// together with their subtrees.  Termination: f(s) itself qualifies, so
// the search never needs more than |f(s)| - |s| extra digits (plus the
// admit filter, which can exhaust the search -> nullopt).
std::optional<DigitString> extend_into(const DenseOpenSpec& f, const DigitString& s,
                                       const std::function<bool(const DigitString&)>& admit = {},
                                       std::size_t max_extra = 8);

}  // namespace ekbench
