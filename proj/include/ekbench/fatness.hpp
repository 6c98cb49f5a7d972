#pragma once

#include <cstdint>
#include <optional>

#include "ekbench/family.hpp"
#include "ekbench/slalom.hpp"

namespace ekbench {

struct SearchStats {
  std::uint64_t examined = 0;  // adversary states visited (brute: slaloms checked)
  std::uint64_t pruned = 0;    // subtrees cut by the kill-capacity bound
};

struct FatnessVerdict {
  bool is_fat = false;
  std::optional<Slalom> killer;  // canonical-first unescaped slalom
  int k = 0;
  std::size_t height = 0;
  SearchStats searched;
};

// Exact decision: every slalom of width ≤ k above F's base with height
// ≤ height has an escaper in F.  Branch-and-bound adversary search over
// column blocked-sets; pruning is sound (a cut subtree contains only
// escaped slaloms), so the reported killer is the canonical-first one.
// The empty family is not fat at any height (the empty slalom kills it).
FatnessVerdict is_fat(const FiniteFamily& f, int k, std::size_t height);

// Independent oracle: literally enumerates every slalom in canonical
// order and scans for escapers.  Shares no search code with is_fat.
FatnessVerdict brute_force_is_fat(const FiniteFamily& f, int k, std::size_t height);

// First member in shortlex order that escapes s and has length ≥
// min_length (equivalently, escapes s padded with empty columns up to
// min_length).
std::optional<DigitString> find_escaper(const FiniteFamily& f, const Slalom& s,
                                        std::size_t min_length);

// Shortlex-first escaper of s against the full tree of extensions:
// minimal feasible length in [min_length, max_length], then the least
// unblocked digit per column.  nullopt when some column is fully
// blocked or every feasible length exceeds max_length.
std::optional<DigitString> least_escaper(const Slalom& s, std::size_t min_length,
                                         std::size_t max_length);

struct RemovalResult {
  FiniteFamily family;
  FatnessVerdict verdict;
};

// F \ V with a fresh verdict at (k, height).  For k ≥ 1 and max length
// over V strictly below height, fatness of F implies fatness of the
// difference (pad any slalom with a marker digit at column height-1 to
// force escapers longer than every removed string); the verdict reports
// whatever actually holds.
RemovalResult remove_finite(const FiniteFamily& f, const std::vector<DigitString>& removed,
                            int k, std::size_t height);

// {t ∈ F : t ‖ sigma} with a verdict at (k-1, height).  Requires
// F.base ‖ sigma (BASE_NOT_PARALLEL otherwise) and k ≥ 1.  When F is
// k-fat to height, the pruned family is (k-1)-fat to height: a width-
// (k-1) killer of the pruned family extends to a width-k killer of F by
// blocking the anti-parallel digit i+2-sigma(i) in each column below
// |sigma|.
RemovalResult prune_parallel(const FiniteFamily& f, const DigitString& sigma, int k,
                             std::size_t height);

// Builds the width-k killer described above from a width-(k-1) slalom.
Slalom parallel_augmented(const Slalom& s, const DigitString& sigma);

struct ExtractResult {
  FiniteFamily picks;
  FatnessVerdict certificate;   // is_fat(picks, k-1, target_height) replay
  std::size_t slalom_count = 0;
};

// Picks one escaper per width-(k-1) slalom above the base with height ≤
// target_height (canonical order).  The n-th slalom is augmented with the
// last digit of every earlier pick before searching, and pick lengths are
// strictly increasing starting above |base|; together these force the
// output to be a pairwise-incomparable subfamily, and escaping the
// augmented slalom implies escaping the original, so the output is
// (k-1)-fat to target_height.  Throws Error(insufficient_fatness) naming
// the first augmented slalom with no long-enough escaper.
ExtractResult extract_incomparable(const FiniteFamily& f, int k, std::size_t target_height);

// Same procedure against the implicit family of all extensions of base
// with length ≤ depth_cap.  The shortlex-first escaper there is computed
// greedily (least unblocked digit per column, minimal feasible length),
// which agrees with find_escaper on the materialized family.
ExtractResult extract_incomparable_full(const DigitString& base, std::size_t depth_cap, int k,
                                        std::size_t target_height);

}  // namespace ekbench
