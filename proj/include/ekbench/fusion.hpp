#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ekbench/dense_open.hpp"
#include "ekbench/tree_condition.hpp"

namespace ekbench {

// PLAIN keeps the successor sets of the n-th adjoined node (n+1)-fat and
// threads the point prefix r through the dense opens.  PARALLEL_AVOIDING
// additionally keeps every picked node parallel to r and one width of
// fatness in reserve (n+2), paying for the parallel pruning of candidate
// successors.
enum class FusionMode { PLAIN, PARALLEL_AVOIDING };

const char* fusion_mode_name(FusionMode m);
FusionMode parse_fusion_mode(const std::string& text);

// Fatness width required of succ(t_m): m+1 in PLAIN, m+2 in
// PARALLEL_AVOIDING (m = the round that adjoined t_m).
int mode_width(FusionMode mode, int m);

// Diagonal bookkeeping: round (m+k)(m+k+1)/2 + m + 1 marks the k-th
// visit to t_m, so pairs are ordered by m+k, then m.  Round 0 is the
// bootstrap and visits nothing.
int round_of_visit(int m, int k);
std::pair<int, int> visit_of_round(int round);  // round >= 1

// What the engine hands to the step oracle: the current condition
// restricted at the picked successor, the current point prefix, and the
// round number (0 for the bootstrap).
struct StepInput {
  TreeCondition restricted;
  DigitString r;
  int round = 0;
};

// What the oracle must return: a condition q rooted at some extension of
// the picked successor whose root successor set carries a fatness
// certificate at the round's mode width, and r_prime extending the input
// r such that q's nodes are parallel to r_prime in avoiding mode.
struct StepOutput {
  TreeCondition q{DigitString{}, std::vector<DigitString>{DigitString{}}};
  DigitString r_prime;
};

using StepOracle = std::function<StepOutput(const StepInput&)>;

// Everything one round contributes to the log.  q is stored in full so a
// replay can rebuild every intermediate condition from the initial one.
struct RoundRecord {
  int n = 0;                    // round index, 0 = bootstrap
  int m = -1;                   // visited node index (-1 at bootstrap)
  int k = -1;                   // visit counter = canonical slalom index
  std::string slalom;           // canonical text of the handled slalom
  DigitString s;                // picked successor s_n
  DigitString t;                // adjoined node t_n = root of q
  DigitString r;                // point prefix after the dense-open step
  bool length_rule_met = true;  // false when |s_n| >= |r_{n-1}| was dropped
  TreeCondition q{DigitString{}, std::vector<DigitString>{DigitString{}}};
};

struct FusionResult {
  FusionMode mode = FusionMode::PLAIN;
  int steps = 0;
  TreeCondition initial{DigitString{}, std::vector<DigitString>{DigitString{}}};
  std::vector<DenseOpenSpec> opens;
  std::vector<RoundRecord> rounds;  // one per round, rounds.size() == steps
  TreeCondition p_prime{DigitString{}, std::vector<DigitString>{DigitString{}}};
  DigitString r;                    // final point prefix

  std::string to_json_text() const;
  static FusionResult from_json_text(const std::string& text);

  bool operator==(const FusionResult&) const = default;
};

struct InvariantCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct InvariantReport {
  bool pass = false;
  std::vector<InvariantCheck> checks;
};

// Deterministic default oracle.  Instead of merely restricting, it grafts
// below the picked successor a fresh antichain of escapers sized for the
// node's remaining schedule: one designated escaper per canonical slalom
// the node will be visited with, plus a low layer of mode-width slaloms
// when that layer is affordable.  All escapers share one length, which
// in avoiding mode stays within the returned point prefix and dodges its
// anti-parallel digits, so parallelism of the supply survives any later
// growth of the prefix.  The root annotation is honest: the largest
// height at which the picks replay fat at the mode width within a
// bounded scan.
StepOracle default_graft_oracle(FusionMode mode, int steps);

// Runs `steps` rounds starting from p (round 0 bootstraps t_0 above
// root(p)).  Round n picks s_n escaping the scheduled slalom, calls the
// oracle, extends its r into opens[n mod |opens|] breadth-first, and
// replaces the cone of s_n with the returned q.  Throws SCHEDULE_EMPTY
// when opens is empty, ORACLE_STALL when no fresh successor escapes the
// scheduled slalom or the oracle cannot certify one, DEPTH_EXHAUSTED
// when a digit-string budget runs out, and BAD_INPUT for malformed
// arguments or oracle output.
FusionResult fuse(const TreeCondition& p, const std::vector<DenseOpenSpec>& opens,
                  FusionMode mode, int steps, const StepOracle& oracle = {});

// Independent replay: rebuilds every p_n from initial and the stored q's
// and re-derives the full invariant list of the mode (membership,
// successor preservation, fatness at mode width to certified heights,
// descent and cone-locality, q_m = restrict(p_m, t_m), scheduled slalom
// escapes, s-injectivity, dense-open descent of r, and in avoiding mode
// parallelism and the length rule).  Shares no state with the engine.
InvariantReport replay_fusion(const FusionResult& f);

}  // namespace ekbench
