#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekbench/family.hpp"
#include "ekbench/fatness.hpp"

namespace ekbench {

// Fatness certificate attached to a non-maximal node: the successor set
// replays as width-fat to rich_height for every width <= width, and at
// the trivial height |node| (where only the empty slalom exists) for
// larger widths.  rich_height = |node| is the honest minimum.
struct NodeAnnotation {
  int width = 0;
  std::size_t rich_height = 0;

  bool operator==(const NodeAnnotation&) const = default;
};

// A finite prefix of a forcing condition: a rooted tree of digit strings
// ordered by extension.  Children of a node are the minimal proper
// extensions present among the nodes.
class TreeCondition {
 public:
  // nodes must contain root and every node must extend root.
  TreeCondition(DigitString root, std::vector<DigitString> nodes);

  const DigitString& root() const { return root_; }
  const std::vector<DigitString>& nodes() const { return nodes_; }  // sorted, prefixes first
  std::size_t size() const { return nodes_.size(); }
  std::size_t depth() const;  // max node length
  bool contains(const DigitString& t) const;

  // Minimal proper extensions of t among the nodes (the tree children).
  std::vector<DigitString> succ(const DigitString& t) const;
  bool is_maximal(const DigitString& t) const { return succ(t).empty(); }

  // All nodes extending t, t itself included.
  std::vector<DigitString> cone(const DigitString& t) const;

  void annotate(const DigitString& t, NodeAnnotation a);  // NODE_ABSENT if t missing
  std::optional<NodeAnnotation> annotation(const DigitString& t) const;
  const std::map<DigitString, NodeAnnotation>& annotations() const { return ann_; }

  // The height at which the successor set of t is expected to replay as
  // k-fat: the annotated rich height when k is within the annotated
  // width, else the trivial height |t| (only the empty slalom).
  std::size_t certified_height(const DigitString& t, int k) const;

  // Sub-tree of every node extending t, rooted at t, annotations
  // inherited.  Throws NODE_ABSENT when t is not a node.
  TreeCondition restrict_at(const DigitString& t) const;

  // Nodes in breadth-first order: by length, then lexicographically.
  std::vector<DigitString> breadth_first() const;

  std::string to_json_text() const;
  static TreeCondition from_json_text(const std::string& text);

  bool operator==(const TreeCondition&) const = default;

 private:
  DigitString root_;
  std::vector<DigitString> nodes_;
  std::map<DigitString, NodeAnnotation> ann_;
};

struct NodeFailure {
  DigitString node;
  int k = 0;
  std::string reason;  // killer slalom or structural defect
};

struct ConditionReport {
  bool pass = false;
  std::vector<NodeFailure> failures;
};

// Width k -> number of non-maximal nodes allowed to miss k-fatness at
// their certified heights.
using KSchedule = std::map<int, std::size_t>;

// Default schedule used by the builder's own validation: no exceptions
// at widths 1 and 2.
KSchedule default_schedule();

// Structural validation: unique root, every non-maximal node's successor
// set 1-fat at its certified height, and per-width exception counts
// within the schedule.  Report lists each failing node with its killer.
ConditionReport validate_condition(const TreeCondition& p, const KSchedule& schedule);

// Like validate_condition but tests the full cone above each node
// instead of the successor set (cones only add escapers).
ConditionReport in_p0(const TreeCondition& p, const KSchedule& schedule);

struct BarrierVerdict {
  bool is_barrier = false;  // every root-to-leaf path meets the set
  bool is_open = false;     // upward closed within the nodes
};

// b must consist of nodes of p (BAD_INPUT otherwise).
BarrierVerdict barrier_check(const std::vector<DigitString>& b, const TreeCondition& p);

// Restriction at the first breadth-first node whose annotated successor
// set replays k-fat at its rich height.  NO_FAT_NODE when no node
// carries such a certificate.
TreeCondition strengthen_root(const TreeCondition& p, int k);

// Restriction at the first breadth-first node of length >= k;
// DEPTH_EXHAUSTED when the tree is too shallow.
TreeCondition extend_root_length(const TreeCondition& p, std::size_t k);

// Level-by-level construction: the root's level-(n+1) extensions of each
// level-n node t are extracted from the full extension tree truncated at
// depth, certified (|t|+1)-fat to the tallest height whose slalom count
// fits in the remaining depth.  Deterministic.  DEPTH_EXHAUSTED when
// depth < 1.
TreeCondition build_condition(std::size_t depth);

}  // namespace ekbench
