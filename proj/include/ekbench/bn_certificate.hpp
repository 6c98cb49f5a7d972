#pragma once

#include <map>
#include <string>
#include <vector>

#include "ekbench/fusion.hpp"

namespace ekbench {

// One level of the membership certificate: an antichain of nodes, the
// fatness width pledged for each member's children, the height that
// pledge replays at, and the r-prefix length witnessing that the level's
// open set contains the cylinder.
struct BnLevel {
  std::vector<DigitString> members;
  std::map<DigitString, int> phi;
  std::map<DigitString, std::size_t> height;
  std::size_t witness_k = 0;

  bool operator==(const BnLevel&) const = default;
};

// A finite membership certificate: levels B_0..B_D of the adjoined-node
// tree of a fusion run, with the point prefix r and the opens the run
// threaded r through (level n is matched with opens[n mod |opens|]).
struct BnCertificate {
  DigitString r;
  std::vector<DenseOpenSpec> opens;
  std::vector<BnLevel> levels;

  std::string to_json_text() const;
  static BnCertificate from_json_text(const std::string& text);

  bool operator==(const BnCertificate&) const = default;
};

// Builds the certificate from a fusion log: level g holds the
// generation-g nodes of the tree t_n -> t_{visit parent}, members
// without kept children are pruned from every level but the last,
// phi(t_m) = m+1, heights are scanned honestly against the kept
// children, and witness_k for level n is |r_n|.  Requires depth+1
// levels' worth of rounds (BAD_INPUT otherwise).
BnCertificate extract_bn_certificate(const FusionResult& f, std::size_t depth);

// Replays the certificate clause by clause: (1) |B_0| = 1, (2) levels
// are antichains, (3) every member of B_{n+1} strictly extends a member
// of B_n, (4) phi_n > n on B_n, (5) recorded as vacuously true (an
// eventual lower bound has no finite content), (6) each non-bottom
// member's children replay phi-fat at the declared height, (7) each
// level's witness prefix of r lands its cylinder inside the level's
// open.
InvariantReport validate_bn_certificate(const BnCertificate& c);

}  // namespace ekbench
