#include <vector>

#include "ekbench/error.hpp"
#include "ekbench/tree_condition.hpp"

namespace ekbench {

TreeCondition build_condition(std::size_t depth) {
  if (depth < 1) throw Error(errc::depth_exhausted, "condition depth must be at least 1");
  DigitString root;
  std::vector<DigitString> nodes{root};
  std::vector<std::pair<DigitString, NodeAnnotation>> annotations;
  std::vector<DigitString> level{root};
  while (!level.empty()) {
    std::vector<DigitString> next;
    for (const DigitString& t : level) {
      if (t.size() >= depth) continue;  // leaf: no room for a longer pick
      std::size_t room = depth - t.size();
      int w = static_cast<int>(t.size()) + 1;
      std::size_t target = t.size();
      while (slalom_count(t.size(), w, target + 1, room) <= room) ++target;
      ExtractResult ext = extract_incomparable_full(t, depth, w + 1, target);
      annotations.push_back({t, {w, target}});
      for (const DigitString& pick : ext.picks.members()) {
        nodes.push_back(pick);
        next.push_back(pick);
      }
    }
    level = std::move(next);
  }
  TreeCondition out(root, std::move(nodes));
  for (auto& [node, a] : annotations) out.annotate(node, a);
  return out;
}

}  // namespace ekbench
