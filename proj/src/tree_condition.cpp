#include "ekbench/tree_condition.hpp"

#include <algorithm>

#include <json.hpp>

#include "ekbench/error.hpp"

namespace ekbench {

namespace {

using njson = nlohmann::ordered_json;

FatnessVerdict verdict_for(const TreeCondition& p, const DigitString& t, int k,
                           std::size_t height, bool whole_cone) {
  std::vector<DigitString> members = whole_cone ? p.cone(t) : p.succ(t);
  return is_fat(FiniteFamily(t, std::move(members)), k, height);
}

ConditionReport check_condition(const TreeCondition& p, const KSchedule& schedule,
                                bool whole_cone) {
  ConditionReport r;
  for (const DigitString& t : p.nodes())
    if (!t.extends(p.root()))
      r.failures.push_back({t, 0, "node does not extend the root"});
  std::vector<DigitString> inner;
  for (const DigitString& t : p.nodes())
    if (!p.is_maximal(t)) inner.push_back(t);
  for (const DigitString& t : inner) {
    FatnessVerdict v = verdict_for(p, t, 1, p.certified_height(t, 1), whole_cone);
    if (!v.is_fat)
      r.failures.push_back({t, 1, "killed by " + (v.killer ? v.killer->str() : "?")});
  }
  for (const auto& [k, allowed] : schedule) {
    if (k <= 1) continue;  // width 1 is unconditional above
    std::vector<NodeFailure> misses;
    for (const DigitString& t : inner) {
      FatnessVerdict v = verdict_for(p, t, k, p.certified_height(t, k), whole_cone);
      if (!v.is_fat)
        misses.push_back({t, k, "killed by " + (v.killer ? v.killer->str() : "?")});
    }
    if (misses.size() > allowed)
      r.failures.insert(r.failures.end(), misses.begin(), misses.end());
  }
  r.pass = r.failures.empty();
  return r;
}

}  // namespace

TreeCondition::TreeCondition(DigitString root, std::vector<DigitString> nodes)
    : root_(std::move(root)), nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (nodes_.empty() || nodes_.front() != root_)
    throw Error(errc::bad_input, "condition nodes must contain the root as unique minimum");
  for (const DigitString& t : nodes_)
    if (!t.extends(root_))
      throw Error(errc::bad_input, "node " + t.str() + " does not extend root " + root_.str());
}

std::size_t TreeCondition::depth() const {
  std::size_t d = root_.size();
  for (const DigitString& t : nodes_) d = std::max(d, t.size());
  return d;
}

bool TreeCondition::contains(const DigitString& t) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), t);
}

std::vector<DigitString> TreeCondition::succ(const DigitString& t) const {
  // The sorted order is a depth-first walk, so the cone above t is the
  // contiguous run after t and each subtree of a minimal extension is a
  // contiguous sub-run; skipping extensions of the last minimal node
  // found is exactly minimality.
  std::vector<DigitString> out;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  if (it == nodes_.end() || *it != t) return out;
  for (++it; it != nodes_.end() && it->extends(t); ++it) {
    if (!out.empty() && it->extends(out.back())) continue;
    out.push_back(*it);
  }
  return out;
}

std::vector<DigitString> TreeCondition::cone(const DigitString& t) const {
  std::vector<DigitString> out;
  for (auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
       it != nodes_.end() && it->extends(t); ++it)
    out.push_back(*it);
  return out;
}

void TreeCondition::annotate(const DigitString& t, NodeAnnotation a) {
  if (!contains(t)) throw Error(errc::node_absent, t.str() + " is not a node");
  ann_[t] = a;
}

std::optional<NodeAnnotation> TreeCondition::annotation(const DigitString& t) const {
  auto it = ann_.find(t);
  if (it == ann_.end()) return std::nullopt;
  return it->second;
}

std::size_t TreeCondition::certified_height(const DigitString& t, int k) const {
  auto it = ann_.find(t);
  if (it != ann_.end() && k <= it->second.width) return it->second.rich_height;
  return t.size();
}

TreeCondition TreeCondition::restrict_at(const DigitString& t) const {
  if (!contains(t)) throw Error(errc::node_absent, t.str() + " is not a node");
  TreeCondition out(t, cone(t));
  for (const auto& [node, a] : ann_)
    if (node.extends(t)) out.ann_.emplace(node, a);
  return out;
}

std::vector<DigitString> TreeCondition::breadth_first() const {
  std::vector<DigitString> out = nodes_;
  std::stable_sort(out.begin(), out.end(), shortlex_less);
  return out;
}

std::string TreeCondition::to_json_text() const {
  njson j;
  j["root"] = root_.str();
  njson nodes = njson::array();
  for (const DigitString& t : nodes_) nodes.push_back(t.str());
  j["nodes"] = nodes;
  njson ann = njson::object();
  for (const auto& [node, a] : ann_)
    ann[node.str()] = {{"width", a.width}, {"richHeight", a.rich_height}};
  j["annotations"] = ann;
  return j.dump(2);
}

TreeCondition TreeCondition::from_json_text(const std::string& text) {
  njson j = njson::parse(text);
  std::vector<DigitString> nodes;
  for (const auto& e : j.at("nodes")) nodes.push_back(DigitString::parse(e.get<std::string>()));
  TreeCondition out(DigitString::parse(j.at("root").get<std::string>()), std::move(nodes));
  for (const auto& [key, val] : j.at("annotations").items())
    out.annotate(DigitString::parse(key),
                 {val.at("width").get<int>(), val.at("richHeight").get<std::size_t>()});
  return out;
}

KSchedule default_schedule() { return {{1, 0}, {2, 0}}; }

ConditionReport validate_condition(const TreeCondition& p, const KSchedule& schedule) {
  return check_condition(p, schedule, false);
}

ConditionReport in_p0(const TreeCondition& p, const KSchedule& schedule) {
  return check_condition(p, schedule, true);
}

BarrierVerdict barrier_check(const std::vector<DigitString>& b, const TreeCondition& p) {
  for (const DigitString& t : b)
    if (!p.contains(t))
      throw Error(errc::bad_input, "barrier member " + t.str() + " is not a node");
  BarrierVerdict v;
  v.is_barrier = true;
  for (const DigitString& leaf : p.nodes()) {
    if (!p.is_maximal(leaf)) continue;
    bool met = false;
    for (const DigitString& t : b)
      if (leaf.extends(t)) {
        met = true;
        break;
      }
    if (!met) {
      v.is_barrier = false;
      break;
    }
  }
  v.is_open = true;
  for (const DigitString& t : b) {
    for (const DigitString& u : p.cone(t))
      if (std::find(b.begin(), b.end(), u) == b.end()) {
        v.is_open = false;
        break;
      }
    if (!v.is_open) break;
  }
  return v;
}

TreeCondition strengthen_root(const TreeCondition& p, int k) {
  for (const DigitString& t : p.breadth_first()) {
    std::optional<NodeAnnotation> a = p.annotation(t);
    if (!a || a->width < k) continue;
    if (is_fat(FiniteFamily(t, p.succ(t)), k, a->rich_height).is_fat) return p.restrict_at(t);
  }
  throw Error(errc::no_fat_node,
              "no node certifies a " + std::to_string(k) + "-fat successor set");
}

TreeCondition extend_root_length(const TreeCondition& p, std::size_t k) {
  for (const DigitString& t : p.breadth_first())
    if (t.size() >= k) return p.restrict_at(t);
  throw Error(errc::depth_exhausted, "no node of length " + std::to_string(k));
}

}  // namespace ekbench
