#include "ekbench/bn_certificate.hpp"

#include <algorithm>

#include <json.hpp>

#include "ekbench/error.hpp"
#include "ekbench/fatness.hpp"

namespace ekbench {

namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kScanBudget = 200000;

std::size_t honest_height(const DigitString& s, int width,
                          const std::vector<DigitString>& children) {
  FiniteFamily fam(s, children);
  std::size_t h = s.size();
  while (true) {
    if (slalom_count(s.size(), width, h + 1, kScanBudget) > kScanBudget) break;
    if (!is_fat(fam, width, h + 1).is_fat) break;
    ++h;
  }
  return h;
}

}  // namespace

BnCertificate extract_bn_certificate(const FusionResult& f, std::size_t depth) {
  const std::size_t steps = f.rounds.size();
  if (steps == 0 || f.opens.empty())
    throw Error(errc::bad_input, "certificate extraction needs a nonempty fusion log");
  if (depth >= steps)
    throw Error(errc::bad_input, "not enough rounds for " + std::to_string(depth + 1) +
                                     " certificate levels");

  // Generation of each adjoined node in the visit-parent tree.
  std::vector<std::size_t> gen(steps, 0);
  for (std::size_t n = 1; n < steps; ++n) gen[n] = gen[f.rounds[n].m] + 1;

  // kept[g] = node indices surviving the childless pruning (bottom level
  // keeps everything of its generation).
  std::vector<std::vector<std::size_t>> kept(depth + 1);
  for (std::size_t n = 0; n < steps; ++n)
    if (gen[n] == depth) kept[depth].push_back(n);
  if (kept[depth].empty())
    throw Error(errc::bad_input,
                "the run has no generation-" + std::to_string(depth) + " nodes");
  for (std::size_t g = depth; g-- > 0;) {
    for (std::size_t n = 0; n < steps; ++n) {
      if (gen[n] != g) continue;
      bool has_child = false;
      for (std::size_t c : kept[g + 1])
        if (f.rounds[c].m == static_cast<int>(n)) has_child = true;
      if (has_child) kept[g].push_back(n);
    }
  }

  BnCertificate out;
  out.r = f.r;
  out.opens = f.opens;
  for (std::size_t g = 0; g <= depth; ++g) {
    BnLevel level;
    for (std::size_t n : kept[g]) {
      const DigitString& t = f.rounds[n].t;
      if (std::find(level.members.begin(), level.members.end(), t) != level.members.end())
        continue;
      level.members.push_back(t);
      level.phi[t] = static_cast<int>(n) + 1;
      if (g < depth) {
        std::vector<DigitString> children;
        for (std::size_t c : kept[g + 1])
          if (f.rounds[c].m == static_cast<int>(n)) children.push_back(f.rounds[c].t);
        level.height[t] = honest_height(t, level.phi[t], children);
      } else {
        level.height[t] = t.size();
      }
    }
    level.witness_k = f.rounds[g].r.size();
    out.levels.push_back(std::move(level));
  }
  return out;
}

InvariantReport validate_bn_certificate(const BnCertificate& c) {
  InvariantReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    for (InvariantCheck& existing : rep.checks)
      if (existing.name == name) {
        if (!pass && existing.pass) {
          existing.pass = false;
          existing.detail = detail;
        }
        return;
      }
    rep.checks.push_back({name, pass, pass ? "" : detail});
  };

  add("clause1_base_singleton", !c.levels.empty() && c.levels[0].members.size() == 1,
      "B_0 must hold exactly one node");
  if (c.levels.empty() || c.opens.empty()) {
    add("clause7_open_witness", !c.opens.empty(), "certificate carries no opens");
    rep.pass = false;
    return rep;
  }

  for (std::size_t n = 0; n < c.levels.size(); ++n) {
    const BnLevel& level = c.levels[n];
    const std::string at = " at level " + std::to_string(n);
    for (std::size_t i = 0; i < level.members.size(); ++i)
      for (std::size_t j = 0; j < level.members.size(); ++j)
        if (i != j)
          add("clause2_antichain", !level.members[i].extends(level.members[j]),
              level.members[i].str() + " extends " + level.members[j].str() + at);
    if (n > 0)
      for (const DigitString& t : level.members) {
        bool linked = false;
        for (const DigitString& s : c.levels[n - 1].members)
          if (t.extends(s) && t != s) linked = true;
        add("clause3_linked", linked, t.str() + " extends no previous-level member" + at);
      }
    for (const DigitString& s : level.members) {
      auto phi = level.phi.find(s);
      add("clause4_phi_exceeds_level",
          phi != level.phi.end() && phi->second > static_cast<int>(n),
          "phi missing or too small for " + s.str() + at);
      if (phi == level.phi.end()) continue;
      if (n + 1 < c.levels.size()) {
        std::vector<DigitString> children;
        for (const DigitString& t : c.levels[n + 1].members)
          if (t.extends(s)) children.push_back(t);
        auto h = level.height.find(s);
        bool ok = h != level.height.end() &&
                  is_fat(FiniteFamily(s, children), phi->second, h->second).is_fat;
        add("clause6_children_fat", ok,
            "children of " + s.str() + " fail the fatness pledge" + at);
      }
    }
    bool witness = level.witness_k <= c.r.size() &&
                   dense_open_member(c.opens[n % c.opens.size()], c.r.prefix(level.witness_k)) ==
                       OpenVerdict::CONTAINED;
    add("clause7_open_witness", witness,
        "no recorded r-prefix lands inside the level's open" + at);
  }
  add("clause5_vacuous", true,
      "every level is finite; the eventual lower bound on phi has no finite content");

  rep.pass = true;
  for (const InvariantCheck& check : rep.checks) rep.pass = rep.pass && check.pass;
  return rep;
}

std::string BnCertificate::to_json_text() const {
  ordered_json j;
  j["r"] = r.str();
  ordered_json os = ordered_json::array();
  for (const DenseOpenSpec& f : opens) os.push_back(f.str());
  j["opens"] = std::move(os);
  ordered_json ls = ordered_json::array();
  for (const BnLevel& level : levels) {
    ordered_json lj;
    ordered_json ms = ordered_json::array();
    ordered_json phi = ordered_json::object();
    ordered_json height = ordered_json::object();
    for (const DigitString& t : level.members) {
      ms.push_back(t.str());
      if (auto it = level.phi.find(t); it != level.phi.end()) phi[t.str()] = it->second;
      if (auto it = level.height.find(t); it != level.height.end()) height[t.str()] = it->second;
    }
    lj["members"] = std::move(ms);
    lj["phi"] = std::move(phi);
    lj["height"] = std::move(height);
    lj["witnessK"] = level.witness_k;
    ls.push_back(std::move(lj));
  }
  j["levels"] = std::move(ls);
  return j.dump(2);
}

BnCertificate BnCertificate::from_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  BnCertificate out;
  out.r = DigitString::parse(j.at("r").get<std::string>());
  for (const auto& o : j.at("opens")) out.opens.push_back(DenseOpenSpec::parse(o.get<std::string>()));
  for (const auto& lj : j.at("levels")) {
    BnLevel level;
    for (const auto& m : lj.at("members")) level.members.push_back(DigitString::parse(m.get<std::string>()));
    for (const auto& [key, val] : lj.at("phi").items())
      level.phi[DigitString::parse(key)] = val.get<int>();
    for (const auto& [key, val] : lj.at("height").items())
      level.height[DigitString::parse(key)] = val.get<std::size_t>();
    level.witness_k = lj.at("witnessK").get<std::size_t>();
    out.levels.push_back(std::move(level));
  }
  return out;
}

}  // namespace ekbench
