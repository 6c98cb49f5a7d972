#include "ekbench/fusion.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <utility>

#include <json.hpp>

#include "ekbench/error.hpp"
#include "ekbench/fatness.hpp"

namespace ekbench {

namespace {

using nlohmann::ordered_json;

int anti_digit(const DigitString& x, std::size_t i) {
  return static_cast<int>(i) + 2 - x.at(i);
}

// Extends r column by column to len, least digit keeping r parallel to
// every string in ts.  One anti-parallel digit per string per column, so
// a column can only run dry when |ts| >= alphabet size.
DigitString extend_avoiding(const DigitString& r, std::size_t len,
                            const std::vector<DigitString>& ts) {
  if (len > kMaxDigits)
    throw Error(errc::depth_exhausted, "point prefix would exceed the digit cap");
  DigitString out = r;
  while (out.size() < len) {
    std::size_t i = out.size();
    int pick = -1;
    for (int d = 0; d < alphabet_size(i) && pick < 0; ++d) {
      bool ok = true;
      for (const DigitString& t : ts)
        if (t.size() > i && d == anti_digit(t, i)) {
          ok = false;
          break;
        }
      if (ok) pick = d;
    }
    if (pick < 0)
      throw Error(errc::depth_exhausted,
                  "every digit at column " + std::to_string(i) + " is anti-parallel");
    out = out.extended(pick);
  }
  return out;
}

// (p \ cone(s)) with q spliced in; annotations carried from both sides.
TreeCondition graft(const TreeCondition& p, const DigitString& s, const TreeCondition& q) {
  std::vector<DigitString> keep;
  for (const DigitString& x : p.nodes())
    if (!x.extends(s)) keep.push_back(x);
  std::vector<DigitString> nodes = keep;
  nodes.insert(nodes.end(), q.nodes().begin(), q.nodes().end());
  TreeCondition out(keep.empty() ? q.root() : p.root(), std::move(nodes));
  for (const DigitString& x : keep)
    if (auto a = p.annotation(x)) out.annotate(x, *a);
  for (const auto& [x, a] : q.annotations()) out.annotate(x, a);
  return out;
}

// Lexicographically least extension of t with the given length that
// escapes s, differs from every used string, and in avoiding mode dodges
// the anti-parallel digit of rr in every column.  Backtracking touches a
// complete candidate only when it collides with used, so the search does
// O(len * alphabet + |used| * len) work.
std::optional<DigitString> least_fresh_escaper(const DigitString& t, const Slalom& s,
                                               const DigitString& rr, std::size_t len,
                                               const std::vector<DigitString>& used,
                                               bool avoiding) {
  const std::size_t m = len - t.size();
  std::vector<int> d(m, -1);
  std::size_t j = 0;
  while (true) {
    if (j == m) {
      std::vector<int> digits = t.digits();
      digits.insert(digits.end(), d.begin(), d.end());
      DigitString cand(std::move(digits));
      if (std::find(used.begin(), used.end(), cand) == used.end()) return cand;
      --j;
      continue;
    }
    const std::size_t i = t.size() + j;
    int next = -1;
    for (int c = d[j] + 1; c < alphabet_size(i); ++c) {
      if (s.blocks(i, c)) continue;
      if (avoiding && i < rr.size() && c == anti_digit(rr, i)) continue;
      next = c;
      break;
    }
    if (next < 0) {
      d[j] = -1;
      if (j == 0) return std::nullopt;
      --j;
      continue;
    }
    d[j] = next;
    ++j;
  }
}

// Largest height <= cap such that the family replays fat at the width
// with an affordable slalom budget.  Honest: stops at the first height
// that fails or costs too much.
std::size_t scanned_height(const FiniteFamily& fam, int width, std::size_t cap) {
  constexpr std::uint64_t kBudget = 200000;
  std::size_t h = fam.base().size();
  while (h < cap) {
    if (slalom_count(fam.base().size(), width, h + 1, kBudget) > kBudget) break;
    if (!is_fat(fam, width, h + 1).is_fat) break;
    ++h;
  }
  return h;
}

ordered_json tree_json(const TreeCondition& t) {
  return ordered_json::parse(t.to_json_text());
}

TreeCondition tree_from_json(const ordered_json& j) {
  return TreeCondition::from_json_text(j.dump());
}

}  // namespace

const char* fusion_mode_name(FusionMode m) {
  return m == FusionMode::PLAIN ? "PLAIN" : "PARALLEL_AVOIDING";
}

FusionMode parse_fusion_mode(const std::string& text) {
  if (text == "PLAIN" || text == "plain") return FusionMode::PLAIN;
  if (text == "PARALLEL_AVOIDING" || text == "parallel_avoiding" || text == "parallel-avoiding" ||
      text == "parallel")
    return FusionMode::PARALLEL_AVOIDING;
  throw Error(errc::bad_input, "unknown fusion mode '" + text + "'");
}

int mode_width(FusionMode mode, int m) {
  return mode == FusionMode::PLAIN ? m + 1 : m + 2;
}

int round_of_visit(int m, int k) {
  long long d = static_cast<long long>(m) + k;
  long long r = d * (d + 1) / 2 + m + 1;
  return r > INT_MAX ? INT_MAX : static_cast<int>(r);
}

std::pair<int, int> visit_of_round(int round) {
  if (round < 1) throw Error(errc::bad_input, "round 0 is the bootstrap, it visits nothing");
  long long d = 0;
  while ((d + 1) * (d + 2) / 2 < round) ++d;
  int m = round - 1 - static_cast<int>(d * (d + 1) / 2);
  return {m, static_cast<int>(d) - m};
}

StepOracle default_graft_oracle(FusionMode mode, int steps) {
  return [mode, steps](const StepInput& in) -> StepOutput {
    const DigitString t = in.restricted.root();
    const int n = in.round;
    const int fat_w = mode_width(mode, n);
    const bool avoiding = mode == FusionMode::PARALLEL_AVOIDING;

    // Slaloms the schedule will visit this node with, in visit order.
    std::vector<Slalom> targets;
    {
      SlalomStream stream(t, n + 1);
      for (int k = 0; round_of_visit(n, k) < steps; ++k) targets.push_back(stream.next());
    }
    // A low layer of mode-width slaloms when it is small enough to
    // afford; these only add fatness headroom and may be skipped.
    std::vector<Slalom> extras;
    if (slalom_count(t.size(), fat_w, t.size() + 1, 40) <= 40)
      for (const Slalom& s : enumerate_slaloms(t, fat_w, t.size() + 1))
        if (std::find(targets.begin(), targets.end(), s) == targets.end()) extras.push_back(s);

    // One designated escaper per slalom, all sharing one length.  Equal
    // lengths make the supply an antichain outright, and in avoiding
    // mode the length stays within the returned point prefix with every
    // digit dodging its anti-parallel digit, so parallelism checked here
    // survives any later growth of the prefix.  When some scheduled
    // slalom cannot be escaped at the chosen length the whole supply is
    // rebuilt one column longer, which only adds freedom.
    std::size_t base_len = t.size() + 1;
    for (const Slalom& s : targets) base_len = std::max(base_len, s.height());
    for (const Slalom& s : extras) base_len = std::max(base_len, s.height());

    std::vector<DigitString> picks;
    DigitString rr = in.r;
    bool ok = false;
    for (std::size_t len = base_len; len <= kMaxDigits && len <= base_len + 16; ++len) {
      rr = (avoiding && in.r.size() < len) ? extend_avoiding(in.r, len, {}) : in.r;
      picks.clear();
      bool fits = true;
      for (const Slalom& s : targets) {
        std::optional<DigitString> e = least_fresh_escaper(t, s, rr, len, picks, avoiding);
        if (!e) {
          fits = false;
          break;
        }
        picks.push_back(*e);
      }
      if (!fits) continue;
      for (const Slalom& s : extras) {
        std::optional<DigitString> e = least_fresh_escaper(t, s, rr, len, picks, avoiding);
        if (e) picks.push_back(*e);
      }
      if (picks.empty()) {
        std::optional<DigitString> e = least_fresh_escaper(t, Slalom(t), rr, len, picks, avoiding);
        if (!e) continue;
        picks.push_back(*e);
      }
      ok = true;
      break;
    }
    if (!ok)
      throw Error(errc::oracle_stall,
                  "no supply of escapers fits the schedule of round " + std::to_string(n));

    std::vector<DigitString> nodes = picks;
    nodes.push_back(t);
    TreeCondition q(t, std::move(nodes));
    q.annotate(t, {fat_w, scanned_height(FiniteFamily(t, picks), fat_w, t.size() + 4)});
    return {q, avoiding ? rr : in.r};
  };
}

FusionResult fuse(const TreeCondition& p, const std::vector<DenseOpenSpec>& opens,
                  FusionMode mode, int steps, const StepOracle& oracle) {
  if (opens.empty()) throw Error(errc::schedule_empty, "no dense opens to thread r through");
  if (steps < 1) throw Error(errc::bad_input, "steps must be at least 1");
  if (!validate_condition(p, default_schedule()).pass)
    throw Error(errc::bad_input, "input condition fails validation");
  const StepOracle orc = oracle ? oracle : default_graft_oracle(mode, steps);
  const bool avoiding = mode == FusionMode::PARALLEL_AVOIDING;
  const std::size_t opens_count = opens.size();

  FusionResult out;
  out.mode = mode;
  out.steps = steps;
  out.initial = p;
  out.opens = opens;

  std::vector<TreeCondition> pseq;        // p_n
  std::vector<DigitString> ts, ss;        // t_n, s_n
  std::map<int, SlalomStream> streams;    // per-m canonical slalom streams
  std::map<int, int> emitted;
  TreeCondition cur = p;
  DigitString r;

  for (int n = 0; n < steps; ++n) {
    DigitString s;
    std::string slalom_text;
    int m = -1, k = -1;
    bool length_ok = true;
    if (n == 0) {
      s = p.root();
    } else {
      std::tie(m, k) = visit_of_round(n);
      const DigitString& tm = ts[m];
      auto [it, inserted] = streams.try_emplace(m, SlalomStream(tm, m + 1));
      Slalom visit(tm);
      while (emitted[m] <= k) {
        visit = it->second.next();
        ++emitted[m];
      }
      slalom_text = visit.str();

      std::vector<DigitString> fresh;
      for (const DigitString& x : pseq[m].succ(tm))
        if (std::find(ss.begin(), ss.end(), x) == ss.end()) fresh.push_back(x);
      FiniteFamily fam(tm, fresh);
      std::optional<DigitString> pick;
      if (avoiding) {
        RemovalResult pruned = prune_parallel(fam, r, m + 2, tm.size());
        pick = find_escaper(pruned.family, visit, r.size());
        if (!pick) {
          pick = find_escaper(pruned.family, visit, visit.height());
          if (pick) length_ok = false;
        }
      } else {
        pick = find_escaper(fam, visit, visit.height());
      }
      if (!pick)
        throw Error(errc::oracle_stall, "no fresh successor of node " + std::to_string(m) +
                                            " escapes " + slalom_text + " at round " +
                                            std::to_string(n));
      s = *pick;
    }

    StepOutput o = orc({cur.restrict_at(s), r, n});
    const DigitString t = o.q.root();
    if (!t.extends(s))
      throw Error(errc::bad_input, "oracle root does not extend the picked successor");
    if (!o.r_prime.extends(r)) throw Error(errc::bad_input, "oracle shrank the point prefix");
    std::optional<NodeAnnotation> ann = o.q.annotation(t);
    if (!ann || ann->width < mode_width(mode, n))
      throw Error(errc::oracle_stall,
                  "oracle returned no fatness certificate of width " +
                      std::to_string(mode_width(mode, n)) + " at round " + std::to_string(n));
    if (avoiding)
      for (const DigitString& x : o.q.nodes())
        if (!parallel(x, o.r_prime))
          throw Error(errc::bad_input, "oracle node not parallel to its point prefix");

    TreeCondition next = graft(cur, s, o.q);

    DigitString rp = o.r_prime;
    if (avoiding && rp.size() < t.size()) rp = extend_avoiding(rp, t.size(), {t});
    std::optional<DigitString> rn = extend_into(opens[n % opens_count], rp, {}, 12);
    if (!rn)
      throw Error(errc::depth_exhausted,
                  "cannot extend the point prefix into open " + std::to_string(n % opens_count));
    r = *rn;

    pseq.push_back(next);
    ts.push_back(t);
    ss.push_back(s);
    cur = next;
    out.rounds.push_back({n, m, k, slalom_text, s, t, r, length_ok, o.q});
  }

  TreeCondition pp(ts[0], ts);
  for (int m = 0; m < steps; ++m) {
    std::vector<DigitString> kids = pp.succ(ts[m]);
    if (kids.empty()) continue;
    int w = mode_width(mode, m);
    pp.annotate(ts[m], {w, scanned_height(FiniteFamily(ts[m], kids), w, ts[m].size() + 4)});
  }
  out.p_prime = pp;
  out.r = r;
  return out;
}

std::string FusionResult::to_json_text() const {
  ordered_json j;
  j["mode"] = fusion_mode_name(mode);
  j["steps"] = steps;
  ordered_json os = ordered_json::array();
  for (const DenseOpenSpec& f : opens) os.push_back(f.str());
  j["opens"] = std::move(os);
  j["initial"] = tree_json(initial);
  ordered_json rs = ordered_json::array();
  for (const RoundRecord& rec : rounds) {
    ordered_json rj;
    rj["n"] = rec.n;
    rj["m"] = rec.m;
    rj["k"] = rec.k;
    rj["slalom"] = rec.slalom;
    rj["s"] = rec.s.str();
    rj["t"] = rec.t.str();
    rj["r"] = rec.r.str();
    rj["lengthRuleMet"] = rec.length_rule_met;
    rj["q"] = tree_json(rec.q);
    rs.push_back(std::move(rj));
  }
  j["rounds"] = std::move(rs);
  j["pPrime"] = tree_json(p_prime);
  j["r"] = r.str();
  return j.dump(2);
}

FusionResult FusionResult::from_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  FusionResult out;
  out.mode = parse_fusion_mode(j.at("mode").get<std::string>());
  out.steps = j.at("steps").get<int>();
  for (const auto& o : j.at("opens")) out.opens.push_back(DenseOpenSpec::parse(o.get<std::string>()));
  out.initial = tree_from_json(j.at("initial"));
  for (const auto& rj : j.at("rounds")) {
    RoundRecord rec;
    rec.n = rj.at("n").get<int>();
    rec.m = rj.at("m").get<int>();
    rec.k = rj.at("k").get<int>();
    rec.slalom = rj.at("slalom").get<std::string>();
    rec.s = DigitString::parse(rj.at("s").get<std::string>());
    rec.t = DigitString::parse(rj.at("t").get<std::string>());
    rec.r = DigitString::parse(rj.at("r").get<std::string>());
    rec.length_rule_met = rj.at("lengthRuleMet").get<bool>();
    rec.q = tree_from_json(rj.at("q"));
    out.rounds.push_back(std::move(rec));
  }
  out.p_prime = tree_from_json(j.at("pPrime"));
  out.r = DigitString::parse(j.at("r").get<std::string>());
  return out;
}

InvariantReport replay_fusion(const FusionResult& f) {
  InvariantReport rep;
  std::map<std::string, std::size_t> index;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    auto [it, fresh] = index.try_emplace(name, rep.checks.size());
    if (fresh) rep.checks.push_back({name, true, ""});
    InvariantCheck& c = rep.checks[it->second];
    if (!pass && c.pass) {
      c.pass = false;
      c.detail = detail;
    }
  };
  const bool avoiding = f.mode == FusionMode::PARALLEL_AVOIDING;
  const std::size_t opens_count = f.opens.size();
  add("log_shape",
      f.steps >= 1 && static_cast<int>(f.rounds.size()) == f.steps && opens_count > 0,
      "steps, round count and opens must be consistent and nonempty");
  if (!rep.checks.front().pass) {
    rep.pass = false;
    return rep;
  }

  std::vector<TreeCondition> pseq;
  std::vector<DigitString> ts, ss;
  std::vector<std::optional<Slalom>> visits(f.steps);
  std::map<int, SlalomStream> streams;
  std::map<int, int> emitted;
  TreeCondition cur = f.initial;
  DigitString r_prev;

  for (int n = 0; n < f.steps; ++n) {
    const RoundRecord& rec = f.rounds[n];
    const std::string at = " at round " + std::to_string(n);
    add("round_numbering", rec.n == n, "stored round index mismatch" + at);
    if (n == 0) {
      add("bootstrap", rec.m == -1 && rec.k == -1 && rec.slalom.empty() &&
                           rec.s == f.initial.root(),
          "round 0 must visit nothing and pick the initial root");
    } else {
      auto [m, k] = visit_of_round(n);
      add("schedule_order", rec.m == m && rec.k == k,
          "stored visit disagrees with the diagonal schedule" + at);
      if (rec.m == m && rec.k == k && m < static_cast<int>(ts.size())) {
        const DigitString& tm = ts[m];
        auto [it, inserted] = streams.try_emplace(m, SlalomStream(tm, m + 1));
        Slalom visit(tm);
        bool in_order = emitted[m] == k;
        add("visits_ascending", in_order, "visit counters must arrive in order" + at);
        if (in_order) {
          visit = it->second.next();
          ++emitted[m];
          visits[n] = visit;
          add("scheduled_slalom", visit.str() == rec.slalom,
              "stored slalom is not the k-th canonical one" + at);
          add("visit_escaped", escapes(rec.s, visit),
              "picked successor does not escape the scheduled slalom" + at);
        }
        std::vector<DigitString> orig = pseq[m].succ(tm);
        add("pick_from_original_succ",
            std::find(orig.begin(), orig.end(), rec.s) != orig.end(),
            "picked successor not a successor of t_m in p_m" + at);
        add("s_injective", std::find(ss.begin(), ss.end(), rec.s) == ss.end(),
            "successor picked twice" + at);
        add("pick_present", cur.contains(rec.s), "picked successor missing from p_n" + at);
        if (avoiding) {
          add("pick_parallel", parallel(rec.s, r_prev),
              "picked successor not parallel to the point prefix" + at);
          if (rec.length_rule_met)
            add("length_rule_logged", rec.s.size() >= r_prev.size(),
                "length rule recorded as met but violated" + at);
        }
      }
    }
    add("graft_root", rec.t == rec.q.root() && rec.t.extends(rec.s),
        "graft must be rooted at an extension of the pick" + at);
    add("r_monotone", rec.r.extends(r_prev), "point prefix shrank" + at);
    add("r_in_open",
        dense_open_member(f.opens[n % opens_count], rec.r) == OpenVerdict::CONTAINED,
        "point prefix cylinder not inside the scheduled open" + at);

    TreeCondition next = graft(cur, rec.s, rec.q);
    bool local = true;
    for (const DigitString& x : next.nodes())
      if (!x.extends(rec.s) && !cur.contains(x)) local = false;
    for (const DigitString& x : cur.nodes())
      if (!x.extends(rec.s) && !next.contains(x)) local = false;
    add("cone_locality", local, "condition changed outside the picked cone" + at);

    pseq.push_back(next);
    ts.push_back(rec.t);
    ss.push_back(rec.s);
    cur = next;
    r_prev = rec.r;
  }

  for (int n = 0; n < f.steps; ++n) {
    const DigitString& rn = f.rounds[n].r;
    for (int m = 0; m <= n; ++m) {
      const std::string at = " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
      add("node_membership", pseq[n].contains(ts[m]), "t_m missing from p_n" + at);
      std::vector<DigitString> orig = pseq[m].succ(ts[m]);
      std::vector<DigitString> now = pseq[n].succ(ts[m]);
      bool kept = true;
      for (const DigitString& x : orig) {
        if (std::find(ss.begin(), ss.begin() + n + 1, x) != ss.begin() + n + 1) continue;
        if (std::find(now.begin(), now.end(), x) == now.end()) kept = false;
      }
      add("succ_preserved", kept, "unpicked successor disappeared" + at);
      if (avoiding) {
        add("r_parallel_nodes", parallel(rn, ts[m]), "r_n not parallel to t_m" + at);
        add("r_length_dominates", rn.size() >= ts[m].size(), "|r_n| < |t_m|" + at);
      }
    }
  }

  for (int m = 0; m < f.steps; ++m) {
    const std::string at = " (m=" + std::to_string(m) + ")";
    add("graft_is_restriction", f.rounds[m].q == pseq[m].restrict_at(ts[m]),
        "q_m differs from restrict(p_m, t_m)" + at);
    int w = mode_width(f.mode, m);
    FiniteFamily fam(ts[m], pseq[m].succ(ts[m]));
    add("succ_fat_at_width",
        is_fat(fam, w, pseq[m].certified_height(ts[m], w)).is_fat,
        "succ(t_m) in p_m not fat at the mode width" + at);
  }

  {
    std::vector<DigitString> uniq = ts;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    TreeCondition expect(ts[0], uniq);
    bool same = expect.root() == f.p_prime.root() && expect.nodes() == f.p_prime.nodes();
    add("p_prime_nodes", same, "p' must consist of the adjoined nodes");
    add("final_r", f.r == f.rounds.back().r, "final r differs from the last round's r");
    for (int n = 1; n < f.steps; ++n) {
      if (!visits[n]) continue;
      const RoundRecord& rec = f.rounds[n];
      bool esc = false;
      for (const DigitString& x : f.p_prime.succ(ts[rec.m]))
        if (escapes(x, *visits[n])) esc = true;
      add("p_prime_escapes", esc,
          "no p' successor escapes the visited slalom (round " + std::to_string(n) + ")");
    }
  }

  rep.pass = true;
  for (const InvariantCheck& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace ekbench
