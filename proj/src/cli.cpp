#include "ekbench/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ekbench/bn_certificate.hpp"
#include "ekbench/dense_open.hpp"
#include "ekbench/digit_string.hpp"
#include "ekbench/dimension.hpp"
#include "ekbench/error.hpp"
#include "ekbench/fatness.hpp"
#include "ekbench/fn_oracle.hpp"
#include "ekbench/fusion.hpp"
#include "ekbench/prng.hpp"
#include "ekbench/report.hpp"
#include "ekbench/sampler.hpp"
#include "ekbench/scheme.hpp"
#include "ekbench/tree_condition.hpp"

namespace ekbench::cli {
namespace {

using njson = nlohmann::ordered_json;

int exit_code_for(errc c) {
  switch (c) {
    case errc::insufficient_fatness:
    case errc::no_fat_node:
      return 1;
    case errc::bad_input:
    case errc::length_mismatch:
    case errc::base_not_parallel:
    case errc::node_absent:
    case errc::dim_too_large:
    case errc::overlapping_ifs:
      return 2;
    case errc::resolution_exhausted:
    case errc::budget_exceeded:
    case errc::grid_exhausted:
    case errc::depth_exhausted:
    case errc::oracle_stall:
    case errc::schedule_empty:
      return 3;
  }
  return 2;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::bad_input, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::bad_input, "cannot write " + path);
  out << text;
}

// "@path" reads the file; anything else is taken literally.
std::string arg_text(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
  return arg;
}

// Family JSON: {"base": "[..]", "members": ["[..]", ...]}.
FiniteFamily parse_family(const std::string& arg) {
  njson j = njson::parse(arg_text(arg));
  DigitString base = DigitString::parse(j.at("base").get<std::string>());
  std::vector<DigitString> members;
  for (const auto& e : j.at("members")) members.push_back(DigitString::parse(e.get<std::string>()));
  return FiniteFamily(std::move(base), std::move(members));
}

// Interval list "lo:hi,lo:hi,..." with exact rational endpoints.
std::vector<Interval> parse_intervals(const std::string& text) {
  std::vector<Interval> raw;
  if (text.empty()) return raw;
  std::string cur;
  auto flush = [&raw](const std::string& piece) {
    auto colon = piece.find(':');
    if (colon == std::string::npos)
      throw Error(errc::bad_input, "interval needs lo:hi, got " + piece);
    raw.push_back({parse_rat(piece.substr(0, colon)), parse_rat(piece.substr(colon + 1))});
  };
  for (char c : text) {
    if (c == ',') {
      flush(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  flush(cur);
  return raw;
}

IntervalCover parse_cover(const std::string& text) { return IntervalCover(parse_intervals(text)); }

// Comma-separated rationals "0,1/2,-3/4".
std::vector<Rat> parse_rats(const std::string& text) {
  std::vector<Rat> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

// Canonical slalom text "<base>;i:{d,...};...;ht=H"; the ht suffix is
// redundant (trailing empty columns are always trimmed) and is ignored.
Slalom parse_slalom(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  DigitString base = DigitString::parse(parts[0]);
  std::map<int, std::vector<int>> cols;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (p.empty() || p.rfind("ht=", 0) == 0) continue;
    auto colon = p.find(':');
    auto open = p.find('{');
    auto close = p.find('}');
    if (colon == std::string::npos || open == std::string::npos || close == std::string::npos ||
        colon > open || open > close)
      throw Error(errc::bad_input, "bad slalom column: " + p);
    std::vector<int> digits;
    std::string body = p.substr(open + 1, close - open - 1);
    std::string d;
    for (char c : body + ",") {
      if (c == ',') {
        if (!d.empty()) digits.push_back(std::stoi(d));
        d.clear();
      } else {
        d += c;
      }
    }
    cols[std::stoi(p.substr(0, colon))] = std::move(digits);
  }
  return Slalom(std::move(base), cols);
}

njson cover_payload(const IntervalCover& c, std::size_t list_cap = 4096) {
  njson j;
  j["count"] = c.size();
  j["totalLength"] = rat_str(c.total_length());
  if (auto h = c.hull())
    j["hull"] = {rat_str(h->lo), rat_str(h->hi)};
  else
    j["hull"] = nullptr;
  if (c.size() <= list_cap) {
    njson arr = njson::array();
    for (const Interval& iv : c.intervals()) arr.push_back({rat_str(iv.lo), rat_str(iv.hi)});
    j["intervals"] = arr;
  } else {
    j["intervalsOmitted"] = true;
  }
  return j;
}

std::string cover_csv(const IntervalCover& c) {
  std::string out = "lo,hi\n";
  for (const Interval& iv : c.intervals()) out += rat_str(iv.lo) + "," + rat_str(iv.hi) + "\n";
  return out;
}

njson verdict_payload(const FatnessVerdict& v) {
  njson j;
  j["isFat"] = v.is_fat;
  j["k"] = v.k;
  j["height"] = v.height;
  j["killer"] = v.killer ? njson(v.killer->str()) : njson(nullptr);
  j["examined"] = v.searched.examined;
  j["pruned"] = v.searched.pruned;
  return j;
}

njson family_payload(const FiniteFamily& f) {
  njson j;
  j["base"] = f.base().str();
  njson m = njson::array();
  for (const DigitString& t : f.members()) m.push_back(t.str());
  j["members"] = m;
  return j;
}

njson invariant_payload(const InvariantReport& r) {
  njson j;
  j["pass"] = r.pass;
  njson checks = njson::array();
  for (const InvariantCheck& c : r.checks) {
    njson cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

njson condition_report_payload(const ConditionReport& r) {
  njson j;
  j["pass"] = r.pass;
  njson fl = njson::array();
  for (const NodeFailure& f : r.failures)
    fl.push_back({{"node", f.node.str()}, {"k", f.k}, {"reason", f.reason}});
  j["failures"] = fl;
  return j;
}

njson scheme_report_payload(const SchemeReport& r) {
  static const char* const names[6] = {"counts",  "nesting",   "branching",
                                       "meets_p", "diameters", "tuples"};
  njson j;
  j["pass"] = r.pass;
  njson arr = njson::array();
  for (int i = 0; i < 6; ++i) {
    njson cj;
    cj["name"] = names[i];
    cj["pass"] = r.clauses[i].pass;
    if (!r.clauses[i].detail.empty()) cj["detail"] = r.clauses[i].detail;
    arr.push_back(cj);
  }
  j["clauses"] = arr;
  return j;
}

// The stock dense-open schedule used when no --open flags are given.
std::vector<DenseOpenSpec> builtin_opens() {
  std::map<DigitString, DigitString> exc;
  exc[DigitString({0})] = DigitString({0, 1});
  return {DenseOpenSpec({0}), DenseOpenSpec({0, 0}), DenseOpenSpec({1}), DenseOpenSpec({2}),
          DenseOpenSpec({0}, std::move(exc))};
}

// Flat key=value config files expand into "--key value" tokens placed
// before the explicit flags, so the command line wins under TakeLast.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       std::string* config_text) {
  std::vector<std::string> kept;
  std::vector<std::string> injected;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(errc::bad_input, "--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
      continue;
    }
    std::string text = slurp(path);
    *config_text += text;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto trim = [](std::string s) {
        auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) return std::string();
        auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw Error(errc::bad_input, "config line needs key=value: " + line);
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw Error(errc::bad_input, "config line has an empty key: " + line);
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  std::vector<std::string> result;
  if (!kept.empty()) result.push_back(kept[0]);
  result.insert(result.end(), injected.begin(), injected.end());
  if (!kept.empty()) result.insert(result.end(), kept.begin() + 1, kept.end());
  return result;
}

// Lets a later occurrence of any scalar option override an earlier one
// (the config-file expansion relies on this).
void allow_overrides(CLI::App& app) {
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    allow_overrides(*sub);
  for (CLI::Option* o : app.get_options())
    if (o->get_expected_max() == 1)
      o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::string config_text;
  std::vector<std::string> eff;
  try {
    eff = expand_config(args, &config_text);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string command_line;
  for (const std::string& t : eff) {
    if (!command_line.empty()) command_line += ' ';
    command_line += t;
  }
  const std::string digest_text = command_line + "\n" + config_text;

  CLI::App app{"finite workbench for slalom fatness, condition fusion, and translate avoidance",
               "ekbench"};
  app.require_subcommand(1);
  app.footer("Any subcommand also accepts --config <file> holding flat key=value lines;\n"
             "explicit flags override config values.  Arguments marked @file read the file.");

  int exit_code = 0;
  auto emit = [&](const std::string& cmd, njson payload, const std::string& out_path, int code) {
    njson rep = render_report(cmd, digest_text, std::move(payload));
    std::string text = report_text(rep);
    if (!out_path.empty())
      write_file(out_path, text);
    else
      out << text;
    return code;
  };

  // fat: decide family fatness.
  struct {
    std::string family, base, out_path;
    std::size_t full_min = 0, full_max = 0, height = 1;
    int k = 1;
    bool brute = false;
  } fat_a;
  auto* c_fat = app.add_subcommand("fat", "decide whether a family is k-fat to a height");
  c_fat->add_option("--family", fat_a.family, "family JSON, inline or @file");
  c_fat->add_option("--base", fat_a.base, "base digit string for a full-product family");
  c_fat->add_option("--full-min", fat_a.full_min, "least member length of the full product");
  c_fat->add_option("--full-max", fat_a.full_max, "greatest member length of the full product");
  c_fat->add_option("--k", fat_a.k, "slalom width bound")->required();
  c_fat->add_option("--height", fat_a.height, "slalom height bound")->required();
  c_fat->add_flag("--brute", fat_a.brute, "use the enumeration oracle instead of branch and bound");
  c_fat->add_option("--out", fat_a.out_path, "write the report here instead of stdout");
  c_fat->callback([&] {
    if (fat_a.family.empty() && fat_a.base.empty())
      throw Error(errc::bad_input, "provide --family or --base with --full-min/--full-max");
    FiniteFamily f = fat_a.family.empty()
                         ? full_product(DigitString::parse(fat_a.base), fat_a.full_min,
                                        fat_a.full_max)
                         : parse_family(fat_a.family);
    FatnessVerdict v = fat_a.brute ? brute_force_is_fat(f, fat_a.k, fat_a.height)
                                   : is_fat(f, fat_a.k, fat_a.height);
    njson payload;
    payload["base"] = f.base().str();
    payload["familySize"] = f.size();
    payload["verdict"] = verdict_payload(v);
    exit_code = emit("fat", std::move(payload), fat_a.out_path, v.is_fat ? 0 : 1);
  });

  // escape: find an escaper of one slalom.
  struct {
    std::string slalom, family, out_path;
    std::size_t min_length = 0, max_length = kMaxDigits;
  } esc_a;
  auto* c_esc = app.add_subcommand("escape", "find an escaper of a slalom");
  c_esc->add_option("--slalom", esc_a.slalom, "slalom text \"<base>;i:{d,...};ht=H\"")->required();
  c_esc->add_option("--family", esc_a.family, "search this family (default: the full tree)");
  c_esc->add_option("--min-length", esc_a.min_length, "least escaper length");
  c_esc->add_option("--max-length", esc_a.max_length, "greatest escaper length (full tree only)");
  c_esc->add_option("--out", esc_a.out_path, "write the report here instead of stdout");
  c_esc->callback([&] {
    Slalom s = parse_slalom(esc_a.slalom);
    std::optional<DigitString> e =
        esc_a.family.empty()
            ? least_escaper(s, esc_a.min_length, esc_a.max_length)
            : find_escaper(parse_family(esc_a.family), s, esc_a.min_length);
    njson payload;
    payload["slalom"] = s.str();
    payload["found"] = e.has_value();
    payload["escaper"] = e ? njson(e->str()) : njson(nullptr);
    exit_code = emit("escape", std::move(payload), esc_a.out_path, e ? 0 : 1);
  });

  // antichain: extract a pairwise incomparable fat subfamily.
  struct {
    std::string family, base = "[]", out_path;
    std::size_t depth_cap = 6, target_height = 1;
    int k = 1;
  } anti_a;
  auto* c_anti = app.add_subcommand("antichain", "extract an incomparable (k-1)-fat subfamily");
  c_anti->add_option("--family", anti_a.family, "family JSON, inline or @file");
  c_anti->add_option("--base", anti_a.base, "base of the full extension tree (when no --family)");
  c_anti->add_option("--depth-cap", anti_a.depth_cap, "length cap of the full extension tree");
  c_anti->add_option("--k", anti_a.k, "fatness width consumed by the extraction")->required();
  c_anti->add_option("--target-height", anti_a.target_height, "height of the output certificate")
      ->required();
  c_anti->add_option("--out", anti_a.out_path, "write the report here instead of stdout");
  c_anti->callback([&] {
    ExtractResult r = anti_a.family.empty()
                          ? extract_incomparable_full(DigitString::parse(anti_a.base),
                                                      anti_a.depth_cap, anti_a.k,
                                                      anti_a.target_height)
                          : extract_incomparable(parse_family(anti_a.family), anti_a.k,
                                                 anti_a.target_height);
    njson payload;
    payload["slalomCount"] = r.slalom_count;
    njson picks = njson::array();
    for (const DigitString& t : r.picks.members()) picks.push_back(t.str());
    payload["picks"] = picks;
    payload["certificate"] = verdict_payload(r.certificate);
    exit_code = emit("antichain", std::move(payload), anti_a.out_path,
                     r.certificate.is_fat ? 0 : 1);
  });

  // prune: parallel pruning or finite removal, with a fresh verdict.
  struct {
    std::string family, sigma, out_path;
    std::vector<std::string> removed;
    std::size_t height = 1;
    int k = 1;
  } pr_a;
  auto* c_pr = app.add_subcommand("prune", "prune a family and re-certify fatness");
  c_pr->add_option("--family", pr_a.family, "family JSON, inline or @file")->required();
  c_pr->add_option("--sigma", pr_a.sigma, "keep members parallel to this digit string");
  c_pr->add_option("--remove", pr_a.removed, "digit string to remove (repeatable)");
  c_pr->add_option("--k", pr_a.k, "width of the input certificate")->required();
  c_pr->add_option("--height", pr_a.height, "height of the certificate")->required();
  c_pr->add_option("--out", pr_a.out_path, "write the report here instead of stdout");
  c_pr->callback([&] {
    FiniteFamily f = parse_family(pr_a.family);
    std::string mode;
    std::optional<RemovalResult> r;
    if (!pr_a.sigma.empty()) {
      mode = "parallel";
      r = prune_parallel(f, DigitString::parse(pr_a.sigma), pr_a.k, pr_a.height);
    } else if (!pr_a.removed.empty()) {
      mode = "removal";
      std::vector<DigitString> v;
      for (const std::string& t : pr_a.removed) v.push_back(DigitString::parse(t));
      r = remove_finite(f, v, pr_a.k, pr_a.height);
    } else {
      throw Error(errc::bad_input, "provide --sigma or --remove");
    }
    njson payload;
    payload["mode"] = mode;
    payload["result"] = family_payload(r->family);
    payload["verdict"] = verdict_payload(r->verdict);
    exit_code = emit("prune", std::move(payload), pr_a.out_path, r->verdict.is_fat ? 0 : 1);
  });

  // build-cond: deterministic condition builder plus validation.
  struct {
    std::size_t depth = 4;
    std::string save, out_path;
  } bc_a;
  auto* c_bc = app.add_subcommand("build-cond", "build and validate a condition prefix");
  c_bc->add_option("--depth", bc_a.depth, "node length cap of the built tree");
  c_bc->add_option("--save", bc_a.save, "write the condition JSON here");
  c_bc->add_option("--out", bc_a.out_path, "write the report here instead of stdout");
  c_bc->callback([&] {
    TreeCondition p = build_condition(bc_a.depth);
    ConditionReport rep = validate_condition(p, default_schedule());
    if (!bc_a.save.empty()) write_file(bc_a.save, p.to_json_text());
    njson payload;
    payload["requestedDepth"] = bc_a.depth;
    payload["nodes"] = p.size();
    payload["depth"] = p.depth();
    payload["validation"] = condition_report_payload(rep);
    exit_code = emit("build-cond", std::move(payload), bc_a.out_path, rep.pass ? 0 : 1);
  });

  // fuse: run the fusion engine and replay its invariants.
  struct {
    std::string cond, mode = "plain", save, out_path;
    std::vector<std::string> open_texts;
    std::size_t depth = 10;
    int steps = 60;
  } fu_a;
  auto* c_fu = app.add_subcommand("fuse", "run a fusion and replay the invariant list");
  c_fu->add_option("--cond", fu_a.cond, "starting condition JSON, inline or @file");
  c_fu->add_option("--depth", fu_a.depth, "build the starting condition at this depth");
  c_fu->add_option("--mode", fu_a.mode, "plain or parallel-avoiding");
  c_fu->add_option("--steps", fu_a.steps, "number of rounds");
  c_fu->add_option("--open", fu_a.open_texts, "dense open spec (repeatable; default: builtins)");
  c_fu->add_option("--save", fu_a.save, "write the full fusion log JSON here");
  c_fu->add_option("--out", fu_a.out_path, "write the report here instead of stdout");
  c_fu->callback([&] {
    TreeCondition p = fu_a.cond.empty() ? build_condition(fu_a.depth)
                                        : TreeCondition::from_json_text(arg_text(fu_a.cond));
    std::vector<DenseOpenSpec> opens;
    if (fu_a.open_texts.empty())
      opens = builtin_opens();
    else
      for (const std::string& t : fu_a.open_texts) opens.push_back(DenseOpenSpec::parse(t));
    FusionMode mode = parse_fusion_mode(fu_a.mode);
    FusionResult f = fuse(p, opens, mode, fu_a.steps);
    InvariantReport rep = replay_fusion(f);
    if (!fu_a.save.empty()) write_file(fu_a.save, f.to_json_text());
    njson payload;
    payload["mode"] = fusion_mode_name(f.mode);
    payload["steps"] = f.steps;
    payload["initialNodes"] = f.initial.size();
    njson os = njson::array();
    for (const DenseOpenSpec& o : f.opens) os.push_back(o.str());
    payload["opens"] = os;
    payload["finalR"] = f.r.str();
    payload["pPrimeNodes"] = f.p_prime.size();
    payload["pPrimeDepth"] = f.p_prime.depth();
    payload["replay"] = invariant_payload(rep);
    exit_code = emit("fuse", std::move(payload), fu_a.out_path, rep.pass ? 0 : 1);
  });

  // verify-cert: replay a stored fusion log, optionally with a
  // membership certificate extraction.
  struct {
    std::string log, save_bn, out_path;
    int bn = -1;
  } vc_a;
  auto* c_vc = app.add_subcommand("verify-cert", "replay a stored fusion log");
  c_vc->add_option("--log", vc_a.log, "fusion log JSON, inline or @file")->required();
  c_vc->add_option("--bn", vc_a.bn, "also extract and validate the depth-N certificate");
  c_vc->add_option("--save-bn", vc_a.save_bn, "write the extracted certificate JSON here");
  c_vc->add_option("--out", vc_a.out_path, "write the report here instead of stdout");
  c_vc->callback([&] {
    FusionResult f = FusionResult::from_json_text(arg_text(vc_a.log));
    InvariantReport rep = replay_fusion(f);
    njson payload;
    payload["mode"] = fusion_mode_name(f.mode);
    payload["steps"] = f.steps;
    payload["replay"] = invariant_payload(rep);
    bool pass = rep.pass;
    if (vc_a.bn >= 0) {
      BnCertificate cert = extract_bn_certificate(f, static_cast<std::size_t>(vc_a.bn));
      InvariantReport brep = validate_bn_certificate(cert);
      if (!vc_a.save_bn.empty()) write_file(vc_a.save_bn, cert.to_json_text());
      njson bj;
      bj["depth"] = vc_a.bn;
      njson sizes = njson::array();
      for (const BnLevel& l : cert.levels) sizes.push_back(l.members.size());
      bj["levelSizes"] = sizes;
      bj["validation"] = invariant_payload(brep);
      payload["bn"] = bj;
      pass = pass && brep.pass;
    }
    exit_code = emit("verify-cert", std::move(payload), vc_a.out_path, pass ? 0 : 1);
  });

  // dim: dimension estimates and the tuple-size threshold.
  struct {
    std::string ifs, choose, out_path;
    int box_lo = 0, box_hi = 0;
  } dm_a;
  auto* c_dm = app.add_subcommand("dim", "dimension estimates for an IFS attractor");
  c_dm->add_option("--ifs", dm_a.ifs, "IFS text \"ratio,offset;ratio,offset;...\"")->required();
  c_dm->add_option("--box-lo", dm_a.box_lo, "least depth of the box-count fit");
  c_dm->add_option("--box-hi", dm_a.box_hi, "greatest depth of the box-count fit");
  c_dm->add_option("--choose-n", dm_a.choose, "tuple-size threshold for this dimension bound");
  c_dm->add_option("--out", dm_a.out_path, "write the report here instead of stdout");
  c_dm->callback([&] {
    SimilarIfs k = SimilarIfs::parse(dm_a.ifs);
    DimensionEstimate sim = similarity_dimension(k);
    njson payload;
    payload["similarity"] = {{"value", sim.value}, {"residual", sim.residual}};
    if (dm_a.box_hi > 0) {
      DimensionEstimate box = box_dimension_fit(k, dm_a.box_lo, dm_a.box_hi);
      payload["boxFit"] = {{"value", box.value},
                           {"residual", box.residual},
                           {"depthLo", dm_a.box_lo},
                           {"depthHi", dm_a.box_hi}};
    }
    if (!dm_a.choose.empty()) {
      ChooseN cn = choose_N(parse_rat(dm_a.choose));
      payload["chooseN"] = {{"dimUpper", rat_str(parse_rat(dm_a.choose))},
                            {"n", cn.n},
                            {"certificate", rat_str(cn.certificate)}};
    }
    exit_code = emit("dim", std::move(payload), dm_a.out_path, 0);
  });

  // cover: refined attractor cover.
  struct {
    std::string ifs, csv, out_path;
    int depth = 4;
  } cv_a;
  auto* c_cv = app.add_subcommand("cover", "depth-d interval cover of an IFS attractor");
  c_cv->add_option("--ifs", cv_a.ifs, "IFS text")->required();
  c_cv->add_option("--depth", cv_a.depth, "refinement depth");
  c_cv->add_option("--csv", cv_a.csv, "write the intervals as CSV here");
  c_cv->add_option("--out", cv_a.out_path, "write the report here instead of stdout");
  c_cv->callback([&] {
    IntervalCover c = attractor_cover(SimilarIfs::parse(cv_a.ifs), cv_a.depth);
    if (!cv_a.csv.empty()) write_file(cv_a.csv, cover_csv(c));
    njson payload;
    payload["depth"] = cv_a.depth;
    payload.update(cover_payload(c));
    exit_code = emit("cover", std::move(payload), cv_a.out_path, 0);
  });

  // minkowski: sum or difference cover of two covers.
  struct {
    std::string a, b, op = "diff", csv, out_path;
  } mk_a;
  auto* c_mk = app.add_subcommand("minkowski", "pointwise sum or difference of two covers");
  c_mk->add_option("--a", mk_a.a, "left cover \"lo:hi,lo:hi,...\"")->required();
  c_mk->add_option("--b", mk_a.b, "right cover")->required();
  c_mk->add_option("--op", mk_a.op, "sum or diff");
  c_mk->add_option("--csv", mk_a.csv, "write the intervals as CSV here");
  c_mk->add_option("--out", mk_a.out_path, "write the report here instead of stdout");
  c_mk->callback([&] {
    MinkOp op;
    if (mk_a.op == "sum")
      op = MinkOp::SUM;
    else if (mk_a.op == "diff")
      op = MinkOp::DIFF;
    else
      throw Error(errc::bad_input, "--op must be sum or diff, got " + mk_a.op);
    IntervalCover c = minkowski(parse_cover(mk_a.a), op, parse_cover(mk_a.b));
    if (!mk_a.csv.empty()) write_file(mk_a.csv, cover_csv(c));
    njson payload;
    payload["op"] = mk_a.op;
    payload.update(cover_payload(c));
    exit_code = emit("minkowski", std::move(payload), mk_a.out_path, 0);
  });

  // fn-check: single-translate coverability of a tuple or a product.
  struct {
    std::string ifs, xs, intervals, p = "0:1", out_path;
    int depth = 6;
  } fc_a;
  auto* c_fc = app.add_subcommand("fn-check", "single-translate coverability oracle");
  c_fc->add_option("--ifs", fc_a.ifs, "the translated attractor's IFS")->required();
  c_fc->add_option("--xs", fc_a.xs, "tuple of rationals \"x0,x1,...\"");
  c_fc->add_option("--intervals", fc_a.intervals, "product intervals \"lo:hi,lo:hi,...\"");
  c_fc->add_option("--p", fc_a.p, "portion cover intersected into each interval");
  c_fc->add_option("--depth", fc_a.depth, "cover depth");
  c_fc->add_option("--out", fc_a.out_path, "write the report here instead of stdout");
  c_fc->callback([&] {
    SimilarIfs kp = SimilarIfs::parse(fc_a.ifs);
    njson payload;
    payload["depth"] = fc_a.depth;
    if (!fc_a.xs.empty()) {
      TupleVerdict v = fn_membership(parse_rats(fc_a.xs), kp, fc_a.depth);
      payload["status"] = tuple_status_name(v.status);
      payload["witness"] = v.witness ? njson(rat_str(*v.witness)) : njson(nullptr);
      exit_code = emit("fn-check", std::move(payload), fc_a.out_path, 0);
    } else if (!fc_a.intervals.empty()) {
      std::vector<Interval> is = parse_intervals(fc_a.intervals);
      bool ok = product_avoids_fn(is, parse_cover(fc_a.p), kp, fc_a.depth);
      payload["tupleSize"] = is.size();
      payload["avoids"] = ok;
      exit_code = emit("fn-check", std::move(payload), fc_a.out_path, ok ? 0 : 1);
    } else {
      throw Error(errc::bad_input, "provide --xs or --intervals");
    }
  });

  // scheme: build or load a Cantor scheme and validate its clauses.
  struct {
    std::string load, p = "0:1", ifs = "1/10,0;1/10,1/2", save, out_path;
    int n = 2, levels = 4, max_cover_depth = 12;
    std::size_t tuple_cap = 200000;
  } sc_a;
  auto* c_sc = app.add_subcommand("scheme", "build or validate a nested avoidance scheme");
  c_sc->add_option("--load", sc_a.load, "validate this scheme JSON instead of building");
  c_sc->add_option("--p", sc_a.p, "portion cover");
  c_sc->add_option("--ifs", sc_a.ifs, "the avoided attractor's IFS");
  c_sc->add_option("--n", sc_a.n, "children per interval");
  c_sc->add_option("--levels", sc_a.levels, "bottom level index");
  c_sc->add_option("--max-cover-depth", sc_a.max_cover_depth, "certification depth budget");
  c_sc->add_option("--tuple-cap", sc_a.tuple_cap, "guard on the number of certified tuples");
  c_sc->add_option("--save", sc_a.save, "write the scheme JSON here");
  c_sc->add_option("--out", sc_a.out_path, "write the report here instead of stdout");
  c_sc->callback([&] {
    CantorScheme s = !sc_a.load.empty()
                         ? CantorScheme::from_json_text(arg_text(sc_a.load))
                         : build_scheme(parse_cover(sc_a.p), SimilarIfs::parse(sc_a.ifs), sc_a.n,
                                        sc_a.levels, sc_a.max_cover_depth, sc_a.tuple_cap);
    SchemeReport rep = validate_scheme(s);
    if (!sc_a.save.empty()) write_file(sc_a.save, s.to_json_text());
    njson payload;
    payload["n"] = s.n;
    njson sizes = njson::array();
    for (const auto& level : s.levels) sizes.push_back(level.size());
    payload["levelSizes"] = sizes;
    payload["certDepths"] = s.cert_depths;
    payload["validation"] = scheme_report_payload(rep);
    exit_code = emit("scheme", std::move(payload), sc_a.out_path, rep.pass ? 0 : 1);
  });

  // hits: translate hit counts against a scheme, single or seeded sweep.
  struct {
    std::string scheme, r, out_path;
    int count = 1000, check_depth = -1, deepen = 3;
    std::uint64_t seed = 1;
  } ht_a;
  auto* c_ht = app.add_subcommand("hits", "count scheme cells reachable by a translate");
  c_ht->add_option("--scheme", ht_a.scheme, "scheme JSON, inline or @file")->required();
  c_ht->add_option("--r", ht_a.r, "single translate (skips the random sweep)");
  c_ht->add_option("--count", ht_a.count, "number of random translates");
  c_ht->add_option("--seed", ht_a.seed, "sweep seed");
  c_ht->add_option("--check-depth", ht_a.check_depth,
                   "cover depth (default: the scheme's last certification depth)");
  c_ht->add_option("--deepen", ht_a.deepen, "extra depth allowed to resolve exceptions");
  c_ht->add_option("--out", ht_a.out_path, "write the report here instead of stdout");
  c_ht->callback([&] {
    CantorScheme s = CantorScheme::from_json_text(arg_text(ht_a.scheme));
    int cd = ht_a.check_depth >= 0 ? ht_a.check_depth
                                   : (s.cert_depths.empty() ? 6 : s.cert_depths.back());
    if (!ht_a.r.empty()) {
      Rat r = parse_rat(ht_a.r);
      HitReport h = translate_hit_count(s, r, cd);
      njson payload;
      payload["r"] = rat_str(r);
      payload["checkDepth"] = cd;
      payload["possibleHits"] = h.possible_hits;
      payload["exactHits"] = h.exact_hits;
      payload["hardInvariantOk"] = h.hard_invariant_ok;
      njson cells = njson::array();
      for (const CellHit& c : h.cells)
        cells.push_back({{"cell", c.cell},
                         {"certifiedMiss", c.certified_miss},
                         {"exactPoint", c.exact_point ? njson(rat_str(*c.exact_point))
                                                      : njson(nullptr)}});
      payload["cells"] = cells;
      exit_code = emit("hits", std::move(payload), ht_a.out_path, h.hard_invariant_ok ? 0 : 1);
      return;
    }
    SplitMix64 rng(ht_a.seed);
    const int bound = s.n - 1;
    int within = 0, exceptions = 0, resolved = 0;
    bool hard_all = true;
    std::vector<std::string> unresolved;
    for (int i = 0; i < ht_a.count; ++i) {
      Rat r = rng.rat_between(Rat(-1), Rat(1), 2000000);
      HitReport h = translate_hit_count(s, r, cd);
      if (!h.hard_invariant_ok) hard_all = false;
      if (h.possible_hits <= bound) {
        ++within;
        continue;
      }
      ++exceptions;
      bool fixed = false;
      for (int extra = 1; extra <= ht_a.deepen; ++extra) {
        HitReport deeper = translate_hit_count(s, r, cd + extra);
        if (!deeper.hard_invariant_ok) hard_all = false;
        if (deeper.possible_hits <= bound) {
          fixed = true;
          break;
        }
      }
      if (fixed)
        ++resolved;
      else
        unresolved.push_back(rat_str(r));
    }
    njson payload;
    payload["count"] = ht_a.count;
    payload["seed"] = ht_a.seed;
    payload["checkDepth"] = cd;
    payload["bound"] = bound;
    payload["withinBound"] = within;
    payload["withinBoundFraction"] =
        ht_a.count > 0 ? static_cast<double>(within) / ht_a.count : 1.0;
    payload["exceptions"] = exceptions;
    payload["exceptionsResolved"] = resolved;
    payload["unresolved"] = unresolved;
    payload["hardInvariantAll"] = hard_all;
    exit_code = emit("hits", std::move(payload), ht_a.out_path,
                     unresolved.empty() && hard_all ? 0 : 1);
  });

  // sample: greedy difference-avoiding point set.
  struct {
    std::string ifs = "1/10,0;1/10,1/2", grid = "1/1000", exclusion, save, csv, out_path;
    std::size_t count = 64;
    int depth = 6;
  } sp_a;
  auto* c_sp = app.add_subcommand("sample", "greedily sample points avoiding K-K differences");
  c_sp->add_option("--ifs", sp_a.ifs, "the attractor's IFS");
  c_sp->add_option("--count", sp_a.count, "points to accept");
  c_sp->add_option("--grid", sp_a.grid, "grid step (rational)");
  c_sp->add_option("--depth", sp_a.depth, "difference-cover depth");
  c_sp->add_option("--exclusion", sp_a.exclusion, "cover of excluded points \"lo:hi,...\"");
  c_sp->add_option("--save", sp_a.save, "write the sample set JSON here");
  c_sp->add_option("--csv", sp_a.csv, "write point,step rows here");
  c_sp->add_option("--out", sp_a.out_path, "write the report here instead of stdout");
  c_sp->callback([&] {
    SampleSet x = greedy_sample(SimilarIfs::parse(sp_a.ifs), sp_a.count,
                                parse_cover(sp_a.exclusion), parse_rat(sp_a.grid), sp_a.depth);
    if (!sp_a.save.empty()) write_file(sp_a.save, x.to_json_text());
    if (!sp_a.csv.empty()) write_file(sp_a.csv, x.to_csv());
    njson payload;
    payload["count"] = x.points.size();
    payload["depth"] = x.depth;
    payload["grid"] = rat_str(parse_rat(sp_a.grid));
    payload["lastStep"] = x.steps.empty() ? 0 : x.steps.back();
    njson pts = njson::array();
    for (const Rat& p : x.points) pts.push_back(rat_str(p));
    payload["points"] = pts;
    payload["steps"] = x.steps;
    exit_code = emit("sample", std::move(payload), sp_a.out_path, 0);
  });

  // verify-sample: translate hit counts against a stored sample set.
  struct {
    std::string sample, t, out_path;
    int count = 1000, depth = -1;
    std::uint64_t seed = 1;
  } vs_a;
  auto* c_vs = app.add_subcommand("verify-sample", "check the single-hit bound of a sample set");
  c_vs->add_option("--sample", vs_a.sample, "sample set JSON, inline or @file")->required();
  c_vs->add_option("--t", vs_a.t, "single translate (skips the random sweep)");
  c_vs->add_option("--count", vs_a.count, "number of random translates");
  c_vs->add_option("--seed", vs_a.seed, "sweep seed");
  c_vs->add_option("--depth", vs_a.depth, "cover depth (default: the sample's own depth)");
  c_vs->add_option("--out", vs_a.out_path, "write the report here instead of stdout");
  c_vs->callback([&] {
    SampleSet x = SampleSet::from_json_text(arg_text(vs_a.sample));
    int depth = vs_a.depth >= 0 ? vs_a.depth : x.depth;
    if (!vs_a.t.empty()) {
      Rat t = parse_rat(vs_a.t);
      int hits = verify_single_hit(x, t, depth);
      njson payload;
      payload["t"] = rat_str(t);
      payload["depth"] = depth;
      payload["hits"] = hits;
      payload["pass"] = hits <= 1;
      exit_code = emit("verify-sample", std::move(payload), vs_a.out_path, hits <= 1 ? 0 : 1);
      return;
    }
    SplitMix64 rng(vs_a.seed);
    int max_hits = 0, violations = 0;
    std::vector<std::string> violating;
    for (int i = 0; i < vs_a.count; ++i) {
      Rat t = rng.rat_between(Rat(-1), Rat(1), 2000000);
      int hits = verify_single_hit(x, t, depth);
      if (hits > max_hits) max_hits = hits;
      if (hits > 1) {
        ++violations;
        violating.push_back(rat_str(t));
      }
    }
    njson payload;
    payload["count"] = vs_a.count;
    payload["seed"] = vs_a.seed;
    payload["depth"] = depth;
    payload["points"] = x.points.size();
    payload["maxHits"] = max_hits;
    payload["violations"] = violations;
    payload["violating"] = violating;
    payload["pass"] = violations == 0;
    exit_code = emit("verify-sample", std::move(payload), vs_a.out_path,
                     violations == 0 ? 0 : 1);
  });

  // replay: re-validate a stored artifact and byte-compare its
  // re-serialization.
  struct {
    std::string artifact, out_path;
  } rp_a;
  auto* c_rp = app.add_subcommand("replay", "re-validate a stored artifact");
  c_rp->add_option("--artifact", rp_a.artifact, "artifact JSON, inline or @file")->required();
  c_rp->add_option("--out", rp_a.out_path, "write the report here instead of stdout");
  c_rp->callback([&] {
    std::string text = arg_text(rp_a.artifact);
    njson probe = njson::parse(text);
    std::string kind;
    std::string round_trip;
    njson validation;
    bool pass = false;
    if (probe.contains("rounds")) {
      kind = "fusion";
      FusionResult f = FusionResult::from_json_text(text);
      InvariantReport r = replay_fusion(f);
      validation = invariant_payload(r);
      pass = r.pass;
      round_trip = f.to_json_text();
    } else if (probe.contains("levels") && probe.contains("opens")) {
      kind = "membership-certificate";
      BnCertificate c = BnCertificate::from_json_text(text);
      InvariantReport r = validate_bn_certificate(c);
      validation = invariant_payload(r);
      pass = r.pass;
      round_trip = c.to_json_text();
    } else if (probe.contains("levels")) {
      kind = "scheme";
      CantorScheme s = CantorScheme::from_json_text(text);
      SchemeReport r = validate_scheme(s);
      validation = scheme_report_payload(r);
      pass = r.pass;
      round_trip = s.to_json_text();
    } else if (probe.contains("points")) {
      kind = "sample";
      SampleSet x = SampleSet::from_json_text(text);
      IntervalCover base = attractor_cover(x.kifs, x.depth);
      IntervalCover diff = minkowski(base, MinkOp::DIFF, base);
      InvariantReport r;
      InvariantCheck excl{"exclusion", true, ""};
      InvariantCheck pairs{"pairwise_differences", true, ""};
      InvariantCheck steps{"acceptance_steps", true, ""};
      for (const Rat& p : x.points)
        if (x.exclusion.contains(p)) {
          excl.pass = false;
          excl.detail = rat_str(p) + " lies in the exclusion cover";
          break;
        }
      for (std::size_t i = 0; i < x.points.size() && pairs.pass; ++i)
        for (std::size_t j = i + 1; j < x.points.size(); ++j) {
          Rat fwd = x.points[j] - x.points[i];
          Rat bwd = x.points[i] - x.points[j];
          if (diff.contains(fwd) || diff.contains(bwd)) {
            pairs.pass = false;
            pairs.detail = rat_str(x.points[i]) + " and " + rat_str(x.points[j]) +
                           " differ by a covered value";
            break;
          }
        }
      if (x.steps.size() != x.points.size()) {
        steps.pass = false;
        steps.detail = "step list length disagrees with the point list";
      } else {
        for (std::size_t i = 1; i < x.steps.size(); ++i)
          if (x.steps[i] <= x.steps[i - 1]) {
            steps.pass = false;
            steps.detail = "acceptance steps not strictly increasing at index " +
                           std::to_string(i);
            break;
          }
      }
      r.checks = {excl, pairs, steps};
      r.pass = excl.pass && pairs.pass && steps.pass;
      validation = invariant_payload(r);
      pass = r.pass;
      round_trip = x.to_json_text();
    } else {
      throw Error(errc::bad_input, "unrecognized artifact (expected a fusion log, membership "
                                   "certificate, scheme, or sample set)");
    }
    bool byte_identical = round_trip == text;
    njson payload;
    payload["kind"] = kind;
    payload["byteIdentical"] = byte_identical;
    payload["validation"] = validation;
    exit_code = emit("replay", std::move(payload), rp_a.out_path,
                     pass && byte_identical ? 0 : 1);
  });

  allow_overrides(app);

  std::string prog = "ekbench";
  std::vector<char*> argv;
  argv.push_back(prog.data());
  for (std::string& t : eff) argv.push_back(t.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace ekbench::cli
