#include <doctest.h>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "ekbench/bn_certificate.hpp"
#include "ekbench/error.hpp"
#include "ekbench/fatness.hpp"
#include "ekbench/fusion.hpp"

using namespace ekbench;

namespace {

DigitString ds(const std::string& text) { return DigitString::parse(text); }

std::vector<DenseOpenSpec> three_opens() {
  return {DenseOpenSpec({0}), DenseOpenSpec({1}), DenseOpenSpec({0, 0})};
}

const InvariantCheck* find_check(const InvariantReport& r, const std::string& name) {
  for (const InvariantCheck& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

void expect_failed_check(const FusionResult& f, const std::string& name) {
  InvariantReport rep = replay_fusion(f);
  CHECK_FALSE(rep.pass);
  const InvariantCheck* c = find_check(rep, name);
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
}

}  // namespace

TEST_CASE("the visit schedule walks the diagonals in order") {
  std::vector<std::pair<int, int>> want;
  for (int d = 0; d <= 23; ++d)
    for (int m = 0; m <= d; ++m) want.push_back({m, d - m});
  REQUIRE(want.size() == 300);
  for (int n = 1; n <= 300; ++n) {
    std::pair<int, int> visit = visit_of_round(n);
    CHECK(visit == want[n - 1]);
    CHECK(round_of_visit(visit.first, visit.second) == n);
  }
  CHECK_THROWS_AS(visit_of_round(0), Error);
}

TEST_CASE("mode names parse and the widths offset by mode") {
  CHECK(parse_fusion_mode("plain") == FusionMode::PLAIN);
  CHECK(parse_fusion_mode("PLAIN") == FusionMode::PLAIN);
  CHECK(parse_fusion_mode("parallel-avoiding") == FusionMode::PARALLEL_AVOIDING);
  CHECK(parse_fusion_mode("parallel_avoiding") == FusionMode::PARALLEL_AVOIDING);
  CHECK(parse_fusion_mode(fusion_mode_name(FusionMode::PLAIN)) == FusionMode::PLAIN);
  CHECK(parse_fusion_mode(fusion_mode_name(FusionMode::PARALLEL_AVOIDING)) ==
        FusionMode::PARALLEL_AVOIDING);
  CHECK_THROWS_AS(parse_fusion_mode("sideways"), Error);
  CHECK(mode_width(FusionMode::PLAIN, 0) == 1);
  CHECK(mode_width(FusionMode::PLAIN, 4) == 5);
  CHECK(mode_width(FusionMode::PARALLEL_AVOIDING, 0) == 2);
  CHECK(mode_width(FusionMode::PARALLEL_AVOIDING, 4) == 6);
}

TEST_CASE("a plain run replays clean") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 30);
  CHECK(f.rounds.size() == 30);
  CHECK(f.r == f.rounds.back().r);
  CHECK(f.p_prime.root() == f.rounds[0].t);
  InvariantReport rep = replay_fusion(f);
  CHECK(rep.pass);
  for (const InvariantCheck& c : rep.checks) CHECK(c.pass);
}

TEST_CASE("an avoiding run replays clean and keeps r parallel") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PARALLEL_AVOIDING, 30);
  InvariantReport rep = replay_fusion(f);
  CHECK(rep.pass);
  for (const RoundRecord& rec : f.rounds) CHECK(parallel(f.r, rec.t));
  const InvariantCheck* lr = find_check(rep, "r_parallel_nodes");
  REQUIRE(lr != nullptr);
  CHECK(lr->pass);
}

TEST_CASE("fusion runs are deterministic and round-trip through json") {
  FusionResult a = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 20);
  FusionResult b = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 20);
  CHECK(a.to_json_text() == b.to_json_text());
  FusionResult back = FusionResult::from_json_text(a.to_json_text());
  CHECK(back.to_json_text() == a.to_json_text());
  CHECK(replay_fusion(back).pass);
}

TEST_CASE("replay rejects a pick outside the recorded successor set") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 20);
  int n = f.steps - 1;
  f.rounds[n].s = f.rounds[f.rounds[n].m].t;  // the visited node itself
  expect_failed_check(f, "pick_from_original_succ");
}

TEST_CASE("replay rejects a shrinking point prefix") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 20);
  int n = f.steps - 1;
  const DigitString prev = f.rounds[n - 1].r;
  REQUIRE(prev.size() >= 1);
  f.rounds[n].r = prev.prefix(prev.size() - 1);  // strictly below the previous prefix
  f.r = f.rounds[n].r;                           // keep the final-r clause out of the way
  expect_failed_check(f, "r_monotone");
}

TEST_CASE("replay rejects a swapped slalom text") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 20);
  f.rounds[1].slalom += "x";
  expect_failed_check(f, "scheduled_slalom");
}

TEST_CASE("replay rejects a forged length-rule flag") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PARALLEL_AVOIDING, 30);
  int forged = -1;
  for (int n = 1; n < f.steps; ++n)
    if (!f.rounds[n].length_rule_met) {
      forged = n;
      break;
    }
  REQUIRE(forged > 0);  // short r-first searches fail often enough
  f.rounds[forged].length_rule_met = true;
  expect_failed_check(f, "length_rule_logged");
}

TEST_CASE("replay notices a gutted graft") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 20);
  int n = f.steps - 1;
  const DigitString t = f.rounds[n].t;
  f.rounds[n].q = TreeCondition(t, {t});
  expect_failed_check(f, "succ_fat_at_width");
}

TEST_CASE("replay pins the final prefix and the adjoined node set") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 20);
  FusionResult g = f;
  g.r = g.r.extended(0);
  expect_failed_check(g, "final_r");

  DigitString extra = ds("[2,3,4,5,6]");
  REQUIRE_FALSE(f.p_prime.contains(extra));
  std::vector<DigitString> nodes = f.p_prime.nodes();
  nodes.push_back(extra);
  f.p_prime = TreeCondition(f.p_prime.root(), std::move(nodes));
  expect_failed_check(f, "p_prime_nodes");
}

TEST_CASE("fusion rejects malformed inputs") {
  TreeCondition p = build_condition(4);
  try {
    fuse(p, {}, FusionMode::PLAIN, 5);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::schedule_empty);
  }
  CHECK_THROWS_AS(fuse(p, three_opens(), FusionMode::PLAIN, 0), Error);
  TreeCondition liar = build_condition(2);
  liar.annotate(liar.root(), {1, 5});
  CHECK_THROWS_AS(fuse(liar, three_opens(), FusionMode::PLAIN, 3), Error);
}

TEST_CASE("the engine vets oracle output") {
  TreeCondition p = build_condition(2);
  StepOracle no_cert = [](const StepInput& in) -> StepOutput {
    TreeCondition q(in.restricted.root(), {in.restricted.root()});
    return {q, in.r};
  };
  try {
    fuse(p, three_opens(), FusionMode::PLAIN, 2, no_cert);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::oracle_stall);
  }

  TreeCondition shifted = p.restrict_at(ds("[0]"));
  StepOracle stray_root = [](const StepInput& in) -> StepOutput {
    TreeCondition q(ds("[1]"), {ds("[1]")});
    q.annotate(ds("[1]"), {99, 1});
    return {q, in.r};
  };
  CHECK_THROWS_AS(fuse(shifted, three_opens(), FusionMode::PLAIN, 1, stray_root), Error);

  StepOracle delegate = default_graft_oracle(FusionMode::PLAIN, 5);
  StepOracle shrinker = [delegate](const StepInput& in) -> StepOutput {
    StepOutput o = delegate(in);
    if (in.round >= 1) o.r_prime = DigitString();
    return o;
  };
  try {
    fuse(p, three_opens(), FusionMode::PLAIN, 3, shrinker);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::bad_input);
  }

  StepOracle childless = [](const StepInput& in) -> StepOutput {
    TreeCondition q(in.restricted.root(), {in.restricted.root()});
    q.annotate(in.restricted.root(), {99, in.restricted.root().size()});
    return {q, in.r};
  };
  try {
    fuse(p, three_opens(), FusionMode::PLAIN, 3, childless);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::oracle_stall);  // round 1 finds no fresh successor
  }
}

TEST_CASE("the default oracle supplies an equal-length certified antichain") {
  TreeCondition base = build_condition(4);
  StepInput in{base.restrict_at(ds("[0]")), DigitString(), 1};

  StepOutput plain = default_graft_oracle(FusionMode::PLAIN, 30)(in);
  CHECK(plain.q.root() == ds("[0]"));
  CHECK(plain.r_prime == in.r);
  std::vector<DigitString> picks = plain.q.succ(ds("[0]"));
  REQUIRE(!picks.empty());
  for (const DigitString& x : picks) CHECK(x.size() == picks[0].size());
  for (std::size_t i = 0; i < picks.size(); ++i)
    for (std::size_t j = 0; j < picks.size(); ++j)
      if (i != j) CHECK_FALSE(picks[i].extends(picks[j]));
  std::optional<NodeAnnotation> ann = plain.q.annotation(ds("[0]"));
  REQUIRE(ann.has_value());
  CHECK(ann->width == mode_width(FusionMode::PLAIN, 1));
  CHECK(is_fat(FiniteFamily(ds("[0]"), picks), ann->width, ann->rich_height).is_fat);

  StepOutput avoid = default_graft_oracle(FusionMode::PARALLEL_AVOIDING, 30)(in);
  std::vector<DigitString> apicks = avoid.q.succ(ds("[0]"));
  REQUIRE(!apicks.empty());
  CHECK(avoid.r_prime.size() >= apicks[0].size());
  for (const DigitString& x : avoid.q.nodes()) CHECK(parallel(x, avoid.r_prime));
  std::optional<NodeAnnotation> aann = avoid.q.annotation(ds("[0]"));
  REQUIRE(aann.has_value());
  CHECK(aann->width == mode_width(FusionMode::PARALLEL_AVOIDING, 1));
}

TEST_CASE("certificates extract from a run and validate") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 25);
  BnCertificate c = extract_bn_certificate(f, 2);
  REQUIRE(c.levels.size() == 3);
  CHECK(c.levels[0].members.size() == 1);
  CHECK(c.r == f.r);
  InvariantReport rep = validate_bn_certificate(c);
  CHECK(rep.pass);
  BnCertificate back = BnCertificate::from_json_text(c.to_json_text());
  CHECK(back == c);
  CHECK_THROWS_AS(extract_bn_certificate(f, 25), Error);  // more levels than rounds
  CHECK_THROWS_AS(extract_bn_certificate(f, 4), Error);   // no generation-4 nodes yet
}

TEST_CASE("certificate validation rejects clause-by-clause tampering") {
  FusionResult f = fuse(build_condition(6), three_opens(), FusionMode::PLAIN, 25);
  const BnCertificate c = extract_bn_certificate(f, 2);
  auto failed = [](const BnCertificate& bad, const std::string& name) {
    InvariantReport rep = validate_bn_certificate(bad);
    CHECK_FALSE(rep.pass);
    for (const InvariantCheck& chk : rep.checks)
      if (chk.name == name) {
        CHECK_FALSE(chk.pass);
        return;
      }
    CHECK(false);  // named clause missing from the report
  };

  BnCertificate wide = c;
  wide.levels[0].members.push_back(c.levels[1].members[0]);
  failed(wide, "clause1_base_singleton");

  BnCertificate nested = c;
  nested.levels[1].members.push_back(c.levels[1].members[0].extended(0));
  failed(nested, "clause2_antichain");

  BnCertificate orphan = c;
  orphan.levels[1].members.push_back(c.levels[0].members[0]);
  failed(orphan, "clause3_linked");

  BnCertificate low_phi = c;
  low_phi.levels[1].phi[c.levels[1].members[0]] = 1;
  failed(low_phi, "clause4_phi_exceeds_level");

  const DigitString root = c.levels[0].members[0];
  REQUIRE(c.levels[0].height.at(root) >= 1);
  BnCertificate greedy = c;
  greedy.levels[0].phi[root] = 50;  // full-column blocks kill any finite family
  failed(greedy, "clause6_children_fat");

  BnCertificate blind = c;
  blind.levels[0].witness_k = c.r.size() + 1;
  failed(blind, "clause7_open_witness");
}
