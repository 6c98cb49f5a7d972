#include <doctest.h>

#include <vector>

#include "ekbench/error.hpp"
#include "ekbench/fatness.hpp"

using namespace ekbench;

namespace {

bool incomparable(const DigitString& a, const DigitString& b) {
  return !a.extends(b) && !b.extends(a);
}

void check_antichain(const FiniteFamily& picks) {
  const std::vector<DigitString>& v = picks.members();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) CHECK(incomparable(v[i], v[j]));
}

}  // namespace

TEST_CASE("full-tree extraction yields an antichain certified one width down") {
  ExtractResult r = extract_incomparable_full(DigitString{}, 8, 2, 1);
  CHECK(r.slalom_count == enumerate_slaloms(DigitString{}, 1, 1).size());
  CHECK(r.picks.size() == r.slalom_count);
  check_antichain(r.picks);
  CHECK(r.certificate.is_fat);
  CHECK(brute_force_is_fat(r.picks, 1, 1).is_fat);
  for (std::size_t i = 0; i + 1 < r.picks.size(); ++i)
    CHECK(r.picks.members()[i].size() != r.picks.members()[i + 1].size());
}

TEST_CASE("each pick escapes its slalom in canonical order") {
  std::vector<Slalom> slaloms = enumerate_slaloms(DigitString{}, 1, 1);
  ExtractResult r = extract_incomparable_full(DigitString{}, 8, 2, 1);
  std::vector<DigitString> sorted = r.picks.members();
  std::sort(sorted.begin(), sorted.end(), shortlex_less);
  REQUIRE(sorted.size() == slaloms.size());
  for (std::size_t i = 0; i < slaloms.size(); ++i) {
    CHECK(escapes(sorted[i], slaloms[i]));
    if (i > 0) CHECK(sorted[i].size() > sorted[i - 1].size());
  }
}

TEST_CASE("extraction from a materialized full tree matches the implicit one") {
  FiniteFamily f = full_product(DigitString{}, 1, 6);
  ExtractResult from_family = extract_incomparable(f, 2, 1);
  ExtractResult from_tree = extract_incomparable_full(DigitString{}, 6, 2, 1);
  CHECK(from_family.picks.members() == from_tree.picks.members());
  CHECK(from_family.slalom_count == from_tree.slalom_count);
}

TEST_CASE("extraction above a longer base") {
  DigitString base = DigitString::parse("[2,1]");
  ExtractResult r = extract_incomparable_full(base, 8, 2, 3);
  CHECK(r.slalom_count == enumerate_slaloms(base, 1, 3).size());
  check_antichain(r.picks);
  for (const DigitString& p : r.picks.members()) {
    CHECK(p.extends(base));
    CHECK(p.size() > base.size());
  }
  CHECK(r.certificate.is_fat);
  CHECK(brute_force_is_fat(r.picks, 1, 3).is_fat);
}

TEST_CASE("width-1 extraction asks only for the empty slalom") {
  ExtractResult r = extract_incomparable_full(DigitString{}, 3, 1, 2);
  CHECK(r.slalom_count == 1);
  CHECK(r.picks.size() == 1);
  CHECK(r.certificate.is_fat);
}

TEST_CASE("a too-shallow tree fails with the named slalom") {
  CHECK_THROWS_AS(extract_incomparable_full(DigitString{}, 2, 2, 1), Error);
  try {
    extract_incomparable_full(DigitString{}, 2, 2, 1);
  } catch (const Error& e) {
    CHECK(e.code() == errc::insufficient_fatness);
  }
  // A sparse family without long members fails the same way.
  FiniteFamily sparse(DigitString{}, {DigitString::parse("[0]"), DigitString::parse("[1]")});
  CHECK_THROWS_AS(extract_incomparable(sparse, 2, 1), Error);
}

TEST_CASE("invalid widths are rejected") {
  CHECK_THROWS_AS(extract_incomparable_full(DigitString{}, 4, 0, 1), Error);
}
