#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ekbench/digit_string.hpp"
#include "ekbench/error.hpp"

using namespace ekbench;

namespace {

// All strings with length <= max_len, in no particular order.
std::vector<DigitString> all_strings(std::size_t max_len) {
  std::vector<DigitString> out{DigitString{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int d = 0; d < alphabet_size(len - 1); ++d) out.push_back(out[i].extended(d));
    begin = end;
  }
  return out;
}

// Definition of the parallel relation, written without the library helper.
bool parallel_by_definition(const DigitString& s, const DigitString& t) {
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i)
    if (s.at(i) + t.at(i) == static_cast<int>(i) + 2) return false;
  return true;
}

}  // namespace

TEST_CASE("column alphabets grow by one per column") {
  CHECK(alphabet_size(0) == 3);
  CHECK(alphabet_size(1) == 4);
  CHECK(alphabet_size(10) == 13);
}

TEST_CASE("construction rejects out-of-alphabet digits") {
  CHECK_NOTHROW(DigitString({2, 3, 4}));
  CHECK_THROWS_AS(DigitString({3}), Error);
  CHECK_THROWS_AS(DigitString({0, 4}), Error);
  CHECK_THROWS_AS(DigitString({-1}), Error);
}

TEST_CASE("parse and str round-trip") {
  for (const char* text : {"[]", "[0]", "[2,3]", "[1,0,4]"}) {
    DigitString s = DigitString::parse(text);
    CHECK(s.str() == text);
    CHECK(DigitString::parse(s.str()) == s);
  }
  CHECK(DigitString::parse("[]").empty());
  CHECK(DigitString::parse("[2,3]").at(1) == 3);
  CHECK_THROWS_AS(DigitString::parse("2,3"), Error);
  CHECK_THROWS_AS(DigitString::parse("[2,]"), Error);
  CHECK_THROWS_AS(DigitString::parse("[9]"), Error);
}

TEST_CASE("extends, extended and prefix agree") {
  DigitString s = DigitString::parse("[1,3]");
  CHECK(s.extends(s));
  CHECK(s.extends(DigitString{}));
  CHECK(s.extends(s.prefix(1)));
  CHECK_FALSE(s.prefix(1).extends(s));
  CHECK(s.extended(0) == DigitString::parse("[1,3,0]"));
  CHECK(s.extended(0).prefix(2) == s);
  CHECK_FALSE(DigitString::parse("[2]").extends(DigitString::parse("[1]")));
}

TEST_CASE("length cap enforced") {
  DigitString s;
  for (std::size_t i = 0; i < kMaxDigits; ++i) s = s.extended(0);
  CHECK(s.size() == kMaxDigits);
  CHECK_THROWS_AS(s.extended(0), Error);
}

TEST_CASE("default order is depth-first with prefixes first") {
  std::vector<DigitString> v = all_strings(2);
  std::sort(v.begin(), v.end());
  // A prefix sorts immediately before its own extensions.
  for (std::size_t i = 0; i + 1 < v.size(); ++i) CHECK(v[i] < v[i + 1]);
  CHECK(v.front() == DigitString{});
  CHECK(v[1] == DigitString::parse("[0]"));
  CHECK(v[2] == DigitString::parse("[0,0]"));
  // Extension beats sibling with a larger digit.
  CHECK(DigitString::parse("[0,3]") < DigitString::parse("[1]"));
}

TEST_CASE("shortlex orders by length then lexicographically") {
  CHECK(shortlex_less(DigitString::parse("[2]"), DigitString::parse("[0,0]")));
  CHECK(shortlex_less(DigitString::parse("[0,1]"), DigitString::parse("[0,2]")));
  CHECK_FALSE(shortlex_less(DigitString::parse("[0,2]"), DigitString::parse("[0,2]")));
  std::vector<DigitString> v = all_strings(2);
  std::sort(v.begin(), v.end(), shortlex_less);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    CHECK(v[i].size() <= v[i + 1].size());
    CHECK(v[i] != v[i + 1]);
  }
}

TEST_CASE("parallel matches its definition on every short pair") {
  std::vector<DigitString> v = all_strings(2);
  for (const DigitString& s : v)
    for (const DigitString& t : v) {
      CHECK(parallel(s, t) == parallel_by_definition(s, t));
      CHECK(parallel(s, t) == parallel(t, s));
    }
  // The empty string is parallel to everything.
  for (const DigitString& t : v) CHECK(parallel(DigitString{}, t));
}

TEST_CASE("parallel golden cases") {
  CHECK_FALSE(parallel(DigitString::parse("[2]"), DigitString::parse("[0]")));
  CHECK_FALSE(parallel(DigitString::parse("[0,3]"), DigitString::parse("[1,0]")));
  CHECK(parallel(DigitString::parse("[0,3]"), DigitString::parse("[1,1]")));
  CHECK(parallel(DigitString::parse("[1]"), DigitString::parse("[0,3]")));
}

TEST_CASE("cek_prefix forbids the top digit of each column") {
  CHECK(cek_prefix(DigitString{}));
  CHECK(cek_prefix(DigitString::parse("[1,2]")));
  CHECK_FALSE(cek_prefix(DigitString::parse("[2]")));
  CHECK_FALSE(cek_prefix(DigitString::parse("[0,3]")));
  int violations = 0;
  for (const DigitString& s : all_strings(2)) {
    bool expect = true;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.at(i) == static_cast<int>(i) + 2) expect = false;
    CHECK(cek_prefix(s) == expect);
    if (!expect) ++violations;
  }
  CHECK(violations > 0);
}

TEST_CASE("parallelism of equal-length strings is the mod-sum witness test") {
  std::vector<DigitString> v = all_strings(2);
  for (const DigitString& s : v)
    for (const DigitString& t : v) {
      if (s.size() != t.size()) {
        CHECK_THROWS_AS(parallel_iff_cek(s, t), Error);
        continue;
      }
      ParallelWitness w = parallel_iff_cek(s, t);
      CHECK(w.is_parallel == parallel(s, t));
      CHECK(w.witness.size() == s.size());
      for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(w.witness.at(i) == (s.at(i) + t.at(i)) % (static_cast<int>(i) + 3));
      CHECK(w.is_parallel == cek_prefix(w.witness));
    }
}

TEST_CASE("length mismatch error carries the right code") {
  try {
    parallel_iff_cek(DigitString::parse("[0]"), DigitString::parse("[0,0]"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::length_mismatch);
  }
}
