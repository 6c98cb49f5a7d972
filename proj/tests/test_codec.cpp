#include <doctest.h>

#include <set>
#include <vector>

#include "ekbench/codec.hpp"
#include "ekbench/digit_string.hpp"

using namespace ekbench;

namespace {

Rat factorial(unsigned n) {
  Rat f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// Independent encoding: digit-by-digit factorial sum with its own
// arithmetic.
Rat encode_by_hand(const DigitString& s) {
  Rat total = 0;
  for (std::size_t m = 0; m < s.size(); ++m)
    total += Rat(s.at(m)) / factorial(static_cast<unsigned>(m) + 3);
  return total;
}

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

}  // namespace

TEST_CASE("encoding golden values") {
  CHECK(to_real(DigitString{}) == Rat(0));
  CHECK(to_real(DigitString::parse("[1]")) == Rat(1, 6));
  CHECK(to_real(DigitString::parse("[2]")) == Rat(1, 3));
  CHECK(to_real(DigitString::parse("[1,3]")) == Rat(7, 24));
  CHECK(to_real(DigitString::parse("[0,0,4]")) == Rat(4) / factorial(5));
}

TEST_CASE("encoding matches the independent factorial sum") {
  for (const DigitString& s : all_strings(3)) CHECK(to_real(s) == encode_by_hand(s));
}

TEST_CASE("tail bound golden values and telescoping identity") {
  CHECK(cylinder_tail(0) == Rat(1, 2));
  CHECK(cylinder_tail(1) == Rat(1, 6));
  CHECK(cylinder_tail(2) == Rat(1, 24));
  // (m+2)/(m+3)! telescopes as 1/(m+2)! - 1/(m+3)!, so the partial sum
  // from L to M is 1/(L+2)! - 1/(M+3)!.
  for (unsigned l = 0; l <= 4; ++l) {
    Rat partial = 0;
    unsigned m_top = l + 20;
    for (unsigned m = l; m <= m_top; ++m) partial += Rat(m + 2) / factorial(m + 3);
    CHECK(partial == cylinder_tail(l) - Rat(1) / factorial(m_top + 3));
    CHECK(cylinder_tail(l) == Rat(1) / factorial(l + 2));
  }
}

TEST_CASE("every extension encodes inside the prefix cylinder") {
  for (const DigitString& s : all_strings(2)) {
    Rat lo = to_real(s);
    Rat hi = lo + cylinder_tail(s.size());
    for (int d = 0; d < alphabet_size(s.size()); ++d) {
      DigitString e = s.extended(d);
      CHECK(to_real(e) >= lo);
      CHECK(to_real(e) + cylinder_tail(e.size()) <= hi);
    }
  }
}

TEST_CASE("encoding separates strings of equal length") {
  for (std::size_t len : {1u, 2u, 3u}) {
    std::set<Rat> seen;
    std::size_t count = 0;
    for (const DigitString& s : all_strings(len)) {
      if (s.size() != len) continue;
      seen.insert(to_real(s));
      ++count;
    }
    CHECK(seen.size() == count);
  }
}

TEST_CASE("finite-support points strip trailing zeros without moving") {
  FiniteSupportPoint p(DigitString::parse("[1,0,0]"));
  CHECK(p.canonical() == DigitString::parse("[1]"));
  CHECK(p.value() == Rat(1, 6));
  CHECK(p.digit(0) == 1);
  CHECK(p.digit(1) == 0);
  CHECK(p.digit(40) == 0);

  FiniteSupportPoint q(DigitString::parse("[0,2,0,1]"));
  CHECK(q.canonical() == DigitString::parse("[0,2,0,1]"));
  CHECK(q.value() == to_real(DigitString::parse("[0,2,0,1]")));
  CHECK(FiniteSupportPoint(DigitString{}).value() == Rat(0));
}
