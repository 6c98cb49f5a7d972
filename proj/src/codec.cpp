#include "ekbench/codec.hpp"

#include "ekbench/error.hpp"

namespace ekbench {

Rat to_real(const DigitString& s) {
  Rat sum(0);
  mpz_class fact(2);  // (m+3)! starting at m=0 -> 3! built below
  for (std::size_t m = 0; m < s.size(); ++m) {
    fact *= static_cast<long>(m) + 3;
    sum += Rat(s.at(m)) / Rat(fact);
  }
  sum.canonicalize();
  return sum;
}

Rat cylinder_tail(std::size_t length) {
  mpz_class fact(1);
  for (std::size_t i = 2; i <= length + 2; ++i) fact *= static_cast<long>(i);
  Rat out = Rat(1) / Rat(fact);
  out.canonicalize();
  return out;
}

FiniteSupportPoint::FiniteSupportPoint(DigitString s) : s_(std::move(s)) {
  std::size_t n = s_.size();
  while (n > 0 && s_.at(n - 1) == 0) --n;
  if (n != s_.size()) s_ = s_.prefix(n);
}

int FiniteSupportPoint::digit(std::size_t column) const {
  return column < s_.size() ? s_.at(column) : 0;
}

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw Error(errc::bad_input, "empty rational literal");
  std::size_t dot = text.find('.');
  try {
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      std::size_t frac = text.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument(text);
      mpz_class num(digits, 10);
      mpz_class den(1);
      for (std::size_t i = 0; i < frac; ++i) den *= 10;
      Rat out(num, den);
      out.canonicalize();
      return out;
    }
    Rat out(text, 10);
    if (out.get_den() == 0) throw std::invalid_argument(text);
    out.canonicalize();
    return out;
  } catch (const std::invalid_argument&) {
    throw Error(errc::bad_input, "bad rational literal '" + text + "'");
  }
}

std::string rat_str(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_floor(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return Rat(q);
}

double rat_double(const Rat& x) { return x.get_d(); }

}  // namespace ekbench
