#include "ekbench/digit_string.hpp"

#include <algorithm>
#include <sstream>

#include "ekbench/error.hpp"

namespace ekbench {

DigitString::DigitString(std::vector<int> digits) : digits_(std::move(digits)) {
  if (digits_.size() > kMaxDigits)
    throw Error(errc::bad_input, "digit string longer than " + std::to_string(kMaxDigits));
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] < 0 || digits_[i] >= alphabet_size(i))
      throw Error(errc::bad_input, "digit " + std::to_string(digits_[i]) +
                                       " out of range at column " + std::to_string(i));
  }
}

DigitString DigitString::parse(const std::string& text) {
  std::size_t a = text.find('[');
  std::size_t b = text.rfind(']');
  if (a == std::string::npos || b == std::string::npos || b < a)
    throw Error(errc::bad_input, "expected bracketed digit string, got '" + text + "'");
  std::string body = text.substr(a + 1, b - a - 1);
  std::vector<int> digits;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t p = item.find_first_not_of(" \t");
    if (p == std::string::npos) continue;
    std::size_t q = item.find_last_not_of(" \t");
    digits.push_back(std::stoi(item.substr(p, q - p + 1)));
  }
  return DigitString(std::move(digits));
}

bool DigitString::extends(const DigitString& s) const {
  if (s.size() > size()) return false;
  return std::equal(s.digits_.begin(), s.digits_.end(), digits_.begin());
}

DigitString DigitString::extended(int digit) const {
  std::vector<int> d = digits_;
  d.push_back(digit);
  return DigitString(std::move(d));
}

DigitString DigitString::prefix(std::size_t length) const {
  if (length > size()) throw Error(errc::bad_input, "prefix length exceeds string length");
  return DigitString(std::vector<int>(digits_.begin(), digits_.begin() + length));
}

std::string DigitString::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits_[i]);
  }
  out += ']';
  return out;
}

std::strong_ordering DigitString::operator<=>(const DigitString& other) const {
  std::size_t n = std::min(size(), other.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (digits_[i] != other.digits_[i]) return digits_[i] <=> other.digits_[i];
  }
  return size() <=> other.size();
}

bool shortlex_less(const DigitString& a, const DigitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.digits() < b.digits();
}

bool parallel(const DigitString& s, const DigitString& t) {
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (s.at(i) + t.at(i) == static_cast<int>(i) + 2) return false;
  }
  return true;
}

bool cek_prefix(const DigitString& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.at(i) == static_cast<int>(i) + 2) return false;
  }
  return true;
}

ParallelWitness parallel_iff_cek(const DigitString& s, const DigitString& t) {
  if (s.size() != t.size())
    throw Error(errc::length_mismatch, "parallel_iff_cek needs equal lengths, got " +
                                           std::to_string(s.size()) + " and " +
                                           std::to_string(t.size()));
  std::vector<int> w(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    w[i] = (s.at(i) + t.at(i)) % alphabet_size(i);
  ParallelWitness out;
  out.witness = DigitString(std::move(w));
  out.is_parallel = cek_prefix(out.witness);
  return out;
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::length_mismatch: return "LENGTH_MISMATCH";
    case errc::insufficient_fatness: return "INSUFFICIENT_FATNESS";
    case errc::base_not_parallel: return "BASE_NOT_PARALLEL";
    case errc::node_absent: return "NODE_ABSENT";
    case errc::depth_exhausted: return "DEPTH_EXHAUSTED";
    case errc::oracle_stall: return "ORACLE_STALL";
    case errc::schedule_empty: return "SCHEDULE_EMPTY";
    case errc::no_fat_node: return "NO_FAT_NODE";
    case errc::dim_too_large: return "DIM_TOO_LARGE";
    case errc::overlapping_ifs: return "OVERLAPPING_IFS";
    case errc::resolution_exhausted: return "RESOLUTION_EXHAUSTED";
    case errc::budget_exceeded: return "BUDGET_EXCEEDED";
    case errc::grid_exhausted: return "GRID_EXHAUSTED";
    case errc::bad_input: return "BAD_INPUT";
  }
  return "UNKNOWN";
}

}  // namespace ekbench
