#include "ekbench/dense_open.hpp"

#include <deque>

#include "ekbench/error.hpp"

namespace ekbench {

DenseOpenSpec::DenseOpenSpec(std::vector<int> append, std::map<DigitString, DigitString> exceptions)
    : append_(std::move(append)), exceptions_(std::move(exceptions)) {
  for (int d : append_)
    if (d < 0 || d > 2)
      throw Error(errc::bad_input, "default append digits must lie in {0,1,2}");
  for (const auto& [sigma, image] : exceptions_)
    if (!image.extends(sigma))
      throw Error(errc::bad_input,
                  "exception image " + image.str() + " does not extend " + sigma.str());
}

DigitString DenseOpenSpec::apply(const DigitString& sigma) const {
  auto it = exceptions_.find(sigma);
  if (it != exceptions_.end()) return it->second;
  DigitString out = sigma;
  for (int d : append_) out = out.extended(d);
  return out;
}

std::string DenseOpenSpec::str() const {
  std::string out = "append=";
  for (std::size_t i = 0; i < append_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(append_[i]);
  }
  for (const auto& [sigma, image] : exceptions_)
    out += "|" + sigma.str() + "->" + image.str();
  return out;
}

DenseOpenSpec DenseOpenSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = text.find('|', start);
    parts.push_back(text.substr(start, bar == std::string::npos ? bar : bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (parts.empty() || parts[0].rfind("append=", 0) != 0)
    throw Error(errc::bad_input, "dense open spec must start with append=");
  std::vector<int> append;
  std::string digits = parts[0].substr(7);
  std::size_t pos = 0;
  while (pos < digits.size()) {
    std::size_t comma = digits.find(',', pos);
    std::string piece = digits.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!piece.empty()) append.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  std::map<DigitString, DigitString> exceptions;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::size_t arrow = parts[i].find("->");
    if (arrow == std::string::npos)
      throw Error(errc::bad_input, "dense open exception needs ->: " + parts[i]);
    exceptions.emplace(DigitString::parse(parts[i].substr(0, arrow)),
                       DigitString::parse(parts[i].substr(arrow + 2)));
  }
  return DenseOpenSpec(std::move(append), std::move(exceptions));
}

const char* open_verdict_name(OpenVerdict v) {
  return v == OpenVerdict::CONTAINED ? "CONTAINED" : "UNDECIDED_AT_DEPTH";
}

OpenVerdict dense_open_member(const DenseOpenSpec& f, const DigitString& s) {
  for (std::size_t j = 0; j <= s.size(); ++j)
    if (s.extends(f.apply(s.prefix(j)))) return OpenVerdict::CONTAINED;
  return OpenVerdict::UNDECIDED_AT_DEPTH;
}

std::optional<DigitString> extend_into(const DenseOpenSpec& f, const DigitString& s,
                                       const std::function<bool(const DigitString&)>& admit,
                                       std::size_t max_extra) {
  std::deque<DigitString> queue{s};
  std::size_t budget = 200000;  // caps the breadth-first frontier when admit prunes hard
  while (!queue.empty()) {
    if (budget-- == 0) return std::nullopt;
    DigitString cur = std::move(queue.front());
    queue.pop_front();
    if (dense_open_member(f, cur) == OpenVerdict::CONTAINED) return cur;
    if (cur.size() >= s.size() + max_extra || cur.size() >= kMaxDigits) continue;
    for (int d = 0; d < alphabet_size(cur.size()); ++d) {
      DigitString ext = cur.extended(d);
      if (admit && !admit(ext)) continue;
      queue.push_back(std::move(ext));
    }
  }
  return std::nullopt;
}

}  // namespace ekbench
