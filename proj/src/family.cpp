#include "ekbench/family.hpp"

#include <algorithm>

#include "ekbench/error.hpp"

namespace ekbench {

FiniteFamily::FiniteFamily(DigitString base, std::vector<DigitString> members)
    : base_(std::move(base)), members_(std::move(members)) {
  for (const auto& m : members_) {
    if (!m.extends(base_))
      throw Error(errc::bad_input, "family member " + m.str() + " does not extend base " + base_.str());
  }
  std::sort(members_.begin(), members_.end(), shortlex_less);
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool FiniteFamily::contains(const DigitString& t) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), t, shortlex_less);
  return it != members_.end() && *it == t;
}

std::size_t FiniteFamily::depth() const {
  std::size_t d = base_.size();
  for (const auto& m : members_) d = std::max(d, m.size());
  return d;
}

FiniteFamily FiniteFamily::without(const std::vector<DigitString>& removed) const {
  std::vector<DigitString> keep;
  keep.reserve(members_.size());
  for (const auto& m : members_) {
    if (std::find(removed.begin(), removed.end(), m) == removed.end()) keep.push_back(m);
  }
  return FiniteFamily(base_, std::move(keep));
}

FiniteFamily full_product(const DigitString& base, std::size_t min_len, std::size_t max_len) {
  std::vector<DigitString> out;
  min_len = std::max(min_len, base.size());
  auto rec = [&](auto&& self, const DigitString& cur) -> void {
    if (cur.size() >= min_len) out.push_back(cur);
    if (cur.size() >= max_len) return;
    for (int d = 0; d < alphabet_size(cur.size()); ++d) self(self, cur.extended(d));
  };
  rec(rec, base);
  return FiniteFamily(base, std::move(out));
}

}  // namespace ekbench
