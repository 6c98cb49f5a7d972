#include "ekbench/slalom.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "ekbench/error.hpp"

namespace ekbench {

namespace {

const std::vector<int> kNoDigits;

// Smallest y > x with popcount(y) <= k and y < 2^width; nullopt if none.
// Adding the low bit never skips a valid mask: every value in
// [x, x + lowbit(x)) keeps all of x's set bits and only adds lower ones.
std::optional<std::uint64_t> next_mask(std::uint64_t x, int width, int k) {
  const std::uint64_t limit = (width >= 64) ? ~0ull : (1ull << width);
  if (k <= 0) return std::nullopt;
  ++x;
  while (x < limit && std::popcount(x) > k) x += x & (~x + 1);
  if (x >= limit) return std::nullopt;
  return x;
}

std::vector<int> mask_to_digits(std::uint64_t m) {
  std::vector<int> out;
  for (int d = 0; m; ++d, m >>= 1)
    if (m & 1) out.push_back(d);
  return out;
}

}  // namespace

Slalom::Slalom(DigitString base, const std::map<int, std::vector<int>>& columns)
    : base_(std::move(base)) {
  int max_col = -1;
  for (const auto& [col, digits] : columns) {
    if (col < static_cast<int>(base_.size()))
      throw Error(errc::bad_input,
                  "slalom column " + std::to_string(col) + " below base length");
    bool any = false;
    for (int d : digits)
      if (d >= 0 && d < alphabet_size(col)) any = true;
    if (any && col > max_col) max_col = col;
  }
  if (max_col < 0) return;
  cols_.resize(max_col + 1 - base_.size());
  for (const auto& [col, digits] : columns) {
    if (col > max_col) continue;
    std::vector<int>& dst = cols_[col - base_.size()];
    for (int d : digits)
      if (d >= 0 && d < alphabet_size(col)) dst.push_back(d);
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
  }
}

int Slalom::width() const {
  std::size_t w = 0;
  for (const auto& c : cols_) w = std::max(w, c.size());
  return static_cast<int>(w);
}

const std::vector<int>& Slalom::at(std::size_t column) const {
  if (column < base_.size() || column >= height()) return kNoDigits;
  return cols_[column - base_.size()];
}

bool Slalom::blocks(std::size_t column, int digit) const {
  const auto& c = at(column);
  return std::binary_search(c.begin(), c.end(), digit);
}

Slalom Slalom::augmented(std::size_t column, int digit) const {
  if (column < base_.size() || digit < 0 || digit >= alphabet_size(column)) return *this;
  Slalom out = *this;
  if (column >= out.height()) out.cols_.resize(column + 1 - base_.size());
  std::vector<int>& c = out.cols_[column - base_.size()];
  if (!std::binary_search(c.begin(), c.end(), digit)) {
    c.insert(std::upper_bound(c.begin(), c.end(), digit), digit);
  }
  return out;
}

std::string Slalom::str() const {
  std::string out = base_.str();
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (cols_[j].empty()) continue;
    out += ';' + std::to_string(base_.size() + j) + ":{";
    for (std::size_t i = 0; i < cols_[j].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(cols_[j][i]);
    }
    out += '}';
  }
  out += ";ht=" + std::to_string(height());
  return out;
}

bool escapes(const DigitString& t, const Slalom& s) {
  if (!t.extends(s.base())) return false;
  if (t.size() < s.height()) return false;
  for (std::size_t i = s.base_length(); i < t.size(); ++i)
    if (s.blocks(i, t.at(i))) return false;
  return true;
}

std::uint64_t column_mask(const Slalom& s, std::size_t column) {
  std::uint64_t m = 0;
  for (int d : s.at(column)) m |= 1ull << d;
  return m;
}

bool canonical_less(const Slalom& a, const Slalom& b) {
  assert(a.base() == b.base());
  if (a.height() != b.height()) return a.height() < b.height();
  for (std::size_t i = a.base_length(); i < a.height(); ++i) {
    std::uint64_t ma = column_mask(a, i), mb = column_mask(b, i);
    if (ma != mb) return ma < mb;
  }
  return false;
}

std::vector<Slalom> enumerate_slaloms(const DigitString& base, int k, std::size_t max_height) {
  if (max_height > 0 && alphabet_size(max_height - 1) > 63)
    throw Error(errc::bad_input, "slalom enumeration capped at column alphabet 63");
  std::vector<Slalom> out;
  if (max_height >= base.size()) out.emplace_back(base);  // the empty slalom, ht = |base|
  std::vector<std::uint64_t> masks;
  // Exact-height layer h: columns |base|..h-1, last column nonempty,
  // lexicographic over mask tuples (leftmost column most significant).
  for (std::size_t h = base.size() + 1; h <= max_height; ++h) {
    masks.assign(h - base.size(), 0);
    auto emit = [&]() {
      std::map<int, std::vector<int>> cols;
      for (std::size_t j = 0; j < masks.size(); ++j)
        if (masks[j]) cols[base.size() + j] = mask_to_digits(masks[j]);
      out.emplace_back(base, cols);
    };
    auto rec = [&](auto&& self, std::size_t j) -> void {
      const bool last = (j + 1 == masks.size());
      if (j == masks.size()) {
        emit();
        return;
      }
      int width = alphabet_size(base.size() + j);
      std::optional<std::uint64_t> m = last ? next_mask(0, width, k) : std::optional<std::uint64_t>(0);
      while (m) {
        masks[j] = *m;
        self(self, j + 1);
        m = next_mask(*m, width, k);
      }
      masks[j] = 0;
    };
    if (k >= 1) rec(rec, 0);
  }
  return out;
}

SlalomStream::SlalomStream(DigitString base, int k) : base_(std::move(base)), k_(k) {}

void SlalomStream::start_layer(std::size_t h) {
  height_ = h;
  if (alphabet_size(h - 1) > 63)
    throw Error(errc::bad_input, "slalom stream exceeded column alphabet 63");
  masks_.assign(h - base_.size(), 0);
  masks_.back() = 1;  // {0}: the least nonempty mask
}

bool SlalomStream::advance_odometer() {
  // Rightmost column varies fastest; the last column stays nonempty.
  for (int j = static_cast<int>(masks_.size()) - 1; j >= 0; --j) {
    int width = alphabet_size(base_.size() + j);
    auto m = next_mask(masks_[j], width, k_);
    if (m) {
      masks_[j] = *m;
      for (std::size_t i = j + 1; i < masks_.size(); ++i)
        masks_[i] = (i + 1 == masks_.size()) ? 1 : 0;
      return true;
    }
  }
  return false;
}

Slalom SlalomStream::next() {
  if (!empty_emitted_) {
    empty_emitted_ = true;
    if (k_ >= 1) start_layer(base_.size() + 1);
    return Slalom(base_);
  }
  if (k_ < 1) throw Error(errc::bad_input, "width-0 slalom stream has a single element");
  std::map<int, std::vector<int>> cols;
  for (std::size_t j = 0; j < masks_.size(); ++j)
    if (masks_[j]) cols[base_.size() + j] = mask_to_digits(masks_[j]);
  Slalom out(base_, cols);
  if (!advance_odometer()) start_layer(height_ + 1);
  return out;
}

std::uint64_t slalom_count(std::size_t base_length, int k, std::size_t max_height,
                           std::uint64_t cap) {
  std::uint64_t total = 1;
  std::uint64_t prefix = 1;  // product of column set counts below the last column
  for (std::size_t h = base_length + 1; h <= max_height; ++h) {
    int a = alphabet_size(h - 1);
    std::uint64_t sets = 1;  // subsets of the column alphabet of size <= k
    std::uint64_t binom = 1;
    for (int j = 1; j <= k && j <= a; ++j) {
      binom = binom * static_cast<std::uint64_t>(a - j + 1) / static_cast<std::uint64_t>(j);
      sets += binom;
      if (sets > cap) return cap + 1;
    }
    total += prefix * (sets - 1);
    if (total > cap) return cap + 1;
    prefix *= sets;
    if (prefix > cap) prefix = cap + 1;
  }
  return total;
}

}  // namespace ekbench
