#include "junta/point.hpp"

#include <algorithm>
#include <bit>
#include <iterator>

#include "junta/errors.hpp"

namespace junta {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

}  // namespace

Point::Point(std::size_t n) : n_(n), words_(word_count(n), 0) {}

Point Point::from_string(std::string_view bits) {
  Point p(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      p.set(i, true);
    } else if (bits[i] != '0') {
      throw SpecError("bit string may only contain '0' and '1': " +
                      std::string(bits));
    }
  }
  return p;
}

Point Point::from_index(std::size_t n, std::uint64_t index) {
  if (n > 64) throw ContractError("Point::from_index needs n <= 64");
  Point p(n);
  if (n > 0) p.words_[0] = n == 64 ? index : index & ((std::uint64_t{1} << n) - 1);
  return p;
}

Point Point::ones(std::size_t n) { return ~Point(n); }

Point Point::random(std::size_t n, Rng& rng) {
  Point p(n);
  for (auto& w : p.words_) w = rng();
  p.clear_tail();
  return p;
}

bool Point::at(std::size_t i) const {
  if (i >= n_) throw ContractError("coordinate out of range");
  return (*this)[i];
}

void Point::set(std::size_t i, bool value) {
  if (i >= n_) throw ContractError("coordinate out of range");
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

void Point::flip(std::size_t i) {
  if (i >= n_) throw ContractError("coordinate out of range");
  words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
}

std::uint64_t Point::to_index() const {
  if (n_ > 64) throw ContractError("Point::to_index needs n <= 64");
  return words_.empty() ? 0 : words_[0];
}

std::string Point::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::size_t Point::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Point::none() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

void Point::check_same_size(const Point& o) const {
  if (n_ != o.n_) {
    throw ContractError("dimension mismatch: " + std::to_string(n_) + " vs " +
                        std::to_string(o.n_));
  }
}

void Point::clear_tail() {
  if (n_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

Point& Point::operator^=(const Point& o) {
  check_same_size(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  return *this;
}

Point& Point::operator&=(const Point& o) {
  check_same_size(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
  return *this;
}

Point& Point::operator|=(const Point& o) {
  check_same_size(o);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  return *this;
}

Point Point::operator~() const {
  Point p = *this;
  for (auto& w : p.words_) w = ~w;
  p.clear_tail();
  return p;
}

std::size_t Point::hash() const {
  // splitmix64 finalizer folded over the words
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (auto w : words_) {
    std::uint64_t z = h ^ w;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    h = z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

IndexSet::IndexSet(std::initializer_list<std::size_t> members)
    : IndexSet(std::vector<std::size_t>(members)) {}

IndexSet::IndexSet(std::vector<std::size_t> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

IndexSet IndexSet::from_one_based(const std::vector<std::size_t>& members) {
  std::vector<std::size_t> zero_based;
  zero_based.reserve(members.size());
  for (auto m : members) {
    if (m == 0) throw SpecError("coordinates are 1-based; got 0");
    zero_based.push_back(m - 1);
  }
  return IndexSet(std::move(zero_based));
}

IndexSet IndexSet::all(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return IndexSet(std::move(v));
}

IndexSet IndexSet::from_mask(const Point& mask) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) v.push_back(i);
  }
  return IndexSet(std::move(v));
}

std::vector<std::size_t> IndexSet::to_one_based() const {
  std::vector<std::size_t> v(members_);
  for (auto& m : v) ++m;
  return v;
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

Point IndexSet::mask(std::size_t n) const {
  Point m(n);
  for (auto i : members_) {
    if (i >= n) throw ContractError("index set is not a subset of [n]");
    m.set(i, true);
  }
  return m;
}

IndexSet IndexSet::unite(const IndexSet& o) const {
  std::vector<std::size_t> v;
  v.reserve(size() + o.size());
  std::set_union(begin(), end(), o.begin(), o.end(), std::back_inserter(v));
  IndexSet s;
  s.members_ = std::move(v);
  return s;
}

IndexSet IndexSet::complement(std::size_t n) const {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(i)) v.push_back(i);
  }
  IndexSet s;
  s.members_ = std::move(v);
  return s;
}

Point select(const Point& mask, const Point& x, const Point& y) {
  return (x & mask) | (y & ~mask);
}

Point compose(const Point& x, const IndexSet& X, const Point& y) {
  if (x.size() != y.size()) throw ContractError("compose: dimension mismatch");
  return select(X.mask(x.size()), x, y);
}

Point zero_out(const Point& x, const IndexSet& X) {
  return x & ~X.mask(x.size());
}

Point xor_points(const Point& x, const Point& z) { return x ^ z; }

Point negate_on(const Point& x, const IndexSet& X) {
  return x ^ X.mask(x.size());
}

}  // namespace junta
