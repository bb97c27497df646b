#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "junta/random.hpp"

namespace junta {

/// An assignment in {0,1}^n.
///
/// Coordinates are 0-based in the C++ API. Text forms (bit strings, JSON
/// index lists) are written with x1 first and use 1-based indices, matching
/// the usual [n] = {1..n} notation.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t n);

  /// Parses "0110"; the first character is coordinate 0.
  static Point from_string(std::string_view bits);
  /// Bit i of index becomes coordinate i. Requires n <= 64.
  static Point from_index(std::size_t n, std::uint64_t index);
  static Point ones(std::size_t n);
  static Point random(std::size_t n, Rng& rng);

  std::size_t size() const { return n_; }
  bool operator[](std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  /// Inverse of from_index. Requires n <= 64.
  std::uint64_t to_index() const;
  std::string to_string() const;
  std::size_t popcount() const;
  bool none() const;

  std::span<const std::uint64_t> words() const { return words_; }

  Point& operator^=(const Point& o);
  Point& operator&=(const Point& o);
  Point& operator|=(const Point& o);
  Point operator~() const;

  friend Point operator^(Point a, const Point& b) { return a ^= b; }
  friend Point operator&(Point a, const Point& b) { return a &= b; }
  friend Point operator|(Point a, const Point& b) { return a |= b; }
  friend bool operator==(const Point&, const Point&) = default;

  std::size_t hash() const;

 private:
  void check_same_size(const Point& o) const;
  void clear_tail();

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct PointHash {
  std::size_t operator()(const Point& p) const { return p.hash(); }
};

/// A subset of [n], stored sorted and duplicate free (0-based).
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> members);
  explicit IndexSet(std::vector<std::size_t> members);

  static IndexSet from_one_based(const std::vector<std::size_t>& members);
  static IndexSet all(std::size_t n);
  /// Coordinates where the mask is 1.
  static IndexSet from_mask(const Point& mask);

  std::vector<std::size_t> to_one_based() const;

  bool contains(std::size_t i) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t max() const { return members_.back(); }
  std::size_t operator[](std::size_t j) const { return members_[j]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<std::size_t>& members() const { return members_; }

  /// Indicator vector of this set in {0,1}^n. Throws if a member is >= n.
  Point mask(std::size_t n) const;

  IndexSet unite(const IndexSet& o) const;
  IndexSet complement(std::size_t n) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> members_;
};

// x on coordinates where mask is 1, y elsewhere.
Point select(const Point& mask, const Point& x, const Point& y);

/// x_X o y_{X-bar}: agrees with x on X and with y off X.
Point compose(const Point& x, const IndexSet& X, const Point& y);
/// x with the coordinates in X set to 0.
Point zero_out(const Point& x, const IndexSet& X);
/// Coordinatewise sum mod 2.
Point xor_points(const Point& x, const Point& z);
/// x with the coordinates in X flipped.
Point negate_on(const Point& x, const IndexSet& X);

}  // namespace junta
