#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>

#include "junta/function_spec.hpp"
#include "junta/point.hpp"

namespace junta {

/// Deterministic black box {0,1}^n -> {0,1}. Immutable and cheap to copy;
/// safe to share between threads.
class FunctionOracle {
 public:
  using Eval = std::function<bool(const Point&)>;

  FunctionOracle(std::size_t n, Eval eval, FunctionSpec descriptor,
                 std::optional<IndexSet> declared_support = std::nullopt);

  std::size_t dimension() const { return n_; }
  bool operator()(const Point& x) const;

  const FunctionSpec& descriptor() const { return descriptor_; }
  /// Variables the construction can depend on, when known. The function's
  /// relevant variables are a subset of this.
  const std::optional<IndexSet>& declared_support() const { return support_; }

 private:
  std::size_t n_;
  Eval eval_;
  FunctionSpec descriptor_;
  std::optional<IndexSet> support_;
};

/// Query interface used by the testers. Queries may have side effects
/// (counting), so it is non-const.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual std::size_t dimension() const = 0;
  virtual bool query(const Point& x) = 0;
};

/// Counts the queries that reach the wrapped function. Single-writer.
///
/// Inside a MemoScope, repeated queries of the same point are answered from a
/// cache and not counted; the cache is dropped when the scope ends.
class CountingOracle final : public Oracle {
 public:
  explicit CountingOracle(FunctionOracle f);

  std::size_t dimension() const override { return f_.dimension(); }
  bool query(const Point& x) override;

  std::uint64_t count() const { return count_; }
  void reset_count() { count_ = 0; }
  const FunctionOracle& function() const { return f_; }

  class MemoScope {
   public:
    explicit MemoScope(CountingOracle& owner);
    ~MemoScope();
    MemoScope(const MemoScope&) = delete;
    MemoScope& operator=(const MemoScope&) = delete;

   private:
    CountingOracle& owner_;
  };

  bool memo_enabled() const { return memo_enabled_; }

 private:
  FunctionOracle f_;
  std::uint64_t count_ = 0;
  bool memo_enabled_ = false;
  std::unordered_map<Point, bool, PointHash> memo_;
};

/// a -> f(a on X, background elsewhere), an oracle over {0,1}^{|X|}. The j-th
/// coordinate of a is the j-th smallest member of X. Queries are forwarded to
/// (and counted by) the base oracle.
class RestrictedOracle final : public Oracle {
 public:
  RestrictedOracle(Oracle& base, IndexSet coords, Point background);

  std::size_t dimension() const override { return coords_.size(); }
  bool query(const Point& a) override;

  /// The point of the base domain that query(a) evaluates.
  Point lift(const Point& a) const;

 private:
  Oracle& base_;
  IndexSet coords_;
  Point background_;
};

RestrictedOracle restriction_oracle(Oracle& f, const IndexSet& X, const Point& v);

}  // namespace junta
