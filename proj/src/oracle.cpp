#include "junta/oracle.hpp"

#include <string>

#include "junta/errors.hpp"

namespace junta {

FunctionOracle::FunctionOracle(std::size_t n, Eval eval, FunctionSpec descriptor,
                               std::optional<IndexSet> declared_support)
    : n_(n),
      eval_(std::move(eval)),
      descriptor_(std::move(descriptor)),
      support_(std::move(declared_support)) {}

bool FunctionOracle::operator()(const Point& x) const {
  if (x.size() != n_) {
    throw ContractError("oracle of dimension " + std::to_string(n_) +
                        " queried with a point of dimension " +
                        std::to_string(x.size()));
  }
  return eval_(x);
}

CountingOracle::CountingOracle(FunctionOracle f) : f_(std::move(f)) {}

bool CountingOracle::query(const Point& x) {
  if (memo_enabled_) {
    auto it = memo_.find(x);
    if (it != memo_.end()) return it->second;
    const bool value = f_(x);
    ++count_;
    memo_.emplace(x, value);
    return value;
  }
  const bool value = f_(x);
  ++count_;
  return value;
}

CountingOracle::MemoScope::MemoScope(CountingOracle& owner) : owner_(owner) {
  if (owner_.memo_enabled_) throw ContractError("memo scopes do not nest");
  owner_.memo_enabled_ = true;
}

CountingOracle::MemoScope::~MemoScope() {
  owner_.memo_enabled_ = false;
  owner_.memo_.clear();
}

RestrictedOracle::RestrictedOracle(Oracle& base, IndexSet coords, Point background)
    : base_(base), coords_(std::move(coords)), background_(std::move(background)) {
  if (background_.size() != base_.dimension()) {
    throw ContractError("restriction background has the wrong dimension");
  }
  if (!coords_.empty() && coords_.max() >= base_.dimension()) {
    throw ContractError("restriction set is not a subset of [n]");
  }
}

Point RestrictedOracle::lift(const Point& a) const {
  if (a.size() != coords_.size()) {
    throw ContractError("restricted oracle queried with the wrong dimension");
  }
  Point x = background_;
  for (std::size_t j = 0; j < coords_.size(); ++j) x.set(coords_[j], a[j]);
  return x;
}

bool RestrictedOracle::query(const Point& a) { return base_.query(lift(a)); }

RestrictedOracle restriction_oracle(Oracle& f, const IndexSet& X, const Point& v) {
  return RestrictedOracle(f, X, v);
}

}  // namespace junta
