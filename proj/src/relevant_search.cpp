#include "junta/relevant_search.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

#include "junta/errors.hpp"

namespace junta {

std::size_t ceil_log2(std::size_t m) {
  std::size_t c = 0;
  while ((std::size_t{1} << c) < m) ++c;
  return c;
}

RelevantBlockWitness find_relevant_block(Oracle& f, const BlockPartition& partition,
                                         std::span<const std::size_t> found,
                                         const Point& u, const Point& background,
                                         bool f_u, bool f_base) {
  const std::size_t n = partition.dimension();
  if (u.size() != n || background.size() != n || f.dimension() != n) {
    throw ContractError("find_relevant_block: dimension mismatch");
  }
  if (f_u == f_base) {
    throw ContractError("find_relevant_block: endpoints must disagree");
  }

  std::vector<std::size_t> candidates;
  candidates.reserve(partition.block_count());
  for (std::size_t l = 0; l < partition.block_count(); ++l) {
    if (std::find(found.begin(), found.end(), l) == found.end()) candidates.push_back(l);
  }
  if (candidates.empty()) {
    throw ContractError("find_relevant_block: no unfound blocks left");
  }

  // Invariant: q(lo_mask) = lo_value != hi_value = q(lo_mask + D), where D is
  // candidates[lo, hi).
  Point lo_mask = partition.union_mask(found);
  bool lo_value = f_base;
  bool hi_value = f_u;
  std::size_t lo = 0;
  std::size_t hi = candidates.size();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    Point mid_mask = lo_mask;
    for (std::size_t j = lo; j < mid; ++j) mid_mask |= partition.mask(candidates[j]);
    const bool mid_value = f.query(select(mid_mask, u, background));
    if (mid_value != lo_value) {
      hi = mid;
      hi_value = mid_value;
    } else {
      lo = mid;
      lo_mask = std::move(mid_mask);
    }
  }
  assert(lo_value != hi_value);

  RelevantBlockWitness w;
  w.block = candidates[lo];
  w.partner = select(lo_mask, u, background);
  w.witness = select(lo_mask | partition.mask(w.block), u, background);
  w.witness_value = hi_value;
  w.partner_value = lo_value;
  return w;
}

RelevantBlockWitness find_relevant_block(Oracle& f, const BlockPartition& partition,
                                         std::span<const std::size_t> found,
                                         const Point& u, bool f_u, bool f_u0) {
  return find_relevant_block(f, partition, found, u, Point(partition.dimension()),
                             f_u, f_u0);
}

}  // namespace junta
