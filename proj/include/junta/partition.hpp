#pragma once

#include <cstddef>
#include <vector>

#include "junta/point.hpp"
#include "junta/random.hpp"

namespace junta {

/// r disjoint blocks covering [n]. Blocks may be empty.
class BlockPartition {
 public:
  /// block_of[i] is the block holding coordinate i; r is the block count.
  BlockPartition(std::size_t n, std::size_t r, std::vector<std::size_t> block_of);
  /// Validates that the blocks are pairwise disjoint and cover [n].
  BlockPartition(std::size_t n, std::vector<IndexSet> blocks);

  std::size_t dimension() const { return n_; }
  std::size_t block_count() const { return blocks_.size(); }
  const IndexSet& block(std::size_t l) const { return blocks_.at(l); }
  const std::vector<IndexSet>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t i) const { return block_of_.at(i); }
  /// Indicator of block l in {0,1}^n.
  const Point& mask(std::size_t l) const { return masks_.at(l); }

  /// Union of the given blocks as a mask.
  template <typename Range>
  Point union_mask(const Range& block_indices) const {
    Point m(n_);
    for (std::size_t l : block_indices) m |= masks_.at(l);
    return m;
  }

 private:
  void build_masks();

  std::size_t n_;
  std::vector<IndexSet> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<Point> masks_;
};

/// Assigns every coordinate independently and uniformly to one of r blocks,
/// so two fixed coordinates share a block with probability exactly 1/r.
BlockPartition random_partition(std::size_t n, std::size_t r, Rng& rng);

}  // namespace junta
