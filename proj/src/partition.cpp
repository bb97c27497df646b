#include "junta/partition.hpp"

#include <string>

#include "junta/errors.hpp"

namespace junta {

BlockPartition::BlockPartition(std::size_t n, std::size_t r,
                               std::vector<std::size_t> block_of)
    : n_(n), blocks_(), block_of_(std::move(block_of)) {
  if (r == 0) throw ContractError("a partition needs at least one block");
  if (block_of_.size() != n) throw ContractError("block_of must have n entries");
  std::vector<std::vector<std::size_t>> members(r);
  for (std::size_t i = 0; i < n; ++i) {
    if (block_of_[i] >= r) throw ContractError("block index out of range");
    members[block_of_[i]].push_back(i);
  }
  blocks_.reserve(r);
  for (auto& m : members) blocks_.emplace_back(std::move(m));
  build_masks();
}

BlockPartition::BlockPartition(std::size_t n, std::vector<IndexSet> blocks)
    : n_(n), blocks_(std::move(blocks)), block_of_(n, blocks_.size()) {
  if (blocks_.empty()) throw ContractError("a partition needs at least one block");
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    for (auto i : blocks_[l]) {
      if (i >= n) throw ContractError("block member outside [n]");
      if (block_of_[i] != blocks_.size()) {
        throw ContractError("blocks overlap at coordinate " + std::to_string(i + 1));
      }
      block_of_[i] = l;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (block_of_[i] == blocks_.size()) {
      throw ContractError("blocks do not cover coordinate " + std::to_string(i + 1));
    }
  }
  build_masks();
}

void BlockPartition::build_masks() {
  masks_.clear();
  masks_.reserve(blocks_.size());
  for (const auto& b : blocks_) masks_.push_back(b.mask(n_));
}

BlockPartition random_partition(std::size_t n, std::size_t r, Rng& rng) {
  if (r == 0) throw ContractError("random_partition needs r >= 1");
  std::vector<std::size_t> block_of(n);
  for (auto& b : block_of) b = static_cast<std::size_t>(uniform_index(rng, r));
  return BlockPartition(n, r, std::move(block_of));
}

}  // namespace junta
