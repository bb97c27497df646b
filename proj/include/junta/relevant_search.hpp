#pragma once

#include <cstddef>
#include <span>

#include "junta/oracle.hpp"
#include "junta/partition.hpp"
#include "junta/point.hpp"

namespace junta {

/// A block together with two points that differ only inside it and on which
/// f disagrees: f(witness) != f(partner). That pair certifies the block is
/// relevant. With the default all-zeros background, partner equals
/// zero_out(witness, block).
struct RelevantBlockWitness {
  std::size_t block = 0;
  Point witness;
  Point partner;
  bool witness_value = false;
  bool partner_value = false;
};

/// Binary search over hybrids for a new relevant block.
///
/// Let X be the union of the blocks in `found`, and for a set T of the other
/// blocks let q(T) be the point that equals u on X and on T and equals
/// `background` elsewhere. The caller supplies f_u = f(u) = f(q(all)) and
/// f_base = f(q({})); they must differ. Each step queries the hybrid at the
/// midpoint of the current block interval (the lower half gets floor(|D|/2)
/// blocks, in block order) and keeps the half whose endpoints disagree, so at
/// most ceil(log2 |B|) queries are issued, where B is the list of blocks not
/// in `found`.
///
/// Throws ContractError if f_u == f_base.
RelevantBlockWitness find_relevant_block(Oracle& f, const BlockPartition& partition,
                                         std::span<const std::size_t> found,
                                         const Point& u, const Point& background,
                                         bool f_u, bool f_base);

/// The all-zeros background form: f_u0 = f(u_X o 0).
RelevantBlockWitness find_relevant_block(Oracle& f, const BlockPartition& partition,
                                         std::span<const std::size_t> found,
                                         const Point& u, bool f_u, bool f_u0);

/// ceil(log2 m) for m >= 1.
std::size_t ceil_log2(std::size_t m);

}  // namespace junta
