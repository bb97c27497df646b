#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "junta/distribution.hpp"
#include "junta/oracle.hpp"
#include "junta/partition.hpp"
#include "junta/point.hpp"

namespace junta {

// Exhaustive ground truth for small instances.

inline constexpr std::size_t kMaxRelevantScanDimension = 20;
inline constexpr std::size_t kMaxDistanceDimension = 16;
// Upper bound on (#candidate sets) x (#support points) for the distance search.
inline constexpr std::uint64_t kMaxDistanceWork = std::uint64_t{1} << 32;

/// Coordinates i with f(a) != f(a with bit i flipped) for some a. n <= 20.
IndexSet relevant_variables(const FunctionOracle& f);

/// Blocks of the partition that are relevant sets of f (n <= 20).
std::vector<std::size_t> relevant_blocks(const FunctionOracle& f,
                                         const BlockPartition& partition);

struct DistanceReport {
  Measure distance;
  IndexSet best_vars;
  /// Truth table over best_vars, indexed like a JuntaSpec core.
  std::vector<bool> best_core;
};

/// Minimum over all k-juntas g of Pr_{x~D}[f(x) != g(x)].
///
/// For a fixed variable set J the best g takes, on each assignment a of J,
/// the value of larger D-mass among {x : x_J = a}; ties go to 0. So the
/// distance is the minimum over |J| <= k of sum_a min(mass_0(a), mass_1(a)).
/// Sets are scanned by size, then lexicographically; the first minimizer wins.
DistanceReport distance_to_nearest_kjunta(const FunctionOracle& f,
                                          const Distribution& D, std::size_t k);

/// Pr_{x~D, y~U}[f(x) != f(x_J o y_{J-bar})], computed exactly. n <= 16.
Measure hybrid_disagreement_exact(const FunctionOracle& f, const Distribution& D, const IndexSet& J);

/// All subsets of {0..n-1} of size <= k, by size then lexicographically.
std::vector<IndexSet> subsets_up_to(std::size_t n, std::size_t k);

void to_json(nlohmann::json& j, const Measure& m);
void to_json(nlohmann::json& j, const DistanceReport& r);

}  // namespace junta
