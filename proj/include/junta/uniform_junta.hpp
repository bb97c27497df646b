#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "json.hpp"
#include "junta/oracle.hpp"
#include "junta/random.hpp"
#include "junta/relevant_search.hpp"

namespace junta {

// Calibrated default for the round-count constant; see README for the
// calibration run that fixed it.
inline constexpr double kDefaultUniformJuntaRounds = 3.0;

/// Parameters of the one-sided uniform-distribution junta tester.
///
/// The test runs `repetitions` independent passes. Each pass draws a fresh
/// random partition into `blocks` parts and spends `rounds_per_repetition`
/// rounds looking for relevant blocks:
///   blocks                = max(2k^2, 2)
///   rounds_per_repetition = ceil(c_rounds * (k/eps + max(1, k log2 k)))
///   repetitions           = ceil(log2(3/delta))
struct UniformJuntaParams {
  std::size_t k = 1;
  double eps = 0.1;
  double delta = 0.1;
  double c_rounds = kDefaultUniformJuntaRounds;
  std::size_t blocks = 2;
  std::size_t rounds_per_repetition = 1;
  std::size_t repetitions = 1;

  std::size_t total_rounds() const { return rounds_per_repetition * repetitions; }
};

UniformJuntaParams uniform_junta_params(std::size_t k, double eps, double delta,
                                        double c_rounds = kDefaultUniformJuntaRounds);

/// Worst-case query count: two queries per round plus at most k+1 binary
/// searches of ceil(log2 blocks) queries per repetition. Never exceeds
/// total_rounds() * (2 + ceil(log2 blocks)).
std::uint64_t uniform_junta_budget(const UniformJuntaParams& p);

struct UniformJuntaResult {
  bool accept = true;
  /// On reject: k+1 certified relevant blocks of the rejecting pass, with
  /// points in the oracle's own domain.
  std::vector<RelevantBlockWitness> certificates;
  std::size_t repetitions_run = 0;
};

/// One-sided: a k-junta is always accepted, because every block added to the
/// relevant set carries a disagreeing pair that differs only inside it, the
/// blocks are disjoint, and a k-junta has at most k such blocks.
///
/// Each round draws uniform x and y and compares g(x) with g(h), where h is x
/// on the relevant blocks found so far and y elsewhere. A disagreement starts
/// a hybrid binary search (endpoints x and h) that adds one new block; the
/// test rejects once more than k blocks are found.
UniformJuntaResult uniform_junta_test(Oracle& g, const UniformJuntaParams& params,
                                      Rng& rng);

void to_json(nlohmann::json& j, const UniformJuntaParams& p);

}  // namespace junta
