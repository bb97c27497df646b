#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "junta/distribution.hpp"
#include "junta/oracle.hpp"
#include "junta/partition.hpp"
#include "junta/random.hpp"
#include "junta/relevant_search.hpp"
#include "junta/uniform_junta.hpp"

namespace junta {

/// Constants of the distribution-free tester, all rounded up:
///   r           = 2k^2
///   M           = ceil(2k ln(15k) / eps)
///   t_threshold = ceil(2 ln(15k) / eps)
///   M_prime     = ceil(2 ln 15 / eps)
///   h           = ceil(ln(15 M_prime k) / ln(4/3))
/// literal_test holds the uniform-junta parameters used on every found block,
/// always (k, eps, delta) = (1, 1/30, 1/15).
struct TesterParams {
  std::size_t k = 1;
  double eps = 0.1;
  std::size_t r = 2;
  std::size_t M = 1;
  std::size_t t_threshold = 1;
  std::size_t M_prime = 1;
  std::size_t h = 1;
  std::uint64_t seed = 0;
  UniformJuntaParams literal_test;
};

TesterParams derive_params(std::size_t k, double eps, std::uint64_t seed = 0,
                           double c_rounds = kDefaultUniformJuntaRounds);

/// Worst-case query count:
///   2M + (k+1) ceil(log2 r) + k (UJ budget + 2) + M_prime (4kh + 2).
/// The split test is charged 4 queries per iteration even though only three
/// distinct points are queried.
std::uint64_t query_budget(const TesterParams& p);

enum class Outcome { kAccept, kReject };

enum class RejectSite {
  kOverflow,      // more than k relevant blocks found
  kUniformJunta,  // a block restriction is not a 1-junta
  kConstant,      // a block restriction looks constant
  kGCounter,      // split counters not {0, h}
  kFinal,         // final hybrid comparison disagreed
};

enum class Stage {
  kSampling,
  kSearch,
  kLiteralTest,
  kConstantCheck,
  kSplitTest,
  kFinalTest,
};
inline constexpr std::size_t kStageCount = 6;

std::string to_string(Outcome o);
std::string to_string(RejectSite s);
std::string to_string(Stage s);
RejectSite reject_site_from_string(const std::string& s);

/// Two points, their recorded values, and whether the values should differ.
struct PairCheck {
  Point a;
  Point b;
  bool a_value = false;
  bool b_value = false;
  bool expect_differ = true;
};

struct Verdict {
  Outcome outcome = Outcome::kAccept;
  std::optional<RejectSite> site;
  /// Empty on accept. Every reject carries at least one check; replaying
  /// them against f reproduces the recorded values and relations.
  std::vector<PairCheck> evidence;

  bool accepted() const { return outcome == Outcome::kAccept; }
};

struct Transcript {
  TesterParams params;
  std::array<std::uint64_t, kStageCount> queries_by_stage{};
  std::uint64_t total_queries = 0;
  Verdict verdict;
  /// Found blocks in discovery order, with their certificates.
  std::vector<RelevantBlockWitness> relevant;
  std::size_t phase2_iterations = 0;
  /// Phase 2 ran all M iterations without the counter reaching t_threshold.
  bool phase2_exhausted = false;

  std::uint64_t stage_queries(Stage s) const {
    return queries_by_stage[static_cast<std::size_t>(s)];
  }
};

/// Runs the distribution-free k-junta tester on f with samples from D.
///
/// Phases, halting at the first reject:
///  1. partition [n] into r blocks (or use partition_override);
///  2. sample u ~ D and compare f(u) with f(u_X o 0); on disagreement find a
///     new relevant block by binary search; reject past k blocks; leave once
///     t_threshold consecutive samples agree (or after M samples);
///  3. for each found block: uniform-junta test of the restriction at its
///     witness, then reject if the restriction takes equal values on a random
///     b and its complement;
///  4. M_prime times: split every block by a random w, count flips on both
///     halves h times, require counters {0, h}, build z zero on the literal's
///     half, then compare f(u_X o 0) with f((u+z)_X o 0) for fresh u ~ D.
///
/// partition_override exists for tests; it must have r blocks over [n].
Transcript test_distribution_free(const FunctionOracle& f, const Distribution& D,
                                  const TesterParams& params, Rng& rng,
                                  const BlockPartition* partition_override = nullptr);

/// Convenience form seeding the generator from params.seed.
Transcript test_distribution_free(const FunctionOracle& f, const Distribution& D,
                                  const TesterParams& params);

/// Re-queries every evidence pair on f. Returns false if any recorded value
/// or relation fails to reproduce. calls, if given, receives the number of
/// evaluations made.
bool replay_evidence(const FunctionOracle& f, const Verdict& v,
                     std::size_t* calls = nullptr);

void to_json(nlohmann::json& j, const TesterParams& p);
void to_json(nlohmann::json& j, const Verdict& v);
void to_json(nlohmann::json& j, const Transcript& t);

}  // namespace junta
