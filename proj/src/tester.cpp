#include "junta/tester.hpp"

#include <cmath>

#include "junta/errors.hpp"

namespace junta {

namespace {

std::size_t ceil_count(double x) {
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

// Charges the queries issued during its lifetime to one stage.
class StageMeter {
 public:
  StageMeter(const CountingOracle& oracle, Transcript& t, Stage s)
      : oracle_(oracle), t_(t), stage_(s), start_(oracle.count()) {}
  ~StageMeter() {
    t_.queries_by_stage[static_cast<std::size_t>(stage_)] += oracle_.count() - start_;
  }
  StageMeter(const StageMeter&) = delete;
  StageMeter& operator=(const StageMeter&) = delete;

 private:
  const CountingOracle& oracle_;
  Transcript& t_;
  Stage stage_;
  std::uint64_t start_;
};

void reject(Transcript& t, RejectSite site, std::vector<PairCheck> evidence) {
  t.verdict.outcome = Outcome::kReject;
  t.verdict.site = site;
  t.verdict.evidence = std::move(evidence);
}

PairCheck pair_of(const RelevantBlockWitness& w) {
  return {w.witness, w.partner, w.witness_value, w.partner_value, true};
}

// Returns true when the phase rejected.
bool find_relevant_blocks(CountingOracle& f, const Distribution& D,
                          const BlockPartition& partition, const TesterParams& p,
                          Rng& rng, Transcript& t) {
  const std::size_t n = f.dimension();
  Point x_mask(n);
  std::vector<std::size_t> found;
  std::size_t run = 0;
  bool reached_threshold = false;
  for (std::size_t iter = 0; iter < p.M; ++iter) {
    ++t.phase2_iterations;
    const Point u = D.sample(rng);
    ++run;
    bool f_u0;
    bool f_u;
    {
      StageMeter meter(f, t, Stage::kSampling);
      f_u0 = f.query(u & x_mask);
      f_u = f.query(u);
    }
    if (f_u0 != f_u) {
      RelevantBlockWitness w;
      {
        StageMeter meter(f, t, Stage::kSearch);
        w = find_relevant_block(f, partition, found, u, f_u, f_u0);
      }
      found.push_back(w.block);
      x_mask |= partition.mask(w.block);
      t.relevant.push_back(std::move(w));
      if (found.size() > p.k) {
        std::vector<PairCheck> evidence;
        for (const auto& r : t.relevant) evidence.push_back(pair_of(r));
        reject(t, RejectSite::kOverflow, std::move(evidence));
        return true;
      }
      run = 0;
    }
    if (run == p.t_threshold) {
      reached_threshold = true;
      break;
    }
  }
  t.phase2_exhausted = !reached_threshold;
  return false;
}

bool check_literals(CountingOracle& f, const BlockPartition& partition,
                    const TesterParams& p, Rng& rng, Transcript& t) {
  const std::size_t n = f.dimension();
  for (const auto& w : t.relevant) {
    const IndexSet& block = partition.block(w.block);
    {
      StageMeter meter(f, t, Stage::kLiteralTest);
      RestrictedOracle g = restriction_oracle(f, block, w.witness);
      UniformJuntaResult uj = uniform_junta_test(g, p.literal_test, rng);
      if (!uj.accept) {
        std::vector<PairCheck> evidence;
        for (const auto& c : uj.certificates) {
          evidence.push_back({g.lift(c.witness), g.lift(c.partner), c.witness_value,
                              c.partner_value, true});
        }
        reject(t, RejectSite::kUniformJunta, std::move(evidence));
        return true;
      }
    }
    StageMeter meter(f, t, Stage::kConstantCheck);
    const Point b = Point::random(n, rng);
    const Point& mask = partition.mask(w.block);
    const Point on = select(mask, b, w.witness);
    const Point off = on ^ mask;
    const bool v_on = f.query(on);
    const bool v_off = f.query(off);
    if (v_on == v_off) {
      reject(t, RejectSite::kConstant, {{on, off, v_on, v_off, false}});
      return true;
    }
  }
  return false;
}

bool final_test(CountingOracle& f, const Distribution& D, const BlockPartition& partition,
                const TesterParams& p, Rng& rng, Transcript& t) {
  const std::size_t n = f.dimension();
  std::vector<std::size_t> found;
  for (const auto& w : t.relevant) found.push_back(w.block);
  const Point x_mask = partition.union_mask(found);

  for (std::size_t rep = 0; rep < p.M_prime; ++rep) {
    const Point w = Point::random(n, rng);
    Point z(n);
    for (const auto& rel : t.relevant) {
      const Point& block_mask = partition.mask(rel.block);
      const Point half1 = w & block_mask;
      const Point half0 = block_mask & ~w;
      std::size_t g0 = 0;
      std::size_t g1 = 0;
      std::optional<PairCheck> flip0_differ, flip0_same, flip1_differ, flip1_same;
      {
        StageMeter meter(f, t, Stage::kSplitTest);
        for (std::size_t it = 0; it < p.h; ++it) {
          const Point b = Point::random(n, rng);
          const Point base = select(block_mask, b, rel.witness);
          const Point flip0 = base ^ half0;
          const Point flip1 = base ^ half1;
          CountingOracle::MemoScope memo(f);
          const bool v = f.query(base);
          const bool v0 = f.query(flip0);
          if (v != v0) {
            ++g0;
            flip0_differ = PairCheck{base, flip0, v, v0, true};
          } else {
            flip0_same = PairCheck{base, flip0, v, v0, false};
          }
          const bool v_again = f.query(base);
          const bool v1 = f.query(flip1);
          if (v_again != v1) {
            ++g1;
            flip1_differ = PairCheck{base, flip1, v_again, v1, true};
          } else {
            flip1_same = PairCheck{base, flip1, v_again, v1, false};
          }
        }
      }
      const bool valid = (g0 == 0 && g1 == p.h) || (g0 == p.h && g1 == 0);
      if (!valid) {
        std::vector<PairCheck> evidence;
        if (g0 > 0 && g1 > 0) {
          evidence = {*flip0_differ, *flip1_differ};
        } else if (g0 == 0 && g1 == 0) {
          evidence = {*flip0_same, *flip1_same};
        } else if (g0 > 0 && g0 < p.h) {
          evidence = {*flip0_differ, *flip0_same};
        } else {
          evidence = {*flip1_differ, *flip1_same};
        }
        reject(t, RejectSite::kGCounter, std::move(evidence));
        return true;
      }
      // z on the block: w if the literal sits in the w=0 half, else its negation.
      z |= g0 == p.h ? half1 : half0;
    }

    StageMeter meter(f, t, Stage::kFinalTest);
    const Point u = D.sample(rng);
    const Point a = u & x_mask;
    const Point b = (u ^ z) & x_mask;
    const bool va = f.query(a);
    const bool vb = f.query(b);
    if (va != vb) {
      reject(t, RejectSite::kFinal, {{a, b, va, vb, true}});
      return true;
    }
  }
  return false;
}

}  // namespace

TesterParams derive_params(std::size_t k, double eps, std::uint64_t seed,
                           double c_rounds) {
  if (k < 1) throw ContractError("tester: k must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ContractError("tester: eps must be in (0,1)");
  const double kd = static_cast<double>(k);
  TesterParams p;
  p.k = k;
  p.eps = eps;
  p.seed = seed;
  p.r = 2 * k * k;
  p.M = ceil_count(2.0 * kd * std::log(15.0 * kd) / eps);
  p.t_threshold = ceil_count(2.0 * std::log(15.0 * kd) / eps);
  p.M_prime = ceil_count(2.0 * std::log(15.0) / eps);
  p.h = ceil_count(std::log(15.0 * static_cast<double>(p.M_prime) * kd) /
                   std::log(4.0 / 3.0));
  p.literal_test = uniform_junta_params(1, 1.0 / 30.0, 1.0 / 15.0, c_rounds);
  return p;
}

std::uint64_t query_budget(const TesterParams& p) {
  const std::uint64_t k = p.k;
  return 2 * p.M + (k + 1) * ceil_log2(p.r) +
         k * (uniform_junta_budget(p.literal_test) + 2) +
         p.M_prime * (4 * k * p.h + 2);
}

Transcript test_distribution_free(const FunctionOracle& f, const Distribution& D,
                                  const TesterParams& params, Rng& rng,
                                  const BlockPartition* partition_override) {
  const std::size_t n = f.dimension();
  if (D.dimension() != n) {
    throw ContractError("tester: function and distribution dimensions differ");
  }
  if (partition_override &&
      (partition_override->dimension() != n ||
       partition_override->block_count() != params.r)) {
    throw ContractError("tester: partition override must have r blocks over [n]");
  }

  Transcript t;
  t.params = params;
  CountingOracle oracle(f);

  std::optional<BlockPartition> drawn;
  if (!partition_override) drawn.emplace(random_partition(n, params.r, rng));
  const BlockPartition& partition = partition_override ? *partition_override : *drawn;

  const bool rejected = find_relevant_blocks(oracle, D, partition, params, rng, t) ||
                        check_literals(oracle, partition, params, rng, t) ||
                        final_test(oracle, D, partition, params, rng, t);
  if (!rejected) t.verdict.outcome = Outcome::kAccept;
  t.total_queries = oracle.count();
  return t;
}

Transcript test_distribution_free(const FunctionOracle& f, const Distribution& D,
                                  const TesterParams& params) {
  Rng rng(params.seed);
  return test_distribution_free(f, D, params, rng);
}

bool replay_evidence(const FunctionOracle& f, const Verdict& v, std::size_t* calls) {
  std::size_t made = 0;
  bool ok = v.accepted() ? v.evidence.empty() : !v.evidence.empty();
  for (const auto& c : v.evidence) {
    const bool a = f(c.a);
    const bool b = f(c.b);
    made += 2;
    ok = ok && a == c.a_value && b == c.b_value && ((a != b) == c.expect_differ);
  }
  if (calls) *calls = made;
  return ok;
}

// --- names and serialization ----------------------------------------------

std::string to_string(Outcome o) { return o == Outcome::kAccept ? "accept" : "reject"; }

std::string to_string(RejectSite s) {
  switch (s) {
    case RejectSite::kOverflow: return "8-overflow";
    case RejectSite::kUniformJunta: return "14-uniformjunta";
    case RejectSite::kConstant: return "15-constant";
    case RejectSite::kGCounter: return "23-Gcounter";
    case RejectSite::kFinal: return "26-final";
  }
  return "unknown";
}

RejectSite reject_site_from_string(const std::string& s) {
  for (auto site : {RejectSite::kOverflow, RejectSite::kUniformJunta,
                    RejectSite::kConstant, RejectSite::kGCounter, RejectSite::kFinal}) {
    if (to_string(site) == s) return site;
  }
  throw SpecError("unknown reject site: " + s);
}

std::string to_string(Stage s) {
  switch (s) {
    case Stage::kSampling: return "sampling";
    case Stage::kSearch: return "search";
    case Stage::kLiteralTest: return "literal_test";
    case Stage::kConstantCheck: return "constant_check";
    case Stage::kSplitTest: return "split_test";
    case Stage::kFinalTest: return "final_test";
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const TesterParams& p) {
  j = {{"k", p.k},         {"eps", p.eps},
       {"r", p.r},         {"M", p.M},
       {"t_threshold", p.t_threshold},
       {"M_prime", p.M_prime},
       {"h", p.h},         {"seed", p.seed},
       {"literal_test", p.literal_test},
       {"query_budget", query_budget(p)}};
}

void to_json(nlohmann::json& j, const Verdict& v) {
  j = {{"outcome", to_string(v.outcome)}};
  if (v.site) j["reject_site"] = to_string(*v.site);
  auto evidence = nlohmann::json::array();
  for (const auto& c : v.evidence) {
    evidence.push_back({{"a", c.a.to_string()},
                        {"b", c.b.to_string()},
                        {"f_a", c.a_value ? 1 : 0},
                        {"f_b", c.b_value ? 1 : 0},
                        {"expect_differ", c.expect_differ}});
  }
  j["evidence"] = std::move(evidence);
}

void to_json(nlohmann::json& j, const Transcript& t) {
  nlohmann::json stages = nlohmann::json::object();
  for (std::size_t s = 0; s < kStageCount; ++s) {
    stages[to_string(static_cast<Stage>(s))] = t.queries_by_stage[s];
  }
  auto relevant = nlohmann::json::array();
  for (const auto& w : t.relevant) {
    relevant.push_back({{"block", w.block + 1}, {"witness", w.witness.to_string()}});
  }
  j = {{"params", t.params},
       {"queries_by_stage", stages},
       {"total_queries", t.total_queries},
       {"verdict", t.verdict},
       {"relevant_blocks", relevant},
       {"phase2_iterations", t.phase2_iterations},
       {"phase2_exhausted", t.phase2_exhausted}};
}

}  // namespace junta
