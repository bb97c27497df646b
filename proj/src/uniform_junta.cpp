#include "junta/uniform_junta.hpp"

#include <algorithm>
#include <cmath>

#include "junta/errors.hpp"
#include "junta/partition.hpp"

namespace junta {

namespace {

std::size_t ceil_count(double x) {
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

}  // namespace

UniformJuntaParams uniform_junta_params(std::size_t k, double eps, double delta,
                                        double c_rounds) {
  if (!(eps > 0.0 && eps < 1.0)) throw ContractError("uniform junta: eps must be in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractError("uniform junta: delta must be in (0,1)");
  }
  if (!(c_rounds > 0.0)) throw ContractError("uniform junta: c_rounds must be positive");
  UniformJuntaParams p;
  p.k = k;
  p.eps = eps;
  p.delta = delta;
  p.c_rounds = c_rounds;
  p.blocks = std::max<std::size_t>(2 * k * k, 2);
  const double kd = static_cast<double>(k);
  const double search_term = k == 0 ? 1.0 : std::max(1.0, kd * std::log2(kd));
  p.rounds_per_repetition = std::max<std::size_t>(1, ceil_count(c_rounds * (kd / eps + search_term)));
  p.repetitions = std::max<std::size_t>(1, ceil_count(std::log2(3.0 / delta)));
  return p;
}

std::uint64_t uniform_junta_budget(const UniformJuntaParams& p) {
  const std::uint64_t per_pass =
      2 * p.rounds_per_repetition + (p.k + 1) * ceil_log2(p.blocks);
  return per_pass * p.repetitions;
}

UniformJuntaResult uniform_junta_test(Oracle& g, const UniformJuntaParams& params,
                                      Rng& rng) {
  const std::size_t m = g.dimension();
  if (m == 0) throw ContractError("uniform junta: empty domain");

  UniformJuntaResult result;
  for (std::size_t rep = 0; rep < params.repetitions; ++rep) {
    ++result.repetitions_run;
    const BlockPartition partition = random_partition(m, params.blocks, rng);
    std::vector<std::size_t> found;
    std::vector<RelevantBlockWitness> certificates;
    Point found_mask(m);
    for (std::size_t round = 0; round < params.rounds_per_repetition; ++round) {
      const Point x = Point::random(m, rng);
      const Point y = Point::random(m, rng);
      const Point hybrid = select(found_mask, x, y);
      const bool gx = g.query(x);
      const bool gh = g.query(hybrid);
      if (gx == gh) continue;
      RelevantBlockWitness w = find_relevant_block(g, partition, found, x, y, gx, gh);
      found.push_back(w.block);
      found_mask |= partition.mask(w.block);
      certificates.push_back(std::move(w));
      if (found.size() > params.k) {
        result.accept = false;
        result.certificates = std::move(certificates);
        return result;
      }
    }
  }
  return result;
}

void to_json(nlohmann::json& j, const UniformJuntaParams& p) {
  j = {{"k", p.k},
       {"eps", p.eps},
       {"delta", p.delta},
       {"c_rounds", p.c_rounds},
       {"blocks", p.blocks},
       {"rounds_per_repetition", p.rounds_per_repetition},
       {"repetitions", p.repetitions}};
}

}  // namespace junta
