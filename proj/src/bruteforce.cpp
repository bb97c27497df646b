#include "junta/bruteforce.hpp"

#include <algorithm>
#include <string>

#include "junta/errors.hpp"
#include "junta/functions.hpp"

namespace junta {

namespace {

using boost::multiprecision::cpp_int;

std::vector<bool> full_table(const FunctionOracle& f) {
  const std::size_t n = f.dimension();
  std::vector<bool> table(std::size_t{1} << n);
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    table[idx] = f(Point::from_index(n, idx));
  }
  return table;
}

std::uint64_t project(const Point& x, const IndexSet& J) {
  std::uint64_t a = 0;
  for (std::size_t j = 0; j < J.size(); ++j) {
    a |= static_cast<std::uint64_t>(x[J[j]]) << j;
  }
  return a;
}

void add_subsets(std::size_t n, std::size_t size, std::size_t start,
                 std::vector<std::size_t>& current, std::vector<IndexSet>& out) {
  if (current.size() == size) {
    out.emplace_back(current);
    return;
  }
  for (std::size_t i = start; i + (size - current.size()) <= n; ++i) {
    current.push_back(i);
    add_subsets(n, size, i + 1, current, out);
    current.pop_back();
  }
}

struct WeightedPoint {
  Point x;
  double weight;
  std::uint64_t numerator;
  bool value;
};

}  // namespace

IndexSet relevant_variables(const FunctionOracle& f) {
  const std::size_t n = f.dimension();
  if (n > kMaxRelevantScanDimension) {
    throw CapacityError("relevant_variables: n = " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(kMaxRelevantScanDimension));
  }
  const std::vector<bool> table = full_table(f);
  std::vector<std::size_t> relevant;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
      if ((idx & bit) == 0 && table[idx] != table[idx | bit]) {
        relevant.push_back(i);
        break;
      }
    }
  }
  return IndexSet(std::move(relevant));
}

std::vector<std::size_t> relevant_blocks(const FunctionOracle& f,
                                         const BlockPartition& partition) {
  // A block is a relevant set iff it holds a relevant variable.
  const IndexSet vars = relevant_variables(f);
  std::vector<std::size_t> blocks;
  for (std::size_t l = 0; l < partition.block_count(); ++l) {
    const auto& b = partition.block(l);
    if (std::any_of(b.begin(), b.end(), [&](std::size_t i) { return vars.contains(i); })) {
      blocks.push_back(l);
    }
  }
  return blocks;
}

std::vector<IndexSet> subsets_up_to(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  std::vector<std::size_t> current;
  for (std::size_t size = 0; size <= std::min(n, k); ++size) {
    add_subsets(n, size, 0, current, out);
  }
  return out;
}

DistanceReport distance_to_nearest_kjunta(const FunctionOracle& f,
                                          const Distribution& D, std::size_t k) {
  const std::size_t n = f.dimension();
  if (D.dimension() != n) throw ContractError("distance: dimension mismatch");
  if (n > kMaxDistanceDimension) {
    throw CapacityError("distance_to_nearest_kjunta: n = " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(kMaxDistanceDimension));
  }
  std::vector<WeightedPoint> support;
  D.for_each_point(
      [&](const Point& x, double w, std::uint64_t num) {
        support.push_back({x, w, num, f(x)});
      },
      kMaxDistanceDimension);

  const std::vector<IndexSet> candidates = subsets_up_to(n, k);
  if (static_cast<double>(candidates.size()) * static_cast<double>(support.size()) >
      static_cast<double>(kMaxDistanceWork)) {
    throw CapacityError("distance_to_nearest_kjunta: too many candidate sets");
  }

  const auto denominator = D.exact_denominator();
  const bool exact = denominator.has_value();

  DistanceReport best;
  bool have_best = false;
  std::uint64_t best_num = 0;
  double best_value = 0.0;

  for (const auto& J : candidates) {
    const std::size_t cells = std::size_t{1} << J.size();
    std::vector<double> mass0(cells, 0.0), mass1(cells, 0.0);
    std::vector<std::uint64_t> num0(cells, 0), num1(cells, 0);
    for (const auto& p : support) {
      const auto a = project(p.x, J);
      if (p.value) {
        mass1[a] += p.weight;
        num1[a] += p.numerator;
      } else {
        mass0[a] += p.weight;
        num0[a] += p.numerator;
      }
    }
    double value = 0.0;
    std::uint64_t num = 0;
    std::vector<bool> core(cells);
    for (std::size_t a = 0; a < cells; ++a) {
      // majority by mass, ties to 0
      const bool one = exact ? num1[a] > num0[a] : mass1[a] > mass0[a];
      core[a] = one;
      value += one ? mass0[a] : mass1[a];
      num += one ? num0[a] : num1[a];
    }
    const bool better = !have_best || (exact ? num < best_num : value < best_value);
    if (better) {
      have_best = true;
      best_num = num;
      best_value = value;
      best.best_vars = J;
      best.best_core = std::move(core);
    }
  }

  if (exact) {
    best.distance.exact = Rational(cpp_int(best_num), cpp_int(*denominator));
    best.distance.value = best.distance.exact->convert_to<double>();
  } else {
    best.distance.value = best_value;
  }
  return best;
}

Measure hybrid_disagreement_exact(const FunctionOracle& f, const Distribution& D, const IndexSet& J) {
  const std::size_t n = f.dimension();
  if (D.dimension() != n) throw ContractError("hybrid_disagreement_exact: dimension mismatch");
  if (n > kMaxDistanceDimension) {
    throw CapacityError("hybrid_disagreement_exact: n = " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxDistanceDimension));
  }
  if (!J.empty() && J.max() >= n) throw ContractError("hybrid_disagreement_exact: J outside [n]");
  if (J.size() > 30) throw CapacityError("hybrid_disagreement_exact: |J| too large");

  // ones[a] = #{y on J-bar : f(a on J, y elsewhere) = 1}
  const std::vector<bool> table = full_table(f);
  std::vector<std::uint64_t> ones(std::size_t{1} << J.size(), 0);
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    if (table[idx]) ++ones[project(Point::from_index(n, idx), J)];
  }
  const std::uint64_t completions = std::uint64_t{1} << (n - J.size());

  const auto denominator = D.exact_denominator();
  double value = 0.0;
  cpp_int numer = 0;
  D.for_each_point(
      [&](const Point& x, double w, std::uint64_t num) {
        const std::uint64_t c1 = ones[project(x, J)];
        const std::uint64_t mismatches = table[x.to_index()] ? completions - c1 : c1;
        value += w * static_cast<double>(mismatches) / static_cast<double>(completions);
        if (denominator) numer += cpp_int(num) * mismatches;
      },
      kMaxDistanceDimension);

  Measure m;
  m.value = value;
  if (denominator) {
    m.exact = Rational(numer, cpp_int(*denominator) * completions);
    m.value = m.exact->convert_to<double>();
  }
  return m;
}

void to_json(nlohmann::json& j, const Measure& m) {
  j = {{"value", m.value}};
  if (m.exact) j["exact"] = rational_to_string(*m.exact);
}

void to_json(nlohmann::json& j, const DistanceReport& r) {
  j = {{"distance", r.distance},
       {"best_vars", r.best_vars},
       {"best_core", bits_to_string(r.best_core)}};
}

}  // namespace junta
