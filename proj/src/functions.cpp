#include "junta/functions.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>

#include "junta/errors.hpp"
#include "junta/random.hpp"

namespace junta {

namespace {

void check_vars(std::size_t n, const IndexSet& vars, const char* what) {
  if (!vars.empty() && vars.max() >= n) {
    throw SpecError(std::string(what) + ": variable outside [n]");
  }
}

std::size_t table_dimension(std::size_t table_size) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < table_size) ++n;
  if ((std::size_t{1} << n) != table_size) {
    throw SpecError("truth table length must be a power of two");
  }
  return n;
}

std::uint64_t gather(const Point& x, const std::vector<std::size_t>& vars) {
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    idx |= static_cast<std::uint64_t>(x[vars[j]]) << j;
  }
  return idx;
}

std::vector<bool> random_bits(std::size_t count, Rng& rng) {
  std::vector<bool> bits(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = (word >> (i % 64)) & 1u;
  }
  return bits;
}

FunctionOracle build(const TruthTableSpec& s) {
  if (s.n > kMaxTableDimension) throw SpecError("truth table too large");
  if (s.table.size() != (std::size_t{1} << s.n)) {
    throw SpecError("truth table length must be 2^n");
  }
  auto table = std::make_shared<const std::vector<bool>>(s.table);
  return FunctionOracle(
      s.n, [table](const Point& x) { return (*table)[x.to_index()]; }, s);
}

FunctionOracle build(const LiteralSpec& s) {
  if (s.index >= s.n) throw SpecError("literal: variable outside [n]");
  const std::size_t i = s.index;
  const bool positive = s.positive;
  return FunctionOracle(
      s.n, [i, positive](const Point& x) { return x[i] == positive; }, s,
      IndexSet{i});
}

FunctionOracle build(const ConstantSpec& s) {
  const bool v = s.value;
  return FunctionOracle(s.n, [v](const Point&) { return v; }, s, IndexSet{});
}

FunctionOracle build(const ParitySpec& s) {
  check_vars(s.n, s.vars, "parity");
  const Point mask = s.vars.mask(s.n);
  return FunctionOracle(
      s.n, [mask](const Point& x) { return ((x & mask).popcount() & 1u) != 0; },
      s, s.vars);
}

FunctionOracle build(const MajoritySpec& s) {
  check_vars(s.n, s.vars, "majority");
  if (s.vars.size() % 2 == 0) throw SpecError("majority needs an odd number of variables");
  const Point mask = s.vars.mask(s.n);
  const std::size_t half = s.vars.size() / 2;
  return FunctionOracle(
      s.n, [mask, half](const Point& x) { return (x & mask).popcount() > half; },
      s, s.vars);
}

FunctionOracle build(const JuntaSpec& s) {
  check_vars(s.n, s.vars, "junta");
  if (s.vars.size() > kMaxTableDimension) throw SpecError("junta core too large");
  if (s.core.size() != (std::size_t{1} << s.vars.size())) {
    throw SpecError("junta core table must have 2^|vars| entries");
  }
  auto core = std::make_shared<const std::vector<bool>>(s.core);
  auto vars = std::make_shared<const std::vector<std::size_t>>(s.vars.members());
  return FunctionOracle(
      s.n, [core, vars](const Point& x) { return (*core)[gather(x, *vars)]; }, s,
      s.vars);
}

FunctionOracle build(const RandomJuntaSpec& s) {
  const JuntaSpec concrete = realize(s);
  FunctionOracle inner = build(concrete);
  return FunctionOracle(
      s.n, [inner](const Point& x) { return inner(x); }, s, concrete.vars);
}

FunctionOracle build(const RandomTableSpec& s) {
  if (s.n > kMaxTableDimension) throw SpecError("random table too large");
  Rng rng(s.seed);
  auto table = std::make_shared<const std::vector<bool>>(
      random_bits(std::size_t{1} << s.n, rng));
  return FunctionOracle(
      s.n, [table](const Point& x) { return (*table)[x.to_index()]; }, s);
}

FunctionOracle build(const TribesSpec& s) {
  if (s.width == 0) throw SpecError("tribes width must be positive");
  std::vector<Point> groups;
  for (std::size_t start = 0; start < s.n; start += s.width) {
    Point g(s.n);
    for (std::size_t i = start; i < std::min(s.n, start + s.width); ++i) g.set(i, true);
    groups.push_back(std::move(g));
  }
  auto shared = std::make_shared<const std::vector<Point>>(std::move(groups));
  return FunctionOracle(
      s.n,
      [shared](const Point& x) {
        return std::any_of(shared->begin(), shared->end(),
                           [&x](const Point& g) { return (x & g) == g; });
      },
      s, IndexSet::all(s.n));
}

}  // namespace

JuntaSpec realize(const RandomJuntaSpec& s) {
  if (s.k > s.n) throw SpecError("random_junta: k exceeds n");
  if (s.k > kMaxTableDimension) throw SpecError("random_junta: k too large");
  Rng rng(s.seed);
  std::vector<std::size_t> perm(s.n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < s.k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, s.n - i));
    std::swap(perm[i], perm[j]);
  }
  JuntaSpec out;
  out.n = s.n;
  out.vars = IndexSet(std::vector<std::size_t>(perm.begin(), perm.begin() + s.k));
  out.core = random_bits(std::size_t{1} << s.k, rng);
  return out;
}

FunctionOracle make_function(const FunctionSpec& spec) {
  return std::visit([](const auto& s) { return build(s); }, spec);
}

FunctionOracle truth_table(std::vector<bool> table) {
  const std::size_t n = table_dimension(table.size());
  return make_function(TruthTableSpec{n, std::move(table)});
}

FunctionOracle literal(std::size_t n, std::size_t index, bool positive) {
  return make_function(LiteralSpec{n, index, positive});
}

FunctionOracle constant(std::size_t n, bool value) {
  return make_function(ConstantSpec{n, value});
}

FunctionOracle parity(std::size_t n, IndexSet vars) {
  return make_function(ParitySpec{n, std::move(vars)});
}

FunctionOracle majority(std::size_t n, IndexSet vars) {
  return make_function(MajoritySpec{n, std::move(vars)});
}

FunctionOracle junta_function(std::size_t n, IndexSet vars, std::vector<bool> core) {
  return make_function(JuntaSpec{n, std::move(vars), std::move(core)});
}

FunctionOracle random_junta(std::size_t n, std::size_t k, std::uint64_t seed) {
  return make_function(RandomJuntaSpec{n, k, seed});
}

FunctionOracle random_table(std::size_t n, std::uint64_t seed) {
  return make_function(RandomTableSpec{n, seed});
}

FunctionOracle tribes(std::size_t n, std::size_t width) {
  return make_function(TribesSpec{n, width});
}

// --- serialization ---------------------------------------------------------

std::size_t spec_dimension(const FunctionSpec& spec) {
  return std::visit([](const auto& s) { return s.n; }, spec);
}

std::string spec_kind(const FunctionSpec& spec) {
  struct Kind {
    std::string operator()(const TruthTableSpec&) const { return "truth_table"; }
    std::string operator()(const LiteralSpec&) const { return "literal"; }
    std::string operator()(const ConstantSpec&) const { return "constant"; }
    std::string operator()(const ParitySpec&) const { return "parity"; }
    std::string operator()(const MajoritySpec&) const { return "majority"; }
    std::string operator()(const JuntaSpec&) const { return "junta"; }
    std::string operator()(const RandomJuntaSpec&) const { return "random_junta"; }
    std::string operator()(const RandomTableSpec&) const { return "random_table"; }
    std::string operator()(const TribesSpec&) const { return "tribes"; }
  };
  return std::visit(Kind{}, spec);
}

std::string bits_to_string(const std::vector<bool>& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) s[i] = '1';
  }
  return s;
}

std::vector<bool> bits_from_string(const std::string& s) {
  std::vector<bool> bits(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw SpecError("invalid bit string: " + s);
    bits[i] = s[i] == '1';
  }
  return bits;
}

void to_json(nlohmann::json& j, const IndexSet& s) { j = s.to_one_based(); }

void from_json(const nlohmann::json& j, IndexSet& s) {
  s = IndexSet::from_one_based(j.get<std::vector<std::size_t>>());
}

void to_json(nlohmann::json& j, const FunctionSpec& spec) {
  j = nlohmann::json{{"kind", spec_kind(spec)}, {"n", spec_dimension(spec)}};
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TruthTableSpec>) {
          j["table"] = bits_to_string(s.table);
        } else if constexpr (std::is_same_v<T, LiteralSpec>) {
          j["index"] = s.index + 1;
          j["positive"] = s.positive;
        } else if constexpr (std::is_same_v<T, ConstantSpec>) {
          j["value"] = s.value ? 1 : 0;
        } else if constexpr (std::is_same_v<T, ParitySpec> ||
                             std::is_same_v<T, MajoritySpec>) {
          j["vars"] = s.vars;
        } else if constexpr (std::is_same_v<T, JuntaSpec>) {
          j["vars"] = s.vars;
          j["core"] = bits_to_string(s.core);
        } else if constexpr (std::is_same_v<T, RandomJuntaSpec>) {
          j["k"] = s.k;
          j["seed"] = s.seed;
        } else if constexpr (std::is_same_v<T, RandomTableSpec>) {
          j["seed"] = s.seed;
        } else if constexpr (std::is_same_v<T, TribesSpec>) {
          j["width"] = s.width;
        }
      },
      spec);
}

void from_json(const nlohmann::json& j, FunctionSpec& spec) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "truth_table") {
    TruthTableSpec s;
    s.table = bits_from_string(j.at("table").get<std::string>());
    s.n = table_dimension(s.table.size());
    if (j.contains("n") && j["n"].get<std::size_t>() != s.n) {
      throw SpecError("truth_table: n does not match the table length");
    }
    spec = std::move(s);
    return;
  }
  const auto n = j.at("n").get<std::size_t>();
  if (kind == "literal") {
    const auto index = j.at("index").get<std::size_t>();
    if (index == 0) throw SpecError("literal: index is 1-based");
    spec = LiteralSpec{n, index - 1, j.value("positive", true)};
  } else if (kind == "constant") {
    spec = ConstantSpec{n, j.at("value").get<int>() != 0};
  } else if (kind == "parity") {
    spec = ParitySpec{n, j.at("vars").get<IndexSet>()};
  } else if (kind == "majority") {
    spec = MajoritySpec{n, j.at("vars").get<IndexSet>()};
  } else if (kind == "junta") {
    spec = JuntaSpec{n, j.at("vars").get<IndexSet>(),
                     bits_from_string(j.at("core").get<std::string>())};
  } else if (kind == "random_junta") {
    spec = RandomJuntaSpec{n, j.at("k").get<std::size_t>(),
                           j.at("seed").get<std::uint64_t>()};
  } else if (kind == "random_table") {
    spec = RandomTableSpec{n, j.at("seed").get<std::uint64_t>()};
  } else if (kind == "tribes") {
    spec = TribesSpec{n, j.at("width").get<std::size_t>()};
  } else {
    throw SpecError("unknown function kind: " + kind);
  }
}

FunctionSpec parse_function_spec(const nlohmann::json& j) {
  try {
    auto spec = j.get<FunctionSpec>();
    make_function(spec);  // validates parameters
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed function record: ") + e.what());
  }
}

}  // namespace junta
