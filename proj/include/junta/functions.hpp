#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "junta/function_spec.hpp"
#include "junta/oracle.hpp"

namespace junta {

// Largest n for which full truth tables are materialized.
inline constexpr std::size_t kMaxTableDimension = 24;

FunctionOracle make_function(const FunctionSpec& spec);

FunctionOracle truth_table(std::vector<bool> table);
FunctionOracle literal(std::size_t n, std::size_t index, bool positive = true);
FunctionOracle constant(std::size_t n, bool value);
FunctionOracle parity(std::size_t n, IndexSet vars);
FunctionOracle majority(std::size_t n, IndexSet vars);
FunctionOracle junta_function(std::size_t n, IndexSet vars, std::vector<bool> core);
FunctionOracle random_junta(std::size_t n, std::size_t k, std::uint64_t seed);
FunctionOracle random_table(std::size_t n, std::uint64_t seed);
FunctionOracle tribes(std::size_t n, std::size_t width);

/// The concrete junta a RandomJuntaSpec stands for.
JuntaSpec realize(const RandomJuntaSpec& spec);

/// Parses a function record, reporting any problem as SpecError.
FunctionSpec parse_function_spec(const nlohmann::json& j);

}  // namespace junta
