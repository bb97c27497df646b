#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "junta/oracle.hpp"
#include "junta/point.hpp"
#include "junta/random.hpp"

namespace junta {

using Rational = boost::multiprecision::cpp_rational;

// Exhaustive enumeration of {0,1}^n is refused above this dimension.
inline constexpr std::size_t kMaxEnumerationDimension = 24;

/// A probability together with its exact rational value when the inputs were
/// exact (uniform weights, finite supports given as rationals).
struct Measure {
  double value = 0.0;
  std::optional<Rational> exact;
};

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

// Seeded record for a random finite-support distribution: `size` distinct
// uniform points with independent Exp(1)-like integer weights, normalized.
struct RandomFiniteSupportSpec {
  std::size_t n = 0;
  std::size_t size = 0;
  std::uint64_t seed = 0;
};

/// The sampling side of the model: an arbitrary distribution over {0,1}^n.
/// Immutable; sampling takes the caller's generator.
class Distribution {
 public:
  enum class Kind { kUniform, kFiniteSupport, kProduct };

  static Distribution uniform(std::size_t n);
  /// Floating weights; must be positive and sum to 1 within 1e-12.
  static Distribution finite_support(std::vector<Point> points,
                                     std::vector<double> weights);
  /// Exact weights; must be positive and sum to exactly 1.
  static Distribution finite_support(std::vector<Point> points,
                                     std::vector<Rational> weights);
  /// Independent coordinates with Pr[x_i = 1] = p[i].
  static Distribution product(std::vector<double> p);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return n_; }

  Point sample(Rng& rng) const;
  double weight(const Point& x) const;
  std::optional<Rational> exact_weight(const Point& x) const;

  /// When set, every weight is an integer multiple of 1/denominator.
  std::optional<std::uint64_t> exact_denominator() const;

  const std::vector<Point>& support() const { return points_; }
  const std::vector<double>& support_weights() const { return weights_; }
  const std::vector<double>& probabilities() const { return product_p_; }

  const std::optional<RandomFiniteSupportSpec>& origin() const { return origin_; }
  void set_origin(RandomFiniteSupportSpec origin) { origin_ = origin; }

  /// Visits every point of positive mass: (point, weight, numerator), where
  /// numerator is meaningful only when exact_denominator() is set. Uniform and
  /// product distributions are enumerated exhaustively, which is refused (with
  /// CapacityError) above max_dimension.
  using Visitor = std::function<void(const Point&, double, std::uint64_t)>;
  void for_each_point(const Visitor& visit,
                      std::size_t max_dimension = kMaxEnumerationDimension) const;

 private:
  Distribution() = default;
  void index_support();

  Kind kind_ = Kind::kUniform;
  std::size_t n_ = 0;
  std::vector<Point> points_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> numerators_;  // empty unless exact
  std::uint64_t denominator_ = 0;
  std::vector<double> cumulative_;
  std::vector<std::uint64_t> cumulative_numerators_;
  std::unordered_map<Point, std::size_t, PointHash> lookup_;
  std::vector<double> product_p_;
  std::optional<RandomFiniteSupportSpec> origin_;
};

Distribution random_finite_support(std::size_t n, std::size_t size, std::uint64_t seed);

/// Pr_{x~D}[f(x) != g(x)], exhaustive over the support of D.
Measure disagreement_weight(const FunctionOracle& f, const FunctionOracle& g,
                            const Distribution& D);

void to_json(nlohmann::json& j, const Distribution& D);
Distribution parse_distribution(const nlohmann::json& j);

}  // namespace junta
