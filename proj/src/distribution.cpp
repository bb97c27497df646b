#include "junta/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "junta/errors.hpp"

namespace junta {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::uint64_t kMaxDenominator = std::uint64_t{1} << 62;

std::uint64_t to_u64(const cpp_int& v) { return v.convert_to<std::uint64_t>(); }

}  // namespace

std::string rational_to_string(const Rational& q) {
  const cpp_int num = boost::multiprecision::numerator(q);
  const cpp_int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_from_string(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(cpp_int(s));
    const cpp_int den(s.substr(slash + 1));
    if (den == 0) throw SpecError("zero denominator in " + s);
    return Rational(cpp_int(s.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw SpecError("not a rational number: " + s);
  }
}

Distribution Distribution::uniform(std::size_t n) {
  Distribution d;
  d.kind_ = Kind::kUniform;
  d.n_ = n;
  if (n <= 62) d.denominator_ = std::uint64_t{1} << n;
  return d;
}

Distribution Distribution::finite_support(std::vector<Point> points,
                                          std::vector<double> weights) {
  if (points.empty()) throw SpecError("finite support must be nonempty");
  if (points.size() != weights.size()) {
    throw SpecError("finite support: one weight per point");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw SpecError("finite support weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw SpecError("finite support weights must sum to 1");
  }
  Distribution d;
  d.kind_ = Kind::kFiniteSupport;
  d.n_ = points.front().size();
  d.points_ = std::move(points);
  d.weights_ = std::move(weights);
  d.index_support();
  return d;
}

Distribution Distribution::finite_support(std::vector<Point> points,
                                          std::vector<Rational> weights) {
  if (points.empty()) throw SpecError("finite support must be nonempty");
  if (points.size() != weights.size()) {
    throw SpecError("finite support: one weight per point");
  }
  cpp_int common = 1;
  Rational total = 0;
  for (const auto& w : weights) {
    if (w <= 0) throw SpecError("finite support weights must be positive");
    total += w;
    common = boost::multiprecision::lcm(common, boost::multiprecision::denominator(w));
    if (common > kMaxDenominator) {
      throw SpecError("finite support weights need too large a common denominator");
    }
  }
  if (total != 1) throw SpecError("finite support weights must sum to exactly 1");

  Distribution d;
  d.kind_ = Kind::kFiniteSupport;
  d.n_ = points.front().size();
  d.points_ = std::move(points);
  d.denominator_ = to_u64(common);
  for (const auto& w : weights) {
    const cpp_int num = boost::multiprecision::numerator(w) *
                        (common / boost::multiprecision::denominator(w));
    d.numerators_.push_back(to_u64(num));
    d.weights_.push_back(static_cast<double>(d.numerators_.back()) /
                         static_cast<double>(d.denominator_));
  }
  d.index_support();
  return d;
}

Distribution Distribution::product(std::vector<double> p) {
  for (double pi : p) {
    if (!(pi >= 0.0 && pi <= 1.0)) {
      throw SpecError("product probabilities must lie in [0,1]");
    }
  }
  Distribution d;
  d.kind_ = Kind::kProduct;
  d.n_ = p.size();
  d.product_p_ = std::move(p);
  return d;
}

void Distribution::index_support() {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != n_) {
      throw SpecError("finite support points must share one dimension");
    }
    if (!lookup_.emplace(points_[i], i).second) {
      throw SpecError("finite support points must be distinct: " +
                      points_[i].to_string());
    }
  }
  double acc = 0.0;
  for (double w : weights_) cumulative_.push_back(acc += w);
  std::uint64_t nacc = 0;
  for (auto num : numerators_) cumulative_numerators_.push_back(nacc += num);
}

Point Distribution::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::kUniform:
      return Point::random(n_, rng);
    case Kind::kFiniteSupport: {
      std::size_t i;
      if (!numerators_.empty()) {
        const std::uint64_t r = uniform_index(rng, denominator_);
        i = static_cast<std::size_t>(
            std::upper_bound(cumulative_numerators_.begin(),
                             cumulative_numerators_.end(), r) -
            cumulative_numerators_.begin());
      } else {
        const double r = uniform_unit(rng) * cumulative_.back();
        i = static_cast<std::size_t>(
            std::upper_bound(cumulative_.begin(), cumulative_.end(), r) -
            cumulative_.begin());
        i = std::min(i, points_.size() - 1);
      }
      return points_[i];
    }
    case Kind::kProduct: {
      Point x(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        if (uniform_unit(rng) < product_p_[i]) x.set(i, true);
      }
      return x;
    }
  }
  return Point(n_);
}

double Distribution::weight(const Point& x) const {
  if (x.size() != n_) throw ContractError("weight: dimension mismatch");
  switch (kind_) {
    case Kind::kUniform:
      return std::ldexp(1.0, -static_cast<int>(n_));
    case Kind::kFiniteSupport: {
      auto it = lookup_.find(x);
      return it == lookup_.end() ? 0.0 : weights_[it->second];
    }
    case Kind::kProduct: {
      double w = 1.0;
      for (std::size_t i = 0; i < n_; ++i) w *= x[i] ? product_p_[i] : 1.0 - product_p_[i];
      return w;
    }
  }
  return 0.0;
}

std::optional<Rational> Distribution::exact_weight(const Point& x) const {
  if (x.size() != n_) throw ContractError("weight: dimension mismatch");
  if (kind_ == Kind::kUniform) return Rational(cpp_int(1), cpp_int(1) << n_);
  if (kind_ == Kind::kFiniteSupport && !numerators_.empty()) {
    auto it = lookup_.find(x);
    if (it == lookup_.end()) return Rational(0);
    return Rational(cpp_int(numerators_[it->second]), cpp_int(denominator_));
  }
  return std::nullopt;
}

std::optional<std::uint64_t> Distribution::exact_denominator() const {
  if (denominator_ == 0) return std::nullopt;
  return denominator_;
}

void Distribution::for_each_point(const Visitor& visit, std::size_t max_dimension) const {
  if (kind_ == Kind::kFiniteSupport) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      visit(points_[i], weights_[i], numerators_.empty() ? 0 : numerators_[i]);
    }
    return;
  }
  if (n_ > max_dimension) {
    throw CapacityError("refusing to enumerate 2^" + std::to_string(n_) +
                        " points (cap is 2^" + std::to_string(max_dimension) + ")");
  }
  const std::uint64_t total = std::uint64_t{1} << n_;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Point x = Point::from_index(n_, idx);
    if (kind_ == Kind::kUniform) {
      visit(x, std::ldexp(1.0, -static_cast<int>(n_)), 1);
    } else {
      const double w = weight(x);
      if (w > 0.0) visit(x, w, 0);
    }
  }
}

Distribution random_finite_support(std::size_t n, std::size_t size, std::uint64_t seed) {
  if (size == 0) throw SpecError("random finite support needs size >= 1");
  if (n < 63 && size > (std::uint64_t{1} << n)) {
    throw SpecError("random finite support larger than {0,1}^n");
  }
  Rng rng(seed);
  std::vector<Point> points;
  std::unordered_set<Point, PointHash> seen;
  while (points.size() < size) {
    Point x = Point::random(n, rng);
    if (seen.insert(x).second) points.push_back(std::move(x));
  }
  // Integer weights 1 + floor(2^20 * Exp(1)): normalized, a Dirichlet(1,...,1)
  // draw up to integer rounding, and exactly representable as rationals.
  std::vector<std::uint64_t> counts(size);
  std::uint64_t total = 0;
  for (auto& c : counts) {
    const double e = -std::log1p(-uniform_unit(rng));
    c = 1 + static_cast<std::uint64_t>(std::floor(std::ldexp(e, 20)));
    total += c;
  }
  std::vector<Rational> weights;
  weights.reserve(size);
  for (auto c : counts) weights.emplace_back(cpp_int(c), cpp_int(total));
  Distribution d = Distribution::finite_support(std::move(points), std::move(weights));
  d.set_origin({n, size, seed});
  return d;
}

Measure disagreement_weight(const FunctionOracle& f, const FunctionOracle& g,
                            const Distribution& D) {
  if (f.dimension() != D.dimension() || g.dimension() != D.dimension()) {
    throw ContractError("disagreement_weight: dimension mismatch");
  }
  double total = 0.0;
  cpp_int numer = 0;
  D.for_each_point([&](const Point& x, double w, std::uint64_t num) {
    if (f(x) != g(x)) {
      total += w;
      numer += num;
    }
  });
  Measure m;
  m.value = total;
  if (auto den = D.exact_denominator()) {
    m.exact = Rational(numer, cpp_int(*den));
    m.value = m.exact->convert_to<double>();
  }
  return m;
}

// --- serialization ---------------------------------------------------------

void to_json(nlohmann::json& j, const Distribution& D) {
  if (D.origin()) {
    j = {{"kind", "random_finite_support"},
         {"n", D.origin()->n},
         {"size", D.origin()->size},
         {"seed", D.origin()->seed}};
    return;
  }
  switch (D.kind()) {
    case Distribution::Kind::kUniform:
      j = {{"kind", "uniform"}, {"n", D.dimension()}};
      return;
    case Distribution::Kind::kProduct:
      j = {{"kind", "product"}, {"p", D.probabilities()}};
      return;
    case Distribution::Kind::kFiniteSupport: {
      auto support = nlohmann::json::array();
      for (const auto& x : D.support()) {
        nlohmann::json entry = {{"x", x.to_string()}};
        if (auto q = D.exact_weight(x); q && D.exact_denominator()) {
          entry["w"] = rational_to_string(*q);
        } else {
          entry["w"] = D.weight(x);
        }
        support.push_back(std::move(entry));
      }
      j = {{"kind", "finite_support"}, {"n", D.dimension()}, {"support", support}};
      return;
    }
  }
}

Distribution parse_distribution(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "uniform") return Distribution::uniform(j.at("n").get<std::size_t>());
    if (kind == "product") {
      return Distribution::product(j.at("p").get<std::vector<double>>());
    }
    if (kind == "random_finite_support") {
      return random_finite_support(j.at("n").get<std::size_t>(),
                                   j.at("size").get<std::size_t>(),
                                   j.at("seed").get<std::uint64_t>());
    }
    if (kind == "finite_support") {
      std::vector<Point> points;
      std::vector<Rational> exact;
      std::vector<double> approx;
      bool all_exact = true;
      for (const auto& entry : j.at("support")) {
        points.push_back(Point::from_string(entry.at("x").get<std::string>()));
        const auto& w = entry.at("w");
        if (w.is_string()) {
          exact.push_back(rational_from_string(w.get<std::string>()));
          approx.push_back(exact.back().convert_to<double>());
        } else {
          all_exact = false;
          approx.push_back(w.get<double>());
        }
      }
      if (j.contains("n") && !points.empty() &&
          j["n"].get<std::size_t>() != points.front().size()) {
        throw SpecError("finite_support: n does not match the point length");
      }
      if (all_exact) return Distribution::finite_support(std::move(points), std::move(exact));
      return Distribution::finite_support(std::move(points), std::move(approx));
    }
    throw SpecError("unknown distribution kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed distribution record: ") + e.what());
  }
}

}  // namespace junta
