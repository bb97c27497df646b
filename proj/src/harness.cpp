#include "junta/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <thread>

#include "junta/errors.hpp"
#include "junta/functions.hpp"

namespace junta {

namespace {

// Calls body(i) for i in [0, count) on up to `workers` threads.
template <typename Body>
void parallel_for(std::size_t count, std::size_t workers, Body body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  try {
    ExperimentConfig cfg;
    cfg.k = j.at("k").get<std::size_t>();
    cfg.eps = j.at("eps").get<double>();
    cfg.trials = j.value("trials", cfg.trials);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.parallelism = j.value("parallelism", cfg.parallelism);
    cfg.c_rounds = j.value("c_rounds", cfg.c_rounds);
    cfg.accept_threshold = j.value("accept_threshold", cfg.accept_threshold);
    cfg.reject_threshold = j.value("reject_threshold", cfg.reject_threshold);
    if (cfg.trials < 1) throw SpecError("experiment: trials must be at least 1");
    for (const auto& inst : j.at("instances")) {
      InstanceConfig ic;
      ic.name = inst.at("name").get<std::string>();
      ic.function = parse_function_spec(inst.at("function"));
      ic.distribution = inst.at("distribution");
      ic.certify = inst.value("certify", false);
      if (inst.contains("k")) ic.k = inst["k"].get<std::size_t>();
      if (inst.contains("eps")) ic.eps = inst["eps"].get<double>();
      cfg.instances.push_back(std::move(ic));
    }
    if (j.contains("output")) {
      cfg.csv_path = j["output"].value("csv", "");
      cfg.json_path = j["output"].value("json", "");
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed experiment config: ") + e.what());
  }
}

TrialRecord replay_trial(const FunctionOracle& f, const Distribution& D, std::size_t k,
                         double eps, std::uint64_t seed, double c_rounds) {
  const TesterParams params = derive_params(k, eps, seed, c_rounds);
  const Transcript t = test_distribution_free(f, D, params);
  TrialRecord r;
  r.seed = seed;
  r.outcome = t.verdict.outcome;
  r.site = t.verdict.site;
  r.queries = t.total_queries;
  r.evidence_ok = replay_evidence(f, t.verdict);
  return r;
}

InstanceReport run_trials(const FunctionOracle& f, const Distribution& D, std::size_t k,
                          double eps, std::size_t trials, std::uint64_t base_seed,
                          std::size_t parallelism, double c_rounds) {
  const auto start = std::chrono::steady_clock::now();
  InstanceReport rep;
  rep.k = k;
  rep.eps = eps;
  rep.trials = trials;
  rep.budget = query_budget(derive_params(k, eps, base_seed, c_rounds));
  rep.records.resize(trials);
  parallel_for(trials, parallelism, [&](std::size_t i) {
    rep.records[i] = replay_trial(f, D, k, eps, trial_seed(base_seed, i), c_rounds);
  });

  std::size_t accepts = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& r : rep.records) {
    if (r.outcome == Outcome::kAccept) {
      ++accepts;
    } else {
      ++rep.reject_sites[to_string(*r.site)];
    }
    if (r.queries > rep.budget) ++rep.budget_violations;
    if (!r.evidence_ok) ++rep.evidence_failures;
    rep.max_queries = std::max(rep.max_queries, r.queries);
    const auto q = static_cast<double>(r.queries);
    sum += q;
    sum_sq += q * q;
  }
  const auto t = static_cast<double>(trials);
  rep.accept_rate = static_cast<double>(accepts) / t;
  rep.reject_rate = static_cast<double>(trials - accepts) / t;
  rep.mean_queries = sum / t;
  rep.stddev_queries = std::sqrt(std::max(0.0, sum_sq / t - rep.mean_queries * rep.mean_queries));
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport report;
  for (const auto& inst : cfg.instances) {
    const std::size_t k = inst.k.value_or(cfg.k);
    const double eps = inst.eps.value_or(cfg.eps);
    InstanceReport row;
    try {
      const FunctionOracle f = make_function(inst.function);
      const Distribution D = parse_distribution(inst.distribution);
      std::optional<DistanceReport> certificate;
      std::optional<std::string> certificate_error;
      if (inst.certify) {
        try {
          certificate = distance_to_nearest_kjunta(f, D, k);
        } catch (const CapacityError& e) {
          certificate_error = e.what();
        }
      }
      row = run_trials(f, D, k, eps, cfg.trials, cfg.base_seed, cfg.parallelism,
                       cfg.c_rounds);
      row.certificate = std::move(certificate);
      row.error = std::move(certificate_error);
    } catch (const std::exception& e) {
      row.k = k;
      row.eps = eps;
      row.error = e.what();
    }
    row.name = inst.name;
    report.instances.push_back(std::move(row));
  }
  return report;
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  const std::vector<std::string> sites = {"8-overflow", "14-uniformjunta", "15-constant",
                                          "23-Gcounter", "26-final"};
  out << "instance,k,eps,trials,accept_rate,reject_rate";
  for (const auto& s : sites) out << ",reject_" << s;
  out << ",mean_queries,max_queries,stddev_queries,budget,budget_violations,"
         "evidence_failures,certified_distance,wall_time_s,error\n";
  out << std::setprecision(10);
  for (const auto& r : report.instances) {
    out << csv_escape(r.name) << ',' << r.k << ',' << r.eps << ',' << r.trials << ','
        << r.accept_rate << ',' << r.reject_rate;
    for (const auto& s : sites) {
      auto it = r.reject_sites.find(s);
      out << ',' << (it == r.reject_sites.end() ? 0 : it->second);
    }
    out << ',' << r.mean_queries << ',' << r.max_queries << ',' << r.stddev_queries << ','
        << r.budget << ',' << r.budget_violations << ',' << r.evidence_failures << ',';
    if (r.certificate) out << r.certificate->distance.value;
    out << ',' << r.wall_time_s << ',' << csv_escape(r.error.value_or("")) << '\n';
  }
}

void to_json(nlohmann::json& j, const TrialRecord& r) {
  j = {{"seed", r.seed},
       {"outcome", to_string(r.outcome)},
       {"queries", r.queries},
       {"evidence_ok", r.evidence_ok}};
  if (r.site) j["reject_site"] = to_string(*r.site);
}

void to_json(nlohmann::json& j, const InstanceReport& r) {
  j = {{"name", r.name},
       {"k", r.k},
       {"eps", r.eps},
       {"trials", r.trials},
       {"accept_rate", r.accept_rate},
       {"reject_rate", r.reject_rate},
       {"reject_sites", r.reject_sites},
       {"mean_queries", r.mean_queries},
       {"max_queries", r.max_queries},
       {"stddev_queries", r.stddev_queries},
       {"budget", r.budget},
       {"budget_violations", r.budget_violations},
       {"evidence_failures", r.evidence_failures},
       {"wall_time_s", r.wall_time_s},
       {"records", r.records}};
  if (r.certificate) j["certificate"] = *r.certificate;
  if (r.error) j["error"] = *r.error;
}

void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = {{"instances", r.instances}};
}

// --- sweep -----------------------------------------------------------------

bool SweepReport::ratios_bounded(double factor) const {
  return std::all_of(rows.begin(), rows.end(), [&](const SweepRow& r) {
    return r.observed_ratio <= factor * median_ratio;
  });
}

std::size_t SweepReport::total_violations() const {
  std::size_t v = 0;
  for (const auto& r : rows) v += r.violations;
  return v;
}

SweepReport sweep_budget(const std::vector<std::size_t>& k_list,
                         const std::vector<double>& eps_list, std::size_t trials,
                         std::uint64_t base_seed, std::size_t n, std::size_t parallelism) {
  if (k_list.empty() || eps_list.empty()) throw ContractError("sweep: empty grid");
  SweepReport report;
  std::vector<double> ratios;
  for (std::size_t k : k_list) {
    const FunctionOracle f = random_junta(n, k, base_seed + k);
    const Distribution D = Distribution::uniform(n);
    for (double eps : eps_list) {
      const InstanceReport run = run_trials(f, D, k, eps, trials, base_seed, parallelism);
      SweepRow row;
      row.k = k;
      row.eps = eps;
      row.max_observed = run.max_queries;
      row.mean_observed = run.mean_queries;
      row.budget = run.budget;
      const double ratio = static_cast<double>(k) / eps;
      row.scale = ratio * std::log(ratio);
      row.observed_ratio = static_cast<double>(row.max_observed) / row.scale;
      row.budget_ratio = static_cast<double>(row.budget) / row.scale;
      row.violations = run.budget_violations;
      ratios.push_back(row.observed_ratio);
      report.max_ratio = std::max(report.max_ratio, row.observed_ratio);
      report.max_budget_ratio = std::max(report.max_budget_ratio, row.budget_ratio);
      report.rows.push_back(row);
    }
  }
  report.median_ratio = median_of(ratios);
  return report;
}

void write_csv(std::ostream& out, const SweepReport& report) {
  out << "k,eps,max_observed,mean_observed,budget,scale,observed_ratio,budget_ratio,"
         "violations\n";
  out << std::setprecision(10);
  for (const auto& r : report.rows) {
    out << r.k << ',' << r.eps << ',' << r.max_observed << ',' << r.mean_observed << ','
        << r.budget << ',' << r.scale << ',' << r.observed_ratio << ',' << r.budget_ratio
        << ',' << r.violations << '\n';
  }
}

void to_json(nlohmann::json& j, const SweepReport& r) {
  auto rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k", row.k},
                    {"eps", row.eps},
                    {"max_observed", row.max_observed},
                    {"mean_observed", row.mean_observed},
                    {"budget", row.budget},
                    {"scale", row.scale},
                    {"observed_ratio", row.observed_ratio},
                    {"budget_ratio", row.budget_ratio},
                    {"violations", row.violations}});
  }
  j = {{"rows", rows},
       {"median_ratio", r.median_ratio},
       {"max_ratio", r.max_ratio},
       {"max_budget_ratio", r.max_budget_ratio}};
}

// --- Monte-Carlo hybrid distance -------------------------------------------

double estimate_hybrid_disagreement(const FunctionOracle& f, const Distribution& D, const IndexSet& J,
                       std::size_t samples, Rng& rng) {
  if (samples == 0) throw ContractError("estimate_hybrid_disagreement: samples must be positive");
  const std::size_t n = f.dimension();
  const Point mask = J.mask(n);
  std::size_t mismatches = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point x = D.sample(rng);
    const Point y = Point::random(n, rng);
    if (f(x) != f(select(mask, x, y))) ++mismatches;
  }
  return static_cast<double>(mismatches) / static_cast<double>(samples);
}

// --- uniform-junta calibration --------------------------------------------

std::vector<CalibrationInstance> far_instance_panel(std::size_t k, double eps,
                                                    std::size_t m) {
  std::vector<std::pair<std::string, FunctionSpec>> candidates;
  if (k + 1 <= m) {
    candidates.emplace_back("parity" + std::to_string(k + 1),
                            ParitySpec{m, IndexSet::all(k + 1)});
  }
  if (2 * k + 1 <= m) {
    candidates.emplace_back("majority" + std::to_string(2 * k + 1),
                            MajoritySpec{m, IndexSet::all(2 * k + 1)});
  }
  // A k-junta with a few table entries flipped, just past the eps boundary.
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    Rng rng(seed * 7919 + k);
    const JuntaSpec base = realize(RandomJuntaSpec{m, k, rng()});
    const FunctionOracle g = make_function(base);
    TruthTableSpec noisy{m, std::vector<bool>(std::size_t{1} << m)};
    for (std::uint64_t idx = 0; idx < noisy.table.size(); ++idx) {
      noisy.table[idx] = g(Point::from_index(m, idx));
    }
    const auto flips = static_cast<std::size_t>(
        std::ceil(2.0 * eps * static_cast<double>(noisy.table.size())));
    for (std::size_t i = 0; i < flips; ++i) {
      const auto idx = uniform_index(rng, noisy.table.size());
      noisy.table[idx] = !noisy.table[idx];
    }
    candidates.emplace_back("noisy_junta_s" + std::to_string(seed), std::move(noisy));
  }
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    candidates.emplace_back("random_table_s" + std::to_string(seed),
                            RandomTableSpec{m, seed});
  }

  std::vector<CalibrationInstance> panel;
  const Distribution U = Distribution::uniform(m);
  for (auto& [name, spec] : candidates) {
    DistanceReport cert = distance_to_nearest_kjunta(make_function(spec), U, k);
    if (cert.distance.value >= eps) {
      panel.push_back({name, std::move(spec), std::move(cert)});
    }
  }
  return panel;
}

std::vector<CalibrationRow> calibrate_uniform_junta(
    const std::vector<std::size_t>& k_list, const std::vector<double>& c_list,
    double eps, double delta, std::size_t trials, std::uint64_t base_seed) {
  std::vector<CalibrationRow> rows;
  for (std::size_t k : k_list) {
    for (const auto& inst : far_instance_panel(k, eps)) {
      const FunctionOracle g = make_function(inst.function);
      for (double c : c_list) {
        const UniformJuntaParams p = uniform_junta_params(k, eps, delta, c);
        CalibrationRow row;
        row.instance = inst.name;
        row.k = k;
        row.c_rounds = c;
        row.trials = trials;
        row.target = 1.0 - delta;
        row.budget = uniform_junta_budget(p);
        row.certified_distance = inst.certificate.distance.value;
        std::size_t rejects = 0;
        double sum = 0.0;
        for (std::size_t i = 0; i < trials; ++i) {
          CountingOracle counter(g);
          Rng rng(trial_seed(base_seed, i));
          if (!uniform_junta_test(counter, p, rng).accept) ++rejects;
          sum += static_cast<double>(counter.count());
          row.max_queries = std::max(row.max_queries, counter.count());
        }
        row.reject_rate = static_cast<double>(rejects) / static_cast<double>(trials);
        row.mean_queries = sum / static_cast<double>(trials);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<CalibrationRow>& rows) {
  out << "instance,k,c_rounds,trials,reject_rate,target,mean_queries,max_queries,budget,"
         "certified_distance\n";
  out << std::setprecision(10);
  for (const auto& r : rows) {
    out << csv_escape(r.instance) << ',' << r.k << ',' << r.c_rounds << ',' << r.trials
        << ',' << r.reject_rate << ',' << r.target << ',' << r.mean_queries << ','
        << r.max_queries << ',' << r.budget << ',' << r.certified_distance << '\n';
  }
}

}  // namespace junta
