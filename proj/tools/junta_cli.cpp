// Command-line front end: single tester runs, experiment batches, exact
// distance certificates, the query-budget sweep and uniform-junta calibration.
//
// Exit status 0 means the command ran (a reject verdict is a result, not a
// failure); 1 means a bad record, capacity limit or I/O problem.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "junta/bruteforce.hpp"
#include "junta/distribution.hpp"
#include "junta/errors.hpp"
#include "junta/functions.hpp"
#include "junta/harness.hpp"
#include "junta/tester.hpp"

namespace {

using nlohmann::json;

// Accepts inline JSON or @path.
json load_record(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw junta::SpecError("cannot open " + arg.substr(1));
    return json::parse(in);
  }
  return json::parse(arg);
}

junta::Distribution load_distribution(const std::string& arg, std::size_t n) {
  if (arg.empty()) return junta::Distribution::uniform(n);
  return junta::parse_distribution(load_record(arg));
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw junta::SpecError("cannot write " + path);
  out << contents;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution-free k-junta tester"};
  app.require_subcommand(1);

  // test
  auto* test = app.add_subcommand("test", "Run the tester once and print its transcript");
  std::string fn_arg, dist_arg;
  std::size_t k = 1;
  double eps = 0.1;
  std::uint64_t seed = 1;
  double c_rounds = junta::kDefaultUniformJuntaRounds;
  test->add_option("-f,--function", fn_arg, "Function record (JSON or @file)")->required();
  test->add_option("-d,--distribution", dist_arg,
                   "Distribution record (JSON or @file); uniform if omitted");
  test->add_option("-k", k, "Junta size")->check(CLI::PositiveNumber);
  test->add_option("-e,--eps", eps, "Distance parameter in (0,1)");
  test->add_option("-s,--seed", seed, "Generator seed");
  test->add_option("--c-rounds", c_rounds, "Uniform-junta round constant");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a batch described by a config file");
  std::string config_path, csv_path, json_path;
  experiment->add_option("config", config_path, "Experiment config (JSON)")->required();
  experiment->add_option("--csv", csv_path, "CSV report path (overrides config)");
  experiment->add_option("--json", json_path, "JSON report path (overrides config)");

  // distance
  auto* distance = app.add_subcommand("distance", "Exact distance to the nearest k-junta");
  distance->add_option("-f,--function", fn_arg, "Function record (JSON or @file)")->required();
  distance->add_option("-d,--distribution", dist_arg, "Distribution record; uniform if omitted");
  distance->add_option("-k", k, "Junta size");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Observed and budgeted queries over a (k, eps) grid");
  std::vector<std::size_t> k_list = {1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> eps_list = {0.05, 0.1, 0.2};
  std::size_t trials = 20;
  std::size_t n = 128;
  std::size_t parallelism = 1;
  sweep->add_option("--k", k_list, "Junta sizes")->delimiter(',');
  sweep->add_option("--eps", eps_list, "Distance parameters")->delimiter(',');
  sweep->add_option("-t,--trials", trials, "Trials per cell");
  sweep->add_option("-s,--seed", seed, "Base seed");
  sweep->add_option("-n", n, "Dimension of the random juntas");
  sweep->add_option("-j,--parallelism", parallelism, "Worker threads");
  sweep->add_option("--csv", csv_path, "CSV output path");
  sweep->add_option("--json", json_path, "JSON output path");

  // calibrate-uj
  auto* calibrate = app.add_subcommand("calibrate-uj", "Calibrate the uniform-junta round constant");
  std::vector<std::size_t> cal_k = {1, 2, 3};
  std::vector<double> cal_c = {1.0, 2.0, 3.0};
  double cal_eps = 1.0 / 30.0;
  double cal_delta = 1.0 / 15.0;
  std::size_t cal_trials = 1000;
  calibrate->add_option("--k", cal_k, "Junta sizes")->delimiter(',');
  calibrate->add_option("--c", cal_c, "Round constants to try")->delimiter(',');
  calibrate->add_option("--eps", cal_eps, "Distance parameter");
  calibrate->add_option("--delta", cal_delta, "Failure probability");
  calibrate->add_option("-t,--trials", cal_trials, "Runs per instance and constant");
  calibrate->add_option("-s,--seed", seed, "Base seed");
  calibrate->add_option("--csv", csv_path, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test) {
      const junta::FunctionSpec spec = junta::parse_function_spec(load_record(fn_arg));
      const junta::FunctionOracle f = junta::make_function(spec);
      const junta::Distribution D = load_distribution(dist_arg, f.dimension());
      const junta::TesterParams params = junta::derive_params(k, eps, seed, c_rounds);
      const junta::Transcript t = junta::test_distribution_free(f, D, params);
      json out = {{"function", spec}, {"distribution", D}, {"transcript", t}};
      std::cout << out.dump(2) << '\n';
    } else if (*experiment) {
      std::ifstream in(config_path);
      if (!in) throw junta::SpecError("cannot open " + config_path);
      junta::ExperimentConfig cfg = junta::parse_experiment_config(json::parse(in));
      if (!csv_path.empty()) cfg.csv_path = csv_path;
      if (!json_path.empty()) cfg.json_path = json_path;
      const junta::ExperimentReport report = junta::run_experiment(cfg);
      std::ostringstream csv;
      junta::write_csv(csv, report);
      if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv.str());
      if (!cfg.json_path.empty()) write_file(cfg.json_path, json(report).dump(2) + "\n");
      std::cout << csv.str();
    } else if (*distance) {
      const junta::FunctionSpec spec = junta::parse_function_spec(load_record(fn_arg));
      const junta::FunctionOracle f = junta::make_function(spec);
      const junta::Distribution D = load_distribution(dist_arg, f.dimension());
      const junta::DistanceReport r = junta::distance_to_nearest_kjunta(f, D, k);
      json out = {{"function", spec}, {"distribution", D}, {"k", k}, {"report", r}};
      std::cout << out.dump(2) << '\n';
    } else if (*sweep) {
      const junta::SweepReport report =
          junta::sweep_budget(k_list, eps_list, trials, seed, n, parallelism);
      std::ostringstream csv;
      junta::write_csv(csv, report);
      if (!csv_path.empty()) write_file(csv_path, csv.str());
      if (!json_path.empty()) write_file(json_path, json(report).dump(2) + "\n");
      std::cout << csv.str() << "median_ratio," << report.median_ratio << "\nmax_ratio,"
                << report.max_ratio << '\n';
    } else if (*calibrate) {
      const auto rows = junta::calibrate_uniform_junta(cal_k, cal_c, cal_eps, cal_delta,
                                                       cal_trials, seed);
      std::ostringstream csv;
      junta::write_csv(csv, rows);
      if (!csv_path.empty()) write_file(csv_path, csv.str());
      std::cout << csv.str();
    }
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
