// Command line front end.
//
//   wdwave run --config cfg.json [--out DIR] [--format json|csv]
//   wdwave predict --mu 2 --p 2 --n 3 --operator energy
//   wdwave verify
//
// The worker count of parallel sweeps is capped by WDWAVE_WORKERS.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wdwave/acceptance.hpp"
#include "wdwave/wdwave.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override,
            const std::string& format_override) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot open config: " << config_path << "\n";
    return 2;
  }
  nlohmann::json j = nlohmann::json::parse(in);
  wdwave::ExperimentConfig cfg = wdwave::config_from_json(j);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (!format_override.empty()) cfg.format = format_override;
  cfg.validate();

  wdwave::ExperimentReport report = wdwave::run_experiment(cfg);
  auto paths = wdwave::emit(report, cfg.format, cfg.out_dir);

  for (const auto& s : report.series)
    std::cout << s.name << ": fitted " << s.fit.exponent << " vs predicted "
              << s.prediction.exponent << " (tol " << s.tolerance << ") -> "
              << (s.pass ? "pass" : "FAIL") << "\n";
  for (const auto& c : report.checks)
    std::cout << c.name << ": " << c.value << " (threshold " << c.threshold << ") -> "
              << (c.pass ? "pass" : "FAIL") << "\n";
  for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
  std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
  return report.pass ? 0 : 1;
}

int cmd_predict(double mu, double p, int n, const std::string& op) {
  wdwave::DualPair pair = wdwave::DualPair::from_p(p);
  wdwave::DecayPrediction pred;
  if (op == "sol") {
    pred = wdwave::solution_op_prediction(mu, pair, n);
  } else if (op == "energy") {
    pred = wdwave::energy_op_prediction(mu, pair, n);
  } else {
    std::cerr << "--operator must be sol or energy\n";
    return 2;
  }
  nlohmann::ordered_json j{{"mu", mu},
                           {"p", pair.p},
                           {"q", pair.q},
                           {"n", n},
                           {"operator", op},
                           {"exponent", pred.exponent},
                           {"log_power", pred.log_power},
                           {"regularity", pred.regularity},
                           {"rule", pred.rule},
                           {"note", pred.note}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weakly dissipative wave equation: multipliers, decay rates, experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  std::string config_path, out_dir, format;
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides config)");
  run->add_option("--format", format, "json or csv (overrides config)")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* predict = app.add_subcommand("predict", "print a decay prediction");
  double mu = 2.0, p = 2.0;
  int n = 3;
  std::string op = "energy";
  predict->add_option("--mu", mu, "dissipation strength")->required();
  predict->add_option("--p", p, "Lebesgue exponent in (1, 2]");
  predict->add_option("--n", n, "space dimension");
  predict->add_option("--operator", op, "sol or energy")
      ->check(CLI::IsMember({"sol", "energy"}));

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, format);
    if (predict->parsed()) return cmd_predict(mu, p, n, op);
    if (verify->parsed()) {
      auto results = wdwave::run_acceptance(0, &std::cout);
      bool all = true;
      for (const auto& r : results) all = all && r.pass;
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
