// hdclt: config-driven experiment runner.
//
// Exit codes: 0 success, 2 config error, 3 planning (budget) error,
// 4 numerical error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hdclt/bootstrap.hpp"
#include "hdclt/config.hpp"
#include "hdclt/errors.hpp"
#include "hdclt/experiments.hpp"
#include "hdclt/multipliers.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  long seed = -1;
  int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--config", opts.config_path, "Config file (key = value, [tables])");
  sub->add_option("--seed", opts.seed, "Override experiment.master_seed");
  sub->add_option("--threads", opts.threads, "Override experiment.threads");
  sub->add_option("--out", opts.out_dir, "Override experiment.out_dir");
}

hdclt::Config load_config(const CommonOpts& opts, const std::string& name) {
  hdclt::Config cfg = opts.config_path.empty()
                          ? hdclt::Config{}
                          : hdclt::Config::parse_file(opts.config_path);
  cfg.set("experiment.name", name);
  if (opts.seed >= 0) cfg.set("experiment.master_seed", opts.seed);
  if (opts.threads > 0) cfg.set("experiment.threads", static_cast<long>(opts.threads));
  if (!opts.out_dir.empty()) cfg.set("experiment.out_dir", opts.out_dir);
  return cfg;
}

int run_table_experiment(const CommonOpts& opts, const std::string& name,
                         hdclt::Table (*runner)(const hdclt::ExperimentConfig&)) {
  const auto start = std::chrono::steady_clock::now();
  hdclt::Config cfg = load_config(opts, name);
  hdclt::ExperimentConfig ecfg = hdclt::ExperimentConfig::from(cfg);
  hdclt::Table table = runner(ecfg);
  const std::string csv = ecfg.out_dir + "/" + name + ".csv";
  hdclt::write_csv(csv, table);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  hdclt::write_manifest(ecfg.out_dir + "/manifest.json", cfg, ecfg.master_seed, wall);
  std::cout << name << ": " << table.rows.size() << " rows -> " << csv << " ("
            << wall << " s)\n";
  return 0;
}

int run_bounds(const CommonOpts& opts) {
  const auto start = std::chrono::steady_clock::now();
  hdclt::Config cfg = load_config(opts, "bound_report");
  hdclt::ExperimentConfig ecfg = hdclt::ExperimentConfig::from(cfg);
  hdclt::BoundReport report = hdclt::run_bound_report(ecfg);
  const std::string path = ecfg.out_dir + "/bound_report.json";
  std::ofstream out(path);
  if (!out) throw hdclt::config_error("cannot write '" + path + "'");
  out << hdclt::bound_report_json(report);
  out.close();
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  hdclt::write_manifest(ecfg.out_dir + "/manifest.json", cfg, ecfg.master_seed, wall);
  std::cout << "bound_report -> " << path << " (total " << report.total << ")\n";
  return 0;
}

int run_steincheck(const CommonOpts& opts) {
  hdclt::Config cfg = load_config(opts, "steincheck");
  const auto results = hdclt::verify_stein_identity(hdclt::beta_transformed_law());
  double worst = 0.0;
  for (const auto& r : results) {
    std::printf("%-10s lhs=%.12e rhs=%.12e residual=%.3e\n", r.test_function.c_str(),
                r.lhs, r.rhs, r.residual);
    worst = std::max(worst, r.residual);
  }
  std::printf("worst residual: %.3e\n", worst);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for high-dimensional CLT bounds"};
  app.require_subcommand(1);

  struct Cmd {
    const char* name;
    const char* help;
    hdclt::Table (*runner)(const hdclt::ExperimentConfig&);
  };
  const Cmd table_cmds[] = {
      {"simulate", "Convergence sweep over (n, d) grids", hdclt::run_convergence_sweep},
      {"factor", "Factor-model sweep with factor vs Nazarov rates",
       hdclt::run_factor_sweep},
      {"lowerbound", "Gumbel lower-bound demonstration", hdclt::run_lower_bound_demo},
      {"cramer", "Cramer tail-ratio check", hdclt::run_cramer_ratio_check},
      {"swap", "Lindeberg swap scaling", hdclt::run_lindeberg_swap},
      {"stein", "Stein-route dominance", hdclt::run_stein_route},
  };

  CommonOpts opts;
  std::string selected;
  hdclt::Table (*selected_runner)(const hdclt::ExperimentConfig&) = nullptr;
  for (const auto& c : table_cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, opts);
    sub->callback([&, c]() {
      selected = c.name;
      selected_runner = c.runner;
    });
  }

  std::string bootstrap_mode = "coverage";
  CLI::App* boot = app.add_subcommand("bootstrap", "Coverage or rho_WB trend");
  add_common(boot, opts);
  boot->add_option("--mode", bootstrap_mode, "coverage | trend")
      ->check(CLI::IsMember({"coverage", "trend"}));
  boot->callback([&]() { selected = "bootstrap"; });

  CLI::App* bounds = app.add_subcommand("bounds", "Bound report (JSON)");
  add_common(bounds, opts);
  bounds->callback([&]() { selected = "bounds"; });

  CLI::App* steincheck =
      app.add_subcommand("steincheck", "Stein kernel identity residuals");
  add_common(steincheck, opts);
  steincheck->callback([&]() { selected = "steincheck"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (selected_runner) return run_table_experiment(opts, selected, selected_runner);
    if (selected == "bootstrap") {
      return run_table_experiment(opts, "bootstrap_" + bootstrap_mode,
                                  bootstrap_mode == "trend"
                                      ? hdclt::run_bootstrap_trend
                                      : hdclt::run_bootstrap_coverage);
    }
    if (selected == "bounds") return run_bounds(opts);
    if (selected == "steincheck") return run_steincheck(opts);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const hdclt::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const hdclt::planning_error& e) {
    std::cerr << "planning error: " << e.what() << "\n";
    return 3;
  } catch (const hdclt::parameter_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const hdclt::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
