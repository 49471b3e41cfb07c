#include <CLI11.hpp>

#include <iostream>

#include "pbe/errors.hpp"
#include "pbe/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Perturbation solutions with residual and backward-error audits"};
  pbe::ExperimentConfig cfg;
  std::string format = "both";
  bool quiet = false;

  std::string names;
  for (const auto& n : pbe::experiment_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("experiment", cfg.name, "One of: " + names)->required()->check(CLI::IsMember(pbe::experiment_names()));
  app.add_option("-n,--order", cfg.order, "Truncation order N");
  app.add_option("--eps", cfg.eps, "Small parameter, decimal or p/q");
  app.add_option("--x", cfg.x, "Bessel argument");
  app.add_option("--a0", cfg.a0, "Initial amplitude (morrison)");
  app.add_option("--a", cfg.a, "Delay coefficient a (dde)");
  app.add_option("--b", cfg.b, "Coefficient b (dde)");
  app.add_option("--variant", cfg.variant, "Pendulum form")->check(CLI::IsMember({"regular", "renorm", "modified"}));
  app.add_option("--out", cfg.out_dir, "Output directory");
  app.add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_flag("-q,--quiet", quiet, "Do not print the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  for (const auto* v : {&cfg.eps, &cfg.a, &cfg.b}) {
    if (!*v) continue;
    try {
      (void)pbe::parse_exact(**v);
    } catch (const pbe::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  cfg.write_json = format != "csv";
  cfg.write_csv = format != "json";

  try {
    auto out = pbe::run_experiment(cfg);
    auto files = pbe::write_outputs(cfg, out);
    if (!quiet) {
      std::cout << cfg.name << "\n";
      for (const auto& line : out.summary) std::cout << "  " << line << "\n";
      for (const auto& f : files) std::cout << "  wrote " << f << "\n";
    }
  } catch (const pbe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == pbe::ErrorCode::kPrecondition ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
