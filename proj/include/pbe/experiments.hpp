#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbe/rational.hpp"

namespace pbe {

struct ExperimentConfig {
  std::string name;
  std::optional<int> order;
  std::optional<std::string> eps;  // decimal or "p/q"
  std::optional<double> x;
  std::optional<double> a0;
  std::optional<std::string> a;
  std::optional<std::string> b;
  std::string variant = "renorm";
  std::string out_dir = ".";
  bool write_json = true;
  bool write_csv = true;
};

struct CsvTable {
  std::string file;
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;
};

struct ExperimentOutput {
  nlohmann::ordered_json report;
  std::vector<CsvTable> tables;
  std::vector<std::string> summary;
};

constexpr int kReportSchemaVersion = 1;

const std::vector<std::string>& experiment_names();

// "0.1", "-3/7", "2" -> exact rational (decimals are read digit for digit).
Rational parse_exact(const std::string& text);

// Throws pbe::Error on bad parameters or computation failures.
ExperimentOutput run_experiment(const ExperimentConfig& config);

// report.json and CSV files under config.out_dir; returns the paths written.
std::vector<std::string> write_outputs(const ExperimentConfig& config, const ExperimentOutput& out);

std::string format_csv(const CsvTable& t);

}  // namespace pbe
