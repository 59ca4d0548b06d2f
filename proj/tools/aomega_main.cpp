#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aomega/runner.hpp"

namespace {

int run_command(const std::string& config_path, double grid_h, double grid_T,
                std::int64_t seed, const std::string& out_dir) {
  aomega::ojson doc;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config: " << config_path << "\n";
      return 2;
    }
    try {
      doc = aomega::ojson::parse(in);
    } catch (const std::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return 2;
    }
  }
  try {
    aomega::ExperimentConfig cfg = aomega::config_from_json(doc);
    if (grid_h > 0 || grid_T > 0) {
      cfg.grid = aomega::Grid::make(grid_h > 0 ? grid_h : cfg.grid.h,
                                    grid_T > 0 ? grid_T : cfg.grid.T);
    }
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    const aomega::RunReport report = aomega::run_experiments(cfg);
    const aomega::ojson j = report.to_json();
    if (out_dir.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::filesystem::create_directories(out_dir);
      const auto json_path = std::filesystem::path(out_dir) / "report.json";
      const auto csv_path = std::filesystem::path(out_dir) / "report.csv";
      std::ofstream(json_path) << j.dump(2) << "\n";
      std::ofstream(csv_path) << report.to_csv();
      std::cout << "wrote " << json_path.string() << " and " << csv_path.string()
                << " (aggregate: " << (report.aggregate ? "pass" : "fail") << ")\n";
    }
    return report.aggregate ? 0 : 1;
  } catch (const aomega::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted convolution algebra checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  double grid_h = 0.0;
  double grid_T = 0.0;
  std::int64_t seed = -1;

  CLI::App* run = app.add_subcommand("run", "run the checks in a config file");
  run->add_option("config", config_path, "path to a JSON experiment config")->required();
  run->add_option("--grid-h", grid_h, "override grid step");
  run->add_option("--grid-T", grid_T, "override grid horizon");
  run->add_option("--seed", seed, "override RNG seed");
  run->add_option("--out", out_dir, "write report.json and report.csv into this directory");

  CLI::App* list = app.add_subcommand("list", "print the built-in catalog as JSON");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << aomega::builtin_catalog().dump(2) << "\n";
    return 0;
  }
  return run_command(config_path, grid_h, grid_T, seed, out_dir);
}
