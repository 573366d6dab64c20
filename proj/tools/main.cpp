// sectorlab CLI: deterministic experiment runner.
//   sectorlab run --config cfg.json [--set key=value]...
//   sectorlab list

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sectorlab/experiments.hpp"

namespace {

int run_command(const std::string& config_path,
                const std::vector<std::string>& overrides,
                const std::string& out_dir) {
  sectorlab::ordered_json j;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "config error: cannot open " << config_path << "\n";
      return 2;
    }
    try {
      in >> j;
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
  }

  try {
    sectorlab::ExperimentConfig cfg = sectorlab::ExperimentConfig::from_json(j);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw sectorlab::config_error("--set expects key=value, got: " + kv);
      cfg.set_override(kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.revalidate();

    const sectorlab::RunResult res = sectorlab::run_experiment(cfg);
    for (const auto& [name, content] : res.files) {
      const std::string path = out_dir.empty() ? name : out_dir + "/" + name;
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
      }
      out << content;
      std::cerr << "wrote " << path << "\n";
    }
    if (!res.diagnostics.empty()) std::cerr << res.diagnostics << "\n";
    return res.exit_code;
  } catch (const sectorlab::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sectorlab: analytic discs over cusped sectors"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--set", overrides, "override config keys (key=value), repeatable");
  run->add_option("--out-dir", out_dir, "directory for report files");

  CLI::App* list = app.add_subcommand("list", "print the experiment catalogue");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << sectorlab::experiment_catalogue();
    return 0;
  }
  return run_command(config_path, overrides, out_dir);
}
