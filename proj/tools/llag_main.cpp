// llag: run lag-coupling experiments and write CSV/JSON for plotting.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "llag/errors.hpp"
#include "llag/experiments.hpp"

namespace {

constexpr int kExitCensored = 3;
constexpr int kExitConfig = 2;

std::string preset_help() {
  std::string text = "Presets (desk-scale defaults):\n";
  for (const auto& p : llag::preset_catalogue()) text += "  " + p.name + "  " + p.description + "\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L-lag coupling experiments"};
  app.footer(preset_help());
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a preset and write meetings.csv, bounds.csv, summary.json");
  std::string preset;
  std::string config_path;
  std::vector<std::string> assignments;
  nlohmann::json flags = nlohmann::json::object();
  run->add_option("preset", preset, "preset name (see list-presets)");
  run->add_option("-c,--config", config_path, "JSON config file; flags override it");
  run->add_option("--set", assignments, "override any key, e.g. --set rwmh.sigma=1")->take_all();
  run->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { flags["seed"] = v; },
                                          "master seed");
  run->add_option_function<long long>("--replicates", [&](long long v) { flags["replicates"] = v; },
                                      "number of independent meetings N");
  run->add_option_function<long long>("--lag", [&](long long v) { flags["lag"] = v; }, "lag L");
  run->add_option_function<long long>("--t-max", [&](long long v) { flags["t_max"] = v; },
                                      "step cap; replicates reaching it are censored");
  run->add_option_function<long long>("--workers", [&](long long v) { flags["workers"] = v; },
                                      "worker threads (0: all cores)");
  run->add_option_function<std::string>("--out-dir", [&](const std::string& v) { flags["out_dir"] = v; },
                                         "output directory");
  run->add_flag_function("--keep-trajectories", [&](std::int64_t) { flags["keep_trajectories"] = true; },
                         "keep paths and add W1 bounds for vector-valued presets");
  run->add_flag_function("--allow-censored", [&](std::int64_t) { flags["allow_censored"] = true; },
                         "write flagged bounds and exit 0 even if some replicates are censored");

  auto* list = app.add_subcommand("list-presets", "print preset names and defaults");
  bool as_json = false;
  list->add_flag("--json", as_json, "print full default configs as JSON");

  auto* check = app.add_subcommand("dataset-check", "parse a logistic regression data file");
  std::string data_path;
  bool intercept = false;
  bool standardize = false;
  check->add_option("path", data_path, "delimited numeric file, response first")->required();
  check->add_flag("--intercept", intercept, "prepend a constant-1 column");
  check->add_flag("--standardize", standardize, "scale covariates to mean 0, variance 1");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      if (as_json) {
        nlohmann::json all = nlohmann::json::object();
        for (const auto& p : llag::preset_catalogue()) {
          all[p.name] = llag::config_to_json(llag::preset_defaults(p.name));
        }
        std::cout << all.dump(2) << "\n";
      } else {
        for (const auto& p : llag::preset_catalogue()) std::cout << p.name << "\t" << p.description << "\n";
      }
      return 0;
    }
    if (*check) {
      const auto data = llag::load_logistic_dataset(data_path, intercept, standardize);
      long long positive = 0;
      for (Eigen::Index i = 0; i < data.n(); ++i) positive += data.responses[i] > 0 ? 1 : 0;
      std::cout << "rows " << data.n() << ", covariates " << data.d() << ", positive responses "
                << positive << "\n";
      return 0;
    }

    std::vector<nlohmann::json> layers;
    if (!config_path.empty()) layers.push_back(llag::read_config_file(config_path));
    if (!preset.empty()) layers.push_back({{"preset", preset}});
    for (const auto& a : assignments) layers.push_back(llag::override_from_assignment(a));
    layers.push_back(flags);
    const auto config = llag::resolve_config(layers);

    const auto output = llag::run_experiment(config);
    llag::write_outputs(output, config.out_dir);
    if (output.censored > 0 && !config.allow_censored) {
      std::cerr << "error: " << output.censored << " replicate(s) hit t_max=" << config.t_max
                << " without meeting; no bounds written. Raise --t-max or pass --allow-censored.\n";
      return kExitCensored;
    }
    std::cerr << "wrote " << config.out_dir << "/{meetings.csv,bounds.csv,summary.json}\n";
    return 0;
  } catch (const llag::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
