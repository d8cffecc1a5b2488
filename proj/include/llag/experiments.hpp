#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "llag/logistic.hpp"

namespace llag {

struct RwmhSection {
  std::string target = "normal";  // normal | bimodal
  double sigma = 0.5;
  double init_mean = 10.0;
  double init_sd = 0.0;  // 0 means a point mass at init_mean
  bool w1 = true;
};

struct IsingSection {
  int side = 8;
  double beta = 0.25;
  // parallel tempering: `chains` equispaced inverse temperatures
  double beta_min = 0.3;
  double beta_max = 0.46;
  int chains = 12;
  double omega = 0.02;
};

struct LogisticSection {
  std::string data_path;  // empty: synthetic data
  long long n = 100;
  long long d = 5;
  bool intercept = false;
  bool standardize = false;
  double prior_variance = 10.0;
  double init_variance = 10.0;
  double hmc_step_size = 0.025;
  int hmc_leapfrog_steps = 5;
  double hmc_rwmh_probability = 0.05;
  double hmc_rwmh_sigma = 0.001;
  std::string hmc_rwmh_coupling = "maximal";  // maximal | reflection
};

struct MvnSection {
  std::vector<long long> dims{10, 30, 50};
  double sigma_scale = 1.0;  // step = sigma_scale * d^(-1/6)
};

struct PimhSection {
  std::vector<int> particles{5, 20, 100, 500};
  long long outer = 1000;
  long long inner = 1000;
};

/// Fully resolved experiment configuration. Sections that do not apply to
/// the preset are carried along unchanged.
struct ExperimentConfig {
  std::string preset;
  std::uint64_t seed = 1;
  long long replicates = 100;
  long long lag = 1;
  long long t_max = 100000;
  unsigned workers = 0;  // 0: all hardware threads
  std::string out_dir = ".";
  bool keep_trajectories = false;
  bool allow_censored = false;
  long long grid_step = 1;
  long long grid_max = 0;  // 0: up to the largest tau - L
  std::vector<double> epsilons{0.25};

  RwmhSection rwmh;
  IsingSection ising;
  LogisticSection logistic;
  MvnSection mvn;
  PimhSection pimh;

  unsigned resolved_workers() const;
};

struct PresetInfo {
  std::string name;
  std::string description;
};

const std::vector<PresetInfo>& preset_catalogue();

/// Desk-scale defaults for a preset; ParseError for unknown names.
ExperimentConfig preset_defaults(const std::string& preset);

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Defaults of the preset named in the layers, overlaid by each JSON layer in
/// order (later wins). Unknown keys and out-of-range values throw ParseError
/// naming the key.
ExperimentConfig resolve_config(const std::vector<nlohmann::json>& layers);

/// Reads a JSON config file.
nlohmann::json read_config_file(const std::filesystem::path& path);

/// Turns "section.key=value" into a nested JSON object. The value is read as
/// JSON when it parses, else as a string.
nlohmann::json override_from_assignment(const std::string& assignment);

void validate_config(const ExperimentConfig& config);

/// Delimited numeric text, first column the response in {0,1} or {-1,+1}.
/// Commas, semicolons, tabs and spaces all separate cells; lines starting
/// with '#' are skipped. Prior N(0, prior_variance I) is attached.
LogisticDataset load_logistic_dataset(const std::filesystem::path& path, bool intercept,
                                      bool standardize, double prior_variance = 10.0);

/// The logistic presets' data: the file named in the config, or the synthetic
/// design drawn from a stream derived from the master seed.
LogisticDataset preset_logistic_dataset(const ExperimentConfig& config);

struct MeetingRow {
  std::string experiment;
  std::size_t replicate = 0;
  long long lag = 1;
  long long tau = 0;
  bool censored = false;
};

struct BoundRow {
  std::string experiment;
  std::string metric;
  long long t = 0;
  double bound = 0.0;
  double std_error = 0.0;
  std::size_t replicates = 0;
  long long lag = 1;
};

struct ExperimentOutput {
  std::vector<MeetingRow> meetings;
  std::vector<BoundRow> bounds;
  nlohmann::json summary;
  std::size_t censored = 0;
};

/// Runs the preset. With censored replicates and allow_censored off, the
/// output is still returned (bounds omitted) and `censored` is set; callers
/// decide how to fail.
ExperimentOutput run_experiment(const ExperimentConfig& config);

std::string meetings_csv(const std::vector<MeetingRow>& rows);
std::string bounds_csv(const std::vector<BoundRow>& rows);

/// Writes meetings.csv, bounds.csv and summary.json into config.out_dir.
void write_outputs(const ExperimentOutput& output, const std::filesystem::path& dir);

}  // namespace llag
