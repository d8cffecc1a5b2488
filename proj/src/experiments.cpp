#include "llag/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "llag/bounds.hpp"
#include "llag/errors.hpp"
#include "llag/kernels.hpp"
#include "llag/lag_coupling.hpp"
#include "llag/parallel.hpp"
#include "llag/smc.hpp"
#include "llag/targets.hpp"

namespace llag {

using nlohmann::json;

unsigned ExperimentConfig::resolved_workers() const {
  return workers == 0 ? default_workers() : workers;
}

const std::vector<PresetInfo>& preset_catalogue() {
  static const std::vector<PresetInfo> presets = {
      {"normal-mh", "RWMH on N(0,1), sigma 0.5, start at 10; L=150, N=1000; TV and W1"},
      {"bimodal-mh", "RWMH on 0.5 N(-4,1) + 0.5 N(4,1), sigma 1, start N(10,1); L=18000, N=100"},
      {"ising-ssg", "single-site Gibbs, 8x8 periodic Ising, beta 0.25; L=500, N=200 "
                    "(32x32, beta 0.46, L=1e6 is long-running)"},
      {"ising-pt", "parallel tempering, 8x8, 12 temperatures in [0.3, 0.46], swap rate 0.02; "
                   "L=2000, N=100"},
      {"logistic-pg", "Polya-Gamma Gibbs, synthetic n=100, d=5, prior N(0,10I); L=50, N=200"},
      {"logistic-hmc", "HMC eps 0.025, 5 leapfrog steps, 5% coupled RWMH; same data; L=500, N=200"},
      {"mvn-mala", "MALA on AR(1) Gaussian, d in {10,30,50}, step d^(-1/6); L=100, N=200"},
      {"mvn-ula", "ULA on AR(1) Gaussian, d in {10,30,50}, step 0.1 d^(-1/6); L=1000, N=200"},
      {"pimh-smc", "PIMH with importance-sampling proposals, particles {5,20,100,500}; L=1, "
                   "N=1000, SMC bias bound 1000 x 1000"},
  };
  return presets;
}

ExperimentConfig preset_defaults(const std::string& preset) {
  ExperimentConfig c;
  c.preset = preset;
  if (preset == "normal-mh") {
    c.replicates = 1000;
    c.lag = 150;
  } else if (preset == "bimodal-mh") {
    c.replicates = 100;
    c.lag = 18000;
    c.t_max = 2000000;
    c.grid_step = 100;
    c.rwmh = {"bimodal", 1.0, 10.0, 1.0, false};
  } else if (preset == "ising-ssg") {
    c.replicates = 200;
    c.lag = 500;
    c.t_max = 50000;
  } else if (preset == "ising-pt") {
    c.replicates = 100;
    c.lag = 2000;
    c.t_max = 100000;
    c.grid_step = 10;
  } else if (preset == "logistic-pg") {
    c.replicates = 200;
    c.lag = 50;
  } else if (preset == "logistic-hmc") {
    c.replicates = 200;
    c.lag = 500;
  } else if (preset == "mvn-mala") {
    c.replicates = 200;
    c.lag = 100;
  } else if (preset == "mvn-ula") {
    c.replicates = 200;
    c.lag = 1000;
    c.mvn.sigma_scale = 0.1;
  } else if (preset == "pimh-smc") {
    c.replicates = 1000;
    c.lag = 1;
  } else {
    throw ParseError("unknown preset '" + preset + "'");
  }
  if (preset != "normal-mh" && preset != "bimodal-mh") c.rwmh.w1 = false;
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["preset"] = c.preset;
  j["seed"] = c.seed;
  j["replicates"] = c.replicates;
  j["lag"] = c.lag;
  j["t_max"] = c.t_max;
  j["workers"] = c.workers;
  j["out_dir"] = c.out_dir;
  j["keep_trajectories"] = c.keep_trajectories;
  j["allow_censored"] = c.allow_censored;
  j["grid"] = {{"step", c.grid_step}, {"max", c.grid_max}};
  j["epsilons"] = c.epsilons;
  j["rwmh"] = {{"target", c.rwmh.target},
               {"sigma", c.rwmh.sigma},
               {"init_mean", c.rwmh.init_mean},
               {"init_sd", c.rwmh.init_sd},
               {"w1", c.rwmh.w1}};
  j["ising"] = {{"side", c.ising.side},         {"beta", c.ising.beta},
                {"beta_min", c.ising.beta_min}, {"beta_max", c.ising.beta_max},
                {"chains", c.ising.chains},     {"omega", c.ising.omega}};
  const auto& l = c.logistic;
  j["logistic"] = {{"data_path", l.data_path},
                   {"n", l.n},
                   {"d", l.d},
                   {"intercept", l.intercept},
                   {"standardize", l.standardize},
                   {"prior_variance", l.prior_variance},
                   {"init_variance", l.init_variance},
                   {"hmc_step_size", l.hmc_step_size},
                   {"hmc_leapfrog_steps", l.hmc_leapfrog_steps},
                   {"hmc_rwmh_probability", l.hmc_rwmh_probability},
                   {"hmc_rwmh_sigma", l.hmc_rwmh_sigma},
                   {"hmc_rwmh_coupling", l.hmc_rwmh_coupling}};
  j["mvn"] = {{"dims", c.mvn.dims}, {"sigma_scale", c.mvn.sigma_scale}};
  j["pimh"] = {{"particles", c.pimh.particles}, {"outer", c.pimh.outer}, {"inner", c.pimh.inner}};
  return j;
}

namespace {

// Overlays `layer` onto `base`, refusing keys the base does not have.
void merge_checked(json& base, const json& layer, const std::string& prefix) {
  if (!layer.is_object()) {
    throw ParseError(prefix.empty() ? "config must be an object" : "'" + prefix + "' must be a section");
  }
  for (auto it = layer.begin(); it != layer.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) throw ParseError("unknown config key '" + key + "'");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_checked(slot, it.value(), key);
    } else {
      if (it.value().is_object()) throw ParseError("config key '" + key + "' is not a section");
      slot = it.value();
    }
  }
}

template <class T>
void read(const json& j, const std::string& key, T& out) {
  // key may be dotted
  const json* node = &j;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    node = &node->at(key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  try {
    if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!node->is_number_integer()) throw ParseError("");
      if constexpr (std::is_unsigned_v<T>) {
        if (node->is_number_integer() && !node->is_number_unsigned() && node->get<long long>() < 0) {
          throw ParseError("");
        }
      }
    }
    if constexpr (std::is_floating_point_v<T>) {
      if (!node->is_number()) throw ParseError("");
    }
    out = node->get<T>();
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "' has an invalid value: " + node->dump());
  }
}

void require(bool ok, const std::string& key, const std::string& why) {
  if (!ok) throw ParseError("config key '" + key + "' " + why);
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  read(j, "preset", c.preset);
  read(j, "seed", c.seed);
  read(j, "replicates", c.replicates);
  read(j, "lag", c.lag);
  read(j, "t_max", c.t_max);
  read(j, "workers", c.workers);
  read(j, "out_dir", c.out_dir);
  read(j, "keep_trajectories", c.keep_trajectories);
  read(j, "allow_censored", c.allow_censored);
  read(j, "grid.step", c.grid_step);
  read(j, "grid.max", c.grid_max);
  read(j, "epsilons", c.epsilons);
  read(j, "rwmh.target", c.rwmh.target);
  read(j, "rwmh.sigma", c.rwmh.sigma);
  read(j, "rwmh.init_mean", c.rwmh.init_mean);
  read(j, "rwmh.init_sd", c.rwmh.init_sd);
  read(j, "rwmh.w1", c.rwmh.w1);
  read(j, "ising.side", c.ising.side);
  read(j, "ising.beta", c.ising.beta);
  read(j, "ising.beta_min", c.ising.beta_min);
  read(j, "ising.beta_max", c.ising.beta_max);
  read(j, "ising.chains", c.ising.chains);
  read(j, "ising.omega", c.ising.omega);
  auto& l = c.logistic;
  read(j, "logistic.data_path", l.data_path);
  read(j, "logistic.n", l.n);
  read(j, "logistic.d", l.d);
  read(j, "logistic.intercept", l.intercept);
  read(j, "logistic.standardize", l.standardize);
  read(j, "logistic.prior_variance", l.prior_variance);
  read(j, "logistic.init_variance", l.init_variance);
  read(j, "logistic.hmc_step_size", l.hmc_step_size);
  read(j, "logistic.hmc_leapfrog_steps", l.hmc_leapfrog_steps);
  read(j, "logistic.hmc_rwmh_probability", l.hmc_rwmh_probability);
  read(j, "logistic.hmc_rwmh_sigma", l.hmc_rwmh_sigma);
  read(j, "logistic.hmc_rwmh_coupling", l.hmc_rwmh_coupling);
  read(j, "mvn.dims", c.mvn.dims);
  read(j, "mvn.sigma_scale", c.mvn.sigma_scale);
  read(j, "pimh.particles", c.pimh.particles);
  read(j, "pimh.outer", c.pimh.outer);
  read(j, "pimh.inner", c.pimh.inner);
  return c;
}

}  // namespace

void validate_config(const ExperimentConfig& c) {
  preset_defaults(c.preset);  // throws on unknown presets
  require(c.replicates >= 1, "replicates", "must be at least 1");
  require(c.lag >= 1, "lag", "must be at least 1");
  require(c.t_max > c.lag, "t_max", "must exceed lag");
  require(c.grid_step >= 1, "grid.step", "must be at least 1");
  require(c.grid_max >= 0, "grid.max", "must be non-negative");
  require(!c.epsilons.empty(), "epsilons", "must not be empty");
  for (double e : c.epsilons) require(e > 0.0 && e < 1.0, "epsilons", "entries must lie in (0, 1)");
  require(c.rwmh.target == "normal" || c.rwmh.target == "bimodal", "rwmh.target",
          "must be 'normal' or 'bimodal'");
  require(c.rwmh.sigma > 0.0, "rwmh.sigma", "must be positive");
  require(c.rwmh.init_sd >= 0.0, "rwmh.init_sd", "must be non-negative");
  require(c.ising.side >= 2, "ising.side", "must be at least 2");
  require(c.ising.beta >= 0.0, "ising.beta", "must be non-negative");
  require(c.ising.chains >= 2, "ising.chains", "must be at least 2");
  require(c.ising.beta_min >= 0.0 && c.ising.beta_min < c.ising.beta_max, "ising.beta_min",
          "must satisfy 0 <= beta_min < beta_max");
  require(c.ising.omega >= 0.0 && c.ising.omega < 1.0, "ising.omega", "must lie in [0, 1)");
  const auto& l = c.logistic;
  require(l.n >= 1, "logistic.n", "must be at least 1");
  require(l.d >= 1, "logistic.d", "must be at least 1");
  require(l.prior_variance > 0.0, "logistic.prior_variance", "must be positive");
  require(l.init_variance > 0.0, "logistic.init_variance", "must be positive");
  require(l.hmc_step_size > 0.0, "logistic.hmc_step_size", "must be positive");
  require(l.hmc_leapfrog_steps >= 1, "logistic.hmc_leapfrog_steps", "must be at least 1");
  require(l.hmc_rwmh_probability >= 0.0 && l.hmc_rwmh_probability < 1.0,
          "logistic.hmc_rwmh_probability", "must lie in [0, 1)");
  require(l.hmc_rwmh_sigma > 0.0, "logistic.hmc_rwmh_sigma", "must be positive");
  require(l.hmc_rwmh_coupling == "maximal" || l.hmc_rwmh_coupling == "reflection",
          "logistic.hmc_rwmh_coupling", "must be 'maximal' or 'reflection'");
  require(!c.mvn.dims.empty(), "mvn.dims", "must not be empty");
  for (long long d : c.mvn.dims) require(d >= 1, "mvn.dims", "entries must be at least 1");
  require(c.mvn.sigma_scale > 0.0, "mvn.sigma_scale", "must be positive");
  require(!c.pimh.particles.empty(), "pimh.particles", "must not be empty");
  for (int n : c.pimh.particles) require(n >= 1, "pimh.particles", "entries must be at least 1");
  require(c.pimh.outer >= 1, "pimh.outer", "must be at least 1");
  require(c.pimh.inner >= 1, "pimh.inner", "must be at least 1");
}

ExperimentConfig resolve_config(const std::vector<json>& layers) {
  std::string preset;
  for (const auto& layer : layers) {
    if (!layer.is_object()) throw ParseError("config must be an object");
    if (layer.contains("preset")) {
      if (!layer["preset"].is_string()) throw ParseError("config key 'preset' must be a string");
      preset = layer["preset"].get<std::string>();
    }
  }
  if (preset.empty()) throw ParseError("config key 'preset' is missing");
  json merged = config_to_json(preset_defaults(preset));
  for (const auto& layer : layers) merge_checked(merged, layer, "");
  ExperimentConfig config = config_from_json(merged);
  validate_config(config);
  return config;
}

json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string());
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ParseError("config file " + path.string() + ": " + e.what());
  }
}

json override_from_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ParseError("override '" + assignment + "' must look like key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json root = json::object();
  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw ParseError("override key '" + key + "' is malformed");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
  return root;
}

// ---------------------------------------------------------------------------
// Dataset loading

namespace {

// Cells are separated by ',', ';' or tab when any is present, else by spaces.
std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  const bool delimited = line.find_first_of(",;\t") != std::string::npos;
  if (delimited) {
    std::string cell;
    for (char ch : line + ",") {
      if (ch == ',' || ch == ';' || ch == '\t') {
        const auto lo = cell.find_first_not_of(" \r");
        const auto hi = cell.find_last_not_of(" \r");
        cells.push_back(lo == std::string::npos ? std::string() : cell.substr(lo, hi - lo + 1));
        cell.clear();
      } else {
        cell.push_back(ch);
      }
    }
  } else {
    std::istringstream is(line);
    std::string cell;
    while (is >> cell) cells.push_back(cell);
  }
  return cells;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && std::isfinite(out);
}

}  // namespace

LogisticDataset load_logistic_dataset(const std::filesystem::path& path, bool intercept,
                                      bool standardize, double prior_variance) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset " + path.string());
  std::vector<std::vector<double>> rows;
  std::vector<long long> line_numbers;
  std::string line;
  long long line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto cells = split_cells(line);
    std::vector<double> values(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!parse_double(cells[k], values[k])) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": non-numeric cell '" +
                         cells[k] + "' in column " + std::to_string(k + 1));
      }
    }
    if (values.size() < 2) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": need a response and at least one covariate");
    }
    if (width == 0) width = values.size();
    if (values.size() != width) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " cells, found " + std::to_string(values.size()));
    }
    rows.push_back(std::move(values));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) throw ParseError(path.string() + ": no data rows");

  bool has_zero = false;
  bool has_minus_one = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double r = rows[i][0];
    if (r != 0.0 && r != 1.0 && r != -1.0) {
      throw ParseError(path.string() + ":" + std::to_string(line_numbers[i]) +
                       ": response must be 0/1 or -1/+1");
    }
    has_zero = has_zero || r == 0.0;
    has_minus_one = has_minus_one || r == -1.0;
  }
  if (has_zero && has_minus_one) {
    throw ParseError(path.string() + ": responses mix the 0/1 and -1/+1 codings");
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto raw_d = static_cast<Eigen::Index>(width - 1);
  Eigen::MatrixXd x(n, raw_d);
  LogisticDataset data;
  data.responses.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    data.responses[i] = row[0] == 0.0 ? -1.0 : row[0];
    for (Eigen::Index k = 0; k < raw_d; ++k) x(i, k) = row[static_cast<std::size_t>(k + 1)];
  }
  if (standardize) {
    for (Eigen::Index k = 0; k < raw_d; ++k) {
      const double mean = x.col(k).mean();
      x.col(k).array() -= mean;
      const double sd = std::sqrt(x.col(k).squaredNorm() / static_cast<double>(n));
      if (!(sd > 0.0)) {
        throw ParseError(path.string() + ": column " + std::to_string(k + 2) +
                         " is constant and cannot be standardized");
      }
      x.col(k) /= sd;
    }
  }
  if (intercept) {
    data.covariates.resize(n, raw_d + 1);
    data.covariates.col(0).setOnes();
    data.covariates.rightCols(raw_d) = x;
  } else {
    data.covariates = std::move(x);
  }
  attach_isotropic_prior(data, prior_variance);
  data.validate();
  return data;
}

// ---------------------------------------------------------------------------
// Running presets

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string epsilon_key(double e) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", e);
  return buf;
}

std::vector<long long> make_grid(const ExperimentConfig& c, long long max_tau) {
  const long long top = c.grid_max > 0 ? c.grid_max : std::max<long long>(0, max_tau - c.lag);
  std::vector<long long> grid;
  for (long long t = 0; t <= top; t += c.grid_step) grid.push_back(t);
  if (grid.back() != top) grid.push_back(top);
  return grid;
}

void append_curve(ExperimentOutput& out, const std::string& name, const BoundCurve& curve) {
  for (std::size_t k = 0; k < curve.t_grid.size(); ++k) {
    out.bounds.push_back({name, metric_name(curve.metric), curve.t_grid[k], curve.bound[k],
                          curve.std_error[k], curve.replicates, curve.lag});
  }
}

struct Runner {
  const ExperimentConfig& config;
  ExperimentOutput& out;

  template <class State>
  std::vector<MeetingRecord<State>> run(const std::string& name, const CoupledKernel<State>& kernel,
                                        const InitialSampler<State>& pi0, std::uint64_t label,
                                        bool keep_trajectory) {
    ReplicateOptions options;
    options.meeting.lag = config.lag;
    options.meeting.t_max = config.t_max;
    options.meeting.keep_trajectory = keep_trajectory;
    options.replicates = static_cast<std::size_t>(config.replicates);
    options.master_seed = sub_seed(config.seed, label);
    options.workers = config.resolved_workers();
    auto records = run_replicates(kernel, pi0, options);

    std::size_t censored = 0;
    long long max_tau = 0;
    double tau_sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      out.meetings.push_back({name, i, r.lag, r.tau, r.censored});
      censored += r.censored ? 1 : 0;
      max_tau = std::max(max_tau, r.tau);
      tau_sum += static_cast<double>(r.tau);
    }
    out.censored += censored;

    json entry;
    entry["name"] = name;
    entry["kernel"] = kernel.name();
    entry["replicates"] = records.size();
    entry["lag"] = config.lag;
    entry["censored"] = censored;
    entry["mean_tau"] = tau_sum / static_cast<double>(records.size());
    entry["max_tau"] = max_tau;
    if (censored == 0 || config.allow_censored) {
      const auto policy = config.allow_censored ? CensoringPolicy::Flag : CensoringPolicy::Reject;
      const auto grid = make_grid(config, max_tau);
      append_curve(out, name, tv_bound_curve(records, grid, policy));
      json tmix = json::object();
      for (double e : config.epsilons) {
        const auto t = mixing_time(records, e, policy);
        tmix[epsilon_key(e)] = t ? json(*t) : json(nullptr);
      }
      entry["t_mix"] = tmix;
      entry["bounds_valid"] = censored == 0;
    }
    out.summary["experiments"].push_back(entry);
    return records;
  }
};

void run_vector_preset(Runner& runner, const std::string& name,
                       const CoupledKernel<Eigen::VectorXd>& kernel,
                       const InitialSampler<Eigen::VectorXd>& pi0, std::uint64_t label, bool w1) {
  const auto& c = runner.config;
  const auto records = runner.run(name, kernel, pi0, label, w1);
  const bool curves = runner.out.summary["experiments"].back().contains("t_mix");
  if (w1 && curves) {
    long long max_tau = 0;
    for (const auto& r : records) max_tau = std::max(max_tau, r.tau);
    const auto policy = c.allow_censored ? CensoringPolicy::Flag : CensoringPolicy::Reject;
    append_curve(runner.out, name, w1_bound_curve(records, make_grid(c, max_tau), policy));
  }
}

InitialSampler<Eigen::VectorXd> gaussian_initial(Eigen::Index d, double mean, double sd) {
  return [d, mean, sd](RngStream& rng) {
    Eigen::VectorXd v(d);
    for (Eigen::Index k = 0; k < d; ++k) v[k] = sd > 0.0 ? mean + sd * sample_std_normal(rng) : mean;
    return v;
  };
}

}  // namespace

LogisticDataset preset_logistic_dataset(const ExperimentConfig& c) {
  const auto& l = c.logistic;
  if (!l.data_path.empty()) {
    return load_logistic_dataset(l.data_path, l.intercept, l.standardize, l.prior_variance);
  }
  RngStream rng = derive_stream(sub_seed(c.seed, 1000), 0);
  LogisticDataset data = make_synthetic_logistic(rng, l.n, l.d);
  attach_isotropic_prior(data, l.prior_variance);
  return data;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentOutput out;
  out.summary["config"] = config_to_json(config);
  out.summary["experiments"] = json::array();
  Runner runner{config, out};
  const std::string& p = config.preset;

  if (p == "normal-mh" || p == "bimodal-mh") {
    const auto target = config.rwmh.target == "normal" ? std_normal_target() : bimodal_target();
    const RwmhKernel kernel(target, config.rwmh.sigma);
    const bool w1 = config.rwmh.w1 || config.keep_trajectories;
    run_vector_preset(runner, p, kernel, gaussian_initial(1, config.rwmh.init_mean, config.rwmh.init_sd),
                      0, w1);
  } else if (p == "ising-ssg") {
    const SsgKernel kernel(config.ising.beta, config.ising.side);
    const int side = config.ising.side;
    runner.run<IsingState>(p, kernel, [side](RngStream& rng) { return random_ising_state(rng, side); },
                           0, false);
  } else if (p == "ising-pt") {
    const auto& is = config.ising;
    std::vector<double> betas(static_cast<std::size_t>(is.chains));
    for (int k = 0; k < is.chains; ++k) {
      betas[static_cast<std::size_t>(k)] =
          is.beta_min + (is.beta_max - is.beta_min) * k / static_cast<double>(is.chains - 1);
    }
    const PtKernel kernel(betas, is.omega, is.side);
    const int side = is.side;
    const int chains = is.chains;
    runner.run<TemperedState>(
        p, kernel,
        [side, chains](RngStream& rng) {
          TemperedState s;
          for (int k = 0; k < chains; ++k) s.push_back(random_ising_state(rng, side));
          return s;
        },
        0, false);
  } else if (p == "logistic-pg" || p == "logistic-hmc") {
    LogisticDataset data = preset_logistic_dataset(config);
    const auto d = data.d();
    const auto pi0 = gaussian_initial(d, 0.0, std::sqrt(config.logistic.init_variance));
    out.summary["dataset"] = {{"n", data.n()}, {"d", d}};
    if (p == "logistic-pg") {
      const PgGibbsKernel kernel(std::move(data));
      run_vector_preset(runner, p, kernel, pi0, 0, config.keep_trajectories);
    } else {
      const auto& l = config.logistic;
      HmcSettings settings;
      settings.step_size = l.hmc_step_size;
      settings.leapfrog_steps = l.hmc_leapfrog_steps;
      settings.rwmh_probability = l.hmc_rwmh_probability;
      settings.rwmh_sigma = l.hmc_rwmh_sigma;
      settings.rwmh_coupling = l.hmc_rwmh_coupling == "maximal" ? ProposalCoupling::Maximal
                                                                : ProposalCoupling::ReflectionMaximal;
      const HmcKernel kernel(logistic_posterior(std::move(data)), settings);
      run_vector_preset(runner, p, kernel, pi0, 0, config.keep_trajectories);
    }
  } else if (p == "mvn-mala" || p == "mvn-ula") {
    std::uint64_t label = 0;
    for (long long d : config.mvn.dims) {
      const auto target = ar1_mvn_target(d);
      const double sigma = config.mvn.sigma_scale * std::pow(static_cast<double>(d), -1.0 / 6.0);
      const std::string name = p + "-d" + std::to_string(d);
      const auto pi0 = gaussian_initial(d, 0.0, 1.0);
      if (p == "mvn-mala") {
        run_vector_preset(runner, name, MalaKernel(target, sigma), pi0, label, config.keep_trajectories);
      } else {
        run_vector_preset(runner, name, UlaKernel(target, sigma), pi0, label, config.keep_trajectories);
      }
      out.summary["experiments"].back()["d"] = d;
      out.summary["experiments"].back()["step_size"] = sigma;
      ++label;
    }
  } else if (p == "pimh-smc") {
    out.summary["smc_bias_bound"] = json::array();
    std::uint64_t label = 0;
    for (int particles : config.pimh.particles) {
      const PimhKernel kernel(gaussian_importance_spec(particles));
      const std::string name = p + "-N" + std::to_string(particles);
      runner.run<PimhState>(name, kernel, [&kernel](RngStream& rng) { return kernel.initial(rng); },
                            label, false);
      out.summary["experiments"].back()["particles"] = particles;

      const auto outer = static_cast<std::size_t>(config.pimh.outer);
      std::vector<double> zhats(outer);
      const std::uint64_t outer_seed = sub_seed(config.seed, 2000 + label);
      parallel_for(outer, config.resolved_workers(), [&](std::size_t i) {
        RngStream rng = derive_stream(outer_seed, i);
        zhats[i] = sample_pimh_zhat(rng, kernel, config.lag - 1);
      });
      const auto bias = smc_bias_bound(
          zhats, config.lag, static_cast<std::size_t>(config.pimh.inner),
          [&kernel](RngStream& rng) { return smc_sampler_run(rng, kernel.spec()).zhat; },
          sub_seed(config.seed, 3000 + label), config.resolved_workers());
      out.summary["smc_bias_bound"].push_back(
          {{"particles", particles}, {"bound", bias.bound}, {"std_error", bias.std_error}});
      ++label;
    }
  }

  out.summary["censored"] = out.censored;
  out.summary["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string meetings_csv(const std::vector<MeetingRow>& rows) {
  std::ostringstream os;
  os << "experiment,replicate,L,tau,censored\n";
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.replicate << ',' << r.lag << ',' << r.tau << ','
       << (r.censored ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string bounds_csv(const std::vector<BoundRow>& rows) {
  std::ostringstream os;
  os << "experiment,metric,t,bound,std_error,N,L\n";
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.metric << ',' << r.t << ',' << format_double(r.bound) << ','
       << format_double(r.std_error) << ',' << r.replicates << ',' << r.lag << '\n';
  }
  return os.str();
}

void write_outputs(const ExperimentOutput& output, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& file, const std::string& text) {
    std::ofstream os(dir / file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / file).string());
    os << text;
    if (!os) throw std::runtime_error("write failed for " + (dir / file).string());
  };
  write("meetings.csv", meetings_csv(output.meetings));
  write("bounds.csv", bounds_csv(output.bounds));
  write("summary.json", output.summary.dump(2) + "\n");
}

}  // namespace llag
