#include "mcdiff/config.hpp"

#include "mcdiff/errors.hpp"

#include <fstream>
#include <sstream>

namespace mcdiff {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("key '") + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) {
    return fallback;
  }
  return get<T>(j, key);
}

PressureLaw law_from_json(const json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "IsothermalIdeal") {
    return PressureLaw{PressureLaw::Kind::IsothermalIdeal, get<double>(j, "c"), 1.0};
  }
  if (kind == "PowerLaw") {
    return PressureLaw{PressureLaw::Kind::PowerLaw, get<double>(j, "kappa"),
                       get<double>(j, "gamma")};
  }
  throw ConfigError("unknown pressure law kind '" + kind + "'");
}

json law_to_json(const PressureLaw& law) {
  if (law.kind == PressureLaw::Kind::IsothermalIdeal) {
    return {{"kind", "IsothermalIdeal"}, {"c", law.coefficient}};
  }
  return {{"kind", "PowerLaw"}, {"kappa", law.coefficient}, {"gamma", law.exponent}};
}

MixtureSpec mixture_from_json(const json& j) {
  const int n = get<int>(j, "N");
  std::vector<PressureLaw> laws;
  for (const auto& l : require(j, "laws")) {
    laws.push_back(law_from_json(l));
  }
  const auto refs = get<std::vector<double>>(j, "refDensities");
  const auto rows = get<std::vector<std::vector<double>>>(j, "sigma");
  if (static_cast<int>(laws.size()) != n || static_cast<int>(rows.size()) != n) {
    throw ConfigError("mixture: 'laws' and 'sigma' must have N entries");
  }
  Matrix sigma(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw ConfigError("mixture: 'sigma' must be N x N");
    }
    for (int k = 0; k < n; ++k) {
      sigma(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
  }
  try {
    return MixtureSpec::make(std::move(laws), refs, std::move(sigma),
                             get<double>(j, "epsilon"), get_or<int>(j, "d", 1));
  } catch (const InvalidSpec& e) {
    throw ConfigError(std::string("mixture: ") + e.what());
  }
}

json mixture_to_json(const MixtureSpec& spec) {
  json laws = json::array();
  for (const auto& l : spec.laws) {
    laws.push_back(law_to_json(l));
  }
  std::vector<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < spec.sigma.rows(); ++i) {
    std::vector<double> row;
    for (Eigen::Index k = 0; k < spec.sigma.cols(); ++k) {
      row.push_back(spec.sigma(i, k));
    }
    rows.push_back(row);
  }
  return {{"N", spec.num_species()}, {"laws", laws},
          {"refDensities", spec.ref_densities}, {"sigma", rows},
          {"epsilon", spec.epsilon}, {"d", spec.dimension}};
}

} // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.mixture = mixture_from_json(require(j, "mixture"));

  const json& grid = require(j, "grid");
  c.cells = get<int>(grid, "M");
  c.length = get<double>(grid, "length");
  if (c.cells < 16 || !(c.length > 0.0)) {
    throw ConfigError("grid: need M >= 16 and length > 0");
  }

  const json& time = require(j, "time");
  c.t_end = get<double>(time, "T_end");
  c.cfl = get<double>(time, "cfl");
  c.snapshot_times = get_or<std::vector<double>>(time, "snapshot_times", {});
  if (!(c.t_end > 0.0) || !(c.cfl > 0.0 && c.cfl <= 1.0)) {
    throw ConfigError("time: need T_end > 0 and cfl in (0, 1]");
  }
  for (double t : c.snapshot_times) {
    if (t < 0.0 || t > c.t_end) {
      throw ConfigError("time: snapshot_times must lie in [0, T_end]");
    }
  }

  const json& init = require(j, "initial");
  c.initial.kind = profile_kind_from_string(get<std::string>(init, "kind"));
  c.initial.base = get<std::vector<double>>(init, "base");
  c.initial.amplitudes = get_or<std::vector<double>>(init, "amplitudes", {});
  c.initial.phases = get_or<std::vector<double>>(init, "phases", {});
  c.initial.width = get_or<double>(init, "width", 0.1);
  c.initial.velocity_mean = get_or<double>(init, "velocity_mean", 0.0);
  c.initial.velocity_amplitude = get_or<double>(init, "velocity_amplitude", 0.0);
  if (static_cast<int>(c.initial.base.size()) != c.mixture.num_species()) {
    throw ConfigError("initial: 'base' must have N entries");
  }
  try {
    (void)make_initial_field(c.initial, c.cells, c.length);
  } catch (const NonPositiveDensity& e) {
    throw ConfigError(std::string("initial: profile is not positive: ") + e.what());
  }

  if (j.contains("sweep")) {
    const json& sweep = j.at("sweep");
    c.eps_list = get<std::vector<double>>(sweep, "eps_list");
    if (sweep.contains("order_band")) {
      const auto band = get<std::vector<double>>(sweep, "order_band");
      if (band.size() != 2 || !(band[0] < band[1])) {
        throw ConfigError("sweep: 'order_band' must be [min, max]");
      }
      c.order_min = band[0];
      c.order_max = band[1];
    }
    for (double e : c.eps_list) {
      if (!(e > 0.0)) {
        throw ConfigError("sweep: epsilons must be positive");
      }
    }
  }

  if (j.contains("output")) {
    c.output_directory = get<std::string>(j.at("output"), "directory");
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["mixture"] = mixture_to_json(c.mixture);
  j["grid"] = {{"M", c.cells}, {"length", c.length}};
  j["time"] = {{"T_end", c.t_end}, {"cfl", c.cfl}, {"snapshot_times", c.snapshot_times}};
  j["initial"] = {{"kind", to_string(c.initial.kind)},
                  {"base", c.initial.base},
                  {"amplitudes", c.initial.amplitudes},
                  {"phases", c.initial.phases},
                  {"width", c.initial.width},
                  {"velocity_mean", c.initial.velocity_mean},
                  {"velocity_amplitude", c.initial.velocity_amplitude}};
  j["sweep"] = {{"eps_list", c.eps_list}, {"order_band", {c.order_min, c.order_max}}};
  j["output"] = {{"directory", c.output_directory}};
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.mixture = standard_mixture(0.01);
  c.cells = 1024;
  c.length = 1.0;
  c.t_end = 0.05;
  c.cfl = 0.5;
  c.snapshot_times = {0.0, 0.025, 0.05};
  c.initial = InitialProfile::standard();
  c.eps_list = {0.02, 0.01, 0.005, 0.0025};
  return c;
}

} // namespace mcdiff
