// Command-line driver: structure certification, single-model runs, epsilon sweeps and
// the Lam comparison, all configured from one JSON file.

#include "mcdiff/closure.hpp"
#include "mcdiff/config.hpp"
#include "mcdiff/csv.hpp"
#include "mcdiff/errors.hpp"
#include "mcdiff/harness.hpp"
#include "mcdiff/limit.hpp"
#include "mcdiff/relaxation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <thread>

namespace fs = std::filesystem;
using mcdiff::ExperimentConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriteriaFail = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeAbort = 3;

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string model = "relaxation";
  int threads = 0;
  std::uint64_t seed = 1;
  int samples = 1000;
};

fs::path output_dir(const Options& opt, const ExperimentConfig& config) {
  fs::path dir = opt.out_dir.empty() ? fs::path(config.output_directory) : fs::path(opt.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

int run_check(const Options& opt, const ExperimentConfig& config) {
  const mcdiff::StructureReport report =
      mcdiff::certify_structure(config.mixture, std::max(opt.samples, 100), opt.seed);
  const fs::path dir = output_dir(opt, config);
  write_json(dir / "report.json", report.to_json());
  for (const auto& c : report.conditions) {
    std::printf("%-32s %s  max_violation=%.3e  threshold=%.1e  samples=%d\n",
                c.condition.c_str(), c.pass ? "PASS" : "FAIL", c.max_violation, c.threshold,
                c.samples);
  }
  return report.pass ? kExitOk : kExitCriteriaFail;
}

std::string snapshot_name(const std::string& model, std::size_t k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu.csv", model.c_str(), k);
  return buf;
}

template <typename Field, typename StepFn>
void advance_with_snapshots(Field& field, const ExperimentConfig& config, const fs::path& dir,
                            const std::string& model, StepFn&& step_to) {
  std::vector<double> times = config.snapshot_times;
  std::sort(times.begin(), times.end());
  std::size_t k = 0;
  for (double target : times) {
    step_to(field, target);
    std::ofstream out(dir / snapshot_name(model, k));
    mcdiff::write_snapshot(out, field);
    std::printf("wrote %s (t = %.6g)\n", snapshot_name(model, k).c_str(), field.time());
    ++k;
  }
  step_to(field, config.t_end);
}

int run_simulate(const Options& opt, const ExperimentConfig& config) {
  const auto& spec = config.mixture;
  const fs::path dir = output_dir(opt, config);
  const mcdiff::FieldU1D initial =
      mcdiff::make_initial_field(config.initial, config.cells, config.length);

  if (opt.model == "relaxation") {
    mcdiff::Field1D field = mcdiff::well_prepared_state(spec, initial);
    auto step_to = [&](mcdiff::Field1D& f, double target) {
      while (f.time() < target) {
        const double dt =
            std::min(mcdiff::relaxation_stable_dt(spec, f, config.cfl), target - f.time());
        mcdiff::step_with_dt(spec, f, dt);
        if (target - f.time() < 1e-14 * std::max(1.0, target)) {
          f.set_time(target);
        }
      }
    };
    advance_with_snapshots(field, config, dir, "relaxation", step_to);
    std::printf("total entropy at t = %.6g: %.17g\n", field.time(),
                mcdiff::total_entropy(spec, field));
  } else if (opt.model == "limit") {
    mcdiff::FieldU1D field = initial;
    auto step_to = [&](mcdiff::FieldU1D& f, double target) {
      while (f.time() < target) {
        const double dt = std::min(mcdiff::limit_stable_dt(spec, f, config.cfl, spec.epsilon),
                                   target - f.time());
        mcdiff::limit_step_with_dt(spec, f, dt, spec.epsilon);
        if (target - f.time() < 1e-14 * std::max(1.0, target)) {
          f.set_time(target);
        }
      }
    };
    advance_with_snapshots(field, config, dir, "limit", step_to);
    std::printf("total entropy at t = %.6g: %.17g\n", field.time(),
                mcdiff::limit_total_entropy(spec, field));
  } else {
    throw mcdiff::ConfigError("--model must be 'relaxation' or 'limit'");
  }
  return kExitOk;
}

int run_sweep(const Options& opt, const ExperimentConfig& config) {
  mcdiff::SweepOptions sweep;
  sweep.cells = config.cells;
  sweep.length = config.length;
  sweep.t_end = config.t_end;
  sweep.cfl = config.cfl;
  sweep.threads = opt.threads > 0 ? opt.threads
                                  : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (config.eps_list.size() < 3) {
    throw mcdiff::ConfigError("sweep: 'eps_list' needs at least three values");
  }
  const mcdiff::SweepResult result =
      mcdiff::epsilon_sweep(config.mixture, config.initial, config.eps_list, sweep);
  const fs::path dir = output_dir(opt, config);
  {
    std::ofstream out(dir / "sweep.csv");
    mcdiff::write_sweep_csv(out, result);
  }
  const bool pass = result.order >= config.order_min && result.order <= config.order_max;
  nlohmann::json summary = {{"fitted_order", result.order},
                            {"order_band", {config.order_min, config.order_max}},
                            {"pass", pass}};
  write_json(dir / "sweep_summary.json", summary);
  for (const auto& row : result.rows) {
    std::printf("eps = %-10.4g error = %.6e  steps = %d\n", row.epsilon, row.error, row.steps);
  }
  std::printf("fitted order %.4f, band [%.2f, %.2f]: %s\n", result.order, config.order_min,
              config.order_max, pass ? "PASS" : "FAIL");
  return pass ? kExitOk : kExitCriteriaFail;
}

int run_lam_compare(const Options& opt, const ExperimentConfig& config) {
  const auto& spec = config.mixture;
  if (spec.dimension != 1) {
    throw mcdiff::ConfigError("lam-compare works on the 1-D initial profile (d = 1)");
  }
  const int n = spec.num_species();
  const mcdiff::FieldU1D field =
      mcdiff::make_initial_field(config.initial, config.cells, config.length);

  std::vector<std::vector<double>> grads(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> values(static_cast<std::size_t>(field.cells()));
    for (int c = 0; c < field.cells(); ++c) {
      values[static_cast<std::size_t>(c)] = field.densities(c)[static_cast<std::size_t>(i)];
    }
    grads[static_cast<std::size_t>(i)] = mcdiff::periodic_central_gradient4(values, field.dx());
  }

  // Force identity p (dbar_j / rho_j - dbar_N / rho_N) = grad p_j / rho_j - grad p_N / rho_N
  double residual = 0.0;
  mcdiff::Matrix g(n, 1);
  for (int c = 0; c < field.cells(); ++c) {
    const std::vector<double> rho = field.densities(c);
    for (int i = 0; i < n; ++i) {
      g(i, 0) = grads[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    }
    const mcdiff::Matrix lam = mcdiff::lam_forces(spec, rho, g);
    const mcdiff::Matrix ours = mcdiff::entropic_force(spec, rho, g);
    double p = 0.0;
    for (int i = 0; i < n; ++i) {
      p += mcdiff::pressure(spec.laws[static_cast<std::size_t>(i)], rho[static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < n - 1; ++j) {
      const double lhs = p * (lam(j, 0) / rho[static_cast<std::size_t>(j)] -
                              lam(n - 1, 0) / rho[static_cast<std::size_t>(n - 1)]);
      residual = std::max(residual, std::abs(lhs - ours(j, 0)));
    }
  }

  const int probe = field.cells() / 3;
  const std::vector<double> rho = field.densities(probe);
  std::vector<double> uniform(static_cast<std::size_t>(n), 1.0);
  std::vector<double> ramp(static_cast<std::size_t>(n));
  std::iota(ramp.begin(), ramp.end(), 1.0);
  const mcdiff::Matrix d_uniform = mcdiff::lam_diffusion_matrix(spec, rho, uniform);
  const mcdiff::Matrix d_ramp = mcdiff::lam_diffusion_matrix(spec, rho, ramp);
  const mcdiff::Matrix d_ours = mcdiff::diffusion_matrix(spec, rho);
  const double omega_spread = (d_uniform - d_ramp).cwiseAbs().maxCoeff();

  auto to_rows = [](const mcdiff::Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        row.push_back(m(i, j));
      }
      rows.push_back(row);
    }
    return rows;
  };
  const bool pass = residual <= 1e-12 && omega_spread > 1e-8;
  nlohmann::json out = {
      {"probe_cell", probe},
      {"densities", rho},
      {"force_identity_residual", residual},
      {"lam",
       {{{"omega", uniform},
         {"Dbar", to_rows(d_uniform)},
         {"asymmetry", mcdiff::relative_asymmetry(d_uniform)}},
        {{"omega", ramp},
         {"Dbar", to_rows(d_ramp)},
         {"asymmetry", mcdiff::relative_asymmetry(d_ramp)}}}},
      {"omega_max_entry_difference", omega_spread},
      {"maxwell_D", to_rows(d_ours)},
      {"maxwell_D_asymmetry", mcdiff::relative_asymmetry(d_ours)},
      {"pass", pass}};
  const fs::path dir = output_dir(opt, config);
  write_json(dir / "lam_compare.json", out);
  std::printf("force identity residual      %.3e\n", residual);
  std::printf("Dbar omega dependence (max)  %.3e\n", omega_spread);
  std::printf("Dbar asymmetry  omega=1..1   %.3e\n", mcdiff::relative_asymmetry(d_uniform));
  std::printf("Dbar asymmetry  omega=1..N   %.3e\n", mcdiff::relative_asymmetry(d_ramp));
  std::printf("D (Maxwell) asymmetry        %.3e\n", mcdiff::relative_asymmetry(d_ours));
  return pass ? kExitOk : kExitCriteriaFail;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicomponent diffusion: structure checks, relaxation and limit solvers"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "experiment JSON")->required();
    sub->add_option("--out", opt.out_dir, "output directory (overrides output.directory)");
    sub->add_option("--threads", opt.threads, "worker threads (default: all)");
  };
  CLI::App* check = app.add_subcommand("check", "certify the entropy / dissipation structure");
  add_common(check);
  check->add_option("--seed", opt.seed, "sampling seed");
  check->add_option("--samples", opt.samples, "random states (>= 100)");
  CLI::App* simulate = app.add_subcommand("simulate", "run one model and write CSV snapshots");
  add_common(simulate);
  simulate->add_option("--model", opt.model, "relaxation | limit")
      ->check(CLI::IsMember({"relaxation", "limit"}));
  CLI::App* sweep = app.add_subcommand("sweep", "epsilon sweep and fitted convergence order");
  add_common(sweep);
  CLI::App* lam = app.add_subcommand("lam-compare", "compare with Lam's diffusion law");
  add_common(lam);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    const ExperimentConfig config = mcdiff::load_config(opt.config_path);
    if (*check) {
      return run_check(opt, config);
    }
    if (*simulate) {
      return run_simulate(opt, config);
    }
    if (*sweep) {
      return run_sweep(opt, config);
    }
    return run_lam_compare(opt, config);
  } catch (const mcdiff::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const mcdiff::Error& e) {
    std::cerr << "aborted: " << e.what() << '\n';
    return kExitRuntimeAbort;
  } catch (const std::exception& e) {
    std::cerr << "aborted: " << e.what() << '\n';
    return kExitRuntimeAbort;
  }
}
