#include "mcdiff/harness.hpp"

#include "mcdiff/closure.hpp"
#include "mcdiff/csv.hpp"
#include "mcdiff/entropy.hpp"
#include "mcdiff/errors.hpp"
#include "mcdiff/limit.hpp"
#include "mcdiff/relaxation.hpp"
#include "mcdiff/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

namespace mcdiff {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

} // namespace

InitialProfile InitialProfile::standard() {
  InitialProfile p;
  p.kind = Kind::SineMixture;
  p.base = {1.0, 0.8, 1.2};
  p.amplitudes = {0.1, -0.05, 0.08};
  p.phases = {0.0, 2.0, 4.0};
  p.velocity_amplitude = 0.1;
  return p;
}

const char* to_string(InitialProfile::Kind kind) {
  switch (kind) {
  case InitialProfile::Kind::SineMixture:
    return "sine-mixture";
  case InitialProfile::Kind::GaussianBump:
    return "gaussian-bump";
  case InitialProfile::Kind::Uniform:
    return "uniform";
  }
  return "unknown";
}

InitialProfile::Kind profile_kind_from_string(const std::string& name) {
  if (name == "sine-mixture") {
    return InitialProfile::Kind::SineMixture;
  }
  if (name == "gaussian-bump") {
    return InitialProfile::Kind::GaussianBump;
  }
  if (name == "uniform") {
    return InitialProfile::Kind::Uniform;
  }
  throw ConfigError("unknown initial profile kind '" + name + "'");
}

FieldU1D make_initial_field(const InitialProfile& profile, int cells, double length) {
  const int n = static_cast<int>(profile.base.size());
  if (n < 2) {
    throw ConfigError("initial profile needs at least two species");
  }
  if (profile.kind != InitialProfile::Kind::Uniform &&
      (static_cast<int>(profile.amplitudes.size()) != n ||
       static_cast<int>(profile.phases.size()) != n)) {
    throw ConfigError("initial profile needs one amplitude and one phase per species");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  FieldU1D field(n, cells, length);
  for (int c = 0; c < cells; ++c) {
    const double s = field.center(c) / length;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double rho = profile.base[idx(i)];
      switch (profile.kind) {
      case InitialProfile::Kind::SineMixture:
        rho += profile.amplitudes[idx(i)] * std::sin(two_pi * s + profile.phases[idx(i)]);
        break;
      case InitialProfile::Kind::GaussianBump: {
        // periodic distance to the bump centre
        double r = s - profile.phases[idx(i)];
        r -= std::round(r);
        rho += profile.amplitudes[idx(i)] * std::exp(-(r * r) / (profile.width * profile.width));
        break;
      }
      case InitialProfile::Kind::Uniform:
        break;
      }
      if (i < n - 1) {
        field.partial(c, i) = rho;
      }
      total += rho;
    }
    field.rho(c) = total;
    const double v = profile.velocity_mean + (profile.kind == InitialProfile::Kind::Uniform
                                                  ? 0.0
                                                  : profile.velocity_amplitude *
                                                        std::sin(two_pi * s));
    field.momentum(c) = total * v;
  }
  field.require_positive();
  return field;
}

MixtureSpec standard_mixture(double epsilon) {
  std::vector<PressureLaw> laws{PressureLaw::isothermal(1.0), PressureLaw::isothermal(1.2),
                                PressureLaw::isothermal(0.8)};
  Matrix sigma = Matrix::Ones(3, 3);
  return MixtureSpec::make(std::move(laws), {1.0, 1.0, 1.0}, std::move(sigma), epsilon, 1);
}

namespace {

SweepRow run_one(const MixtureSpec& base, const InitialProfile& profile, double epsilon,
                 const SweepOptions& options) {
  MixtureSpec spec = base;
  spec.epsilon = epsilon;
  spec.validate();

  const FieldU1D initial = make_initial_field(profile, options.cells, options.length);
  Field1D relax = well_prepared_state(spec, initial);
  FieldU1D limit = initial;

  SweepRow row;
  row.epsilon = epsilon;
  double t = 0.0;
  for (int k = 1; k <= options.samples; ++k) {
    const double target = options.t_end * k / options.samples;
    while (t < target) {
      double dt = std::min(relaxation_stable_dt(spec, relax, options.cfl),
                           limit_stable_dt(spec, limit, options.cfl, epsilon));
      bool last = false;
      if (t + dt >= target * (1.0 - 1e-14)) {
        dt = target - t;
        last = true;
      }
      step_with_dt(spec, relax, dt, Splitting::Lie);
      limit_step_with_dt(spec, limit, dt, epsilon);
      ++row.steps;
      t = last ? target : t + dt;
    }
    row.error = std::max(row.error, conserved_l2_difference(conserved_field(relax), limit));
  }
  return row;
}

} // namespace

SweepResult epsilon_sweep(const MixtureSpec& spec, const InitialProfile& profile,
                          const std::vector<double>& eps_list, const SweepOptions& options) {
  if (eps_list.size() < 3) {
    throw ConfigError("an epsilon sweep needs at least three values");
  }
  for (std::size_t k = 1; k < eps_list.size(); ++k) {
    if (!(eps_list[k] < eps_list[k - 1])) {
      throw ConfigError("epsilon list must be strictly decreasing");
    }
  }
  if (options.samples < 1 || !(options.t_end > 0.0)) {
    throw ConfigError("sweep needs t_end > 0 and at least one sample time");
  }

  SweepResult result;
  result.rows.resize(eps_list.size());
  std::vector<std::exception_ptr> failures(eps_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < eps_list.size(); k = next++) {
      try {
        result.rows[k] = run_one(spec, profile, eps_list[k], options);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(options.threads, 1, static_cast<int>(eps_list.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  for (const auto& f : failures) {
    if (f) {
      std::rethrow_exception(f);
    }
  }

  for (std::size_t k = 1; k < result.rows.size(); ++k) {
    std::vector<SweepRow> head(result.rows.begin(),
                               result.rows.begin() + static_cast<std::ptrdiff_t>(k + 1));
    result.rows[k].running_order = fit_order(head);
  }
  result.order = fit_order(result.rows);
  return result;
}

double fit_order(const std::vector<double>& epsilons, const std::vector<double>& errors) {
  if (epsilons.size() != errors.size() || epsilons.size() < 2) {
    throw DegenerateFit("order fit needs matching epsilon and error lists of length >= 2");
  }
  const auto n = static_cast<double>(epsilons.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (!(errors[k] > 0.0) || !(epsilons[k] > 0.0)) {
      throw DegenerateFit("order fit needs positive epsilons and errors");
    }
    const double x = std::log(epsilons[k]);
    const double y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) {
    throw DegenerateFit("order fit needs distinct epsilons");
  }
  return (n * sxy - sx * sy) / denom;
}

double fit_order(const std::vector<SweepRow>& rows) {
  std::vector<double> eps;
  std::vector<double> err;
  for (const auto& r : rows) {
    eps.push_back(r.epsilon);
    err.push_back(r.error);
  }
  return fit_order(eps, err);
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "epsilon,error,fitted_order_running\n";
  for (const auto& row : result.rows) {
    out << format_double(row.epsilon) << ',' << format_double(row.error) << ',';
    if (row.running_order) {
      out << format_double(*row.running_order);
    }
    out << '\n';
  }
}

const ConditionResult& StructureReport::find(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.condition == name) {
      return c;
    }
  }
  throw Error("no structure condition named '" + name + "'");
}

nlohmann::json StructureReport::to_json() const {
  nlohmann::json out;
  out["pass"] = pass;
  out["conditions"] = nlohmann::json::array();
  for (const auto& c : conditions) {
    out["conditions"].push_back({{"condition", c.condition},
                                 {"samples", c.samples},
                                 {"max_violation", c.max_violation},
                                 {"threshold", c.threshold},
                                 {"pass", c.pass}});
  }
  return out;
}

namespace {

/// Running maxima for the battery, in a fixed condition order.
class Battery {
public:
  Battery() {
    add("entropy_convexity", 0.0);
    add("entropy_flux_symmetry", 1e-5);
    add("source_factorization", 1e-12);
    add("entropy_dissipation_sign", 1e-12);
    add("dissipation_matrix_psd", 1e-12);
    add("dissipation_matrix_rank", 0.0);
    add("null_space_invariance", 1e-12);
    add("phi_c_inverse", 1e-12);
    add("diffusion_matrix_symmetry", 1e-12);
    add("diffusion_matrix_positive", 0.0);
    add("equilibrium_entropy_convexity", 0.0);
    add("isotropy_null_space", 1e-12);
  }

  void sample(const MixtureSpec& spec, Rng& rng) {
    const int n = spec.num_species();
    const int d = spec.dimension;
    const StateU state = random_state(spec, rng);

    const Matrix hess = entropy_hessian(spec, state);
    record("entropy_convexity", cholesky_succeeds(hess) ? 0.0 : 1.0);

    double asym = 0.0;
    for (int axis = 0; axis < d; ++axis) {
      asym = std::max(asym, check_symmetry_condition(spec, state, axis, 1e-6));
    }
    record("entropy_flux_symmetry", asym);

    const Vector grad = entropy_gradient(spec, state);
    const Vector q = collision_source(spec, state);
    const Matrix l = dissipation_matrix(spec, state);
    record("source_factorization", (q + l * grad).cwiseAbs().maxCoeff());
    record("entropy_dissipation_sign", std::max(0.0, grad.dot(q)));
    record("dissipation_matrix_psd", std::max(0.0, -min_symmetric_eigenvalue(l)));
    record("dissipation_matrix_rank", numerical_rank(l) == d * (n - 1) ? 0.0 : 1.0);
    record("null_space_invariance", (l * fixed_null_basis(n, d)).cwiseAbs().maxCoeff());

    const ConservedU u = conserved_mode(state);
    const std::vector<double> rho = u.densities();
    const Matrix cphi = c_matrix(rho) * phi_matrix(rho);
    record("phi_c_inverse",
           (cphi - Matrix::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff());
    const Matrix dmat = diffusion_matrix(spec, rho);
    record("diffusion_matrix_symmetry", relative_asymmetry(dmat));
    record("diffusion_matrix_positive", cholesky_succeeds(dmat) ? 0.0 : 1.0);
    record("equilibrium_entropy_convexity",
           cholesky_succeeds(equilibrium_entropy_hessian(spec, u)) ? 0.0 : 1.0);

    const std::vector<double> xi = random_frequency(d, rng);
    const SymbolNullSpace ns = symbol_matrix_nullspace(spec, u, xi);
    Matrix canonical = Matrix::Zero(n + d, n + d);
    canonical.topLeftCorner(d + 1, d + 1).setIdentity();
    double iso = ns.dimension == d + 1 ? 0.0 : 1.0;
    iso = std::max(iso, (projector(ns.basis) - canonical).cwiseAbs().maxCoeff());
    record("isotropy_null_space", iso);
  }

  StructureReport finish() {
    StructureReport report;
    report.conditions = conditions_;
    for (auto& c : report.conditions) {
      c.pass = c.samples > 0 && c.max_violation <= c.threshold;
      report.pass = report.pass && c.pass;
    }
    return report;
  }

private:
  void add(const char* name, double threshold) {
    ConditionResult c;
    c.condition = name;
    c.threshold = threshold;
    conditions_.push_back(c);
  }

  void record(const char* name, double violation) {
    for (auto& c : conditions_) {
      if (c.condition == name) {
        ++c.samples;
        // NaN must register as a failure
        if (std::isnan(violation)) {
          c.max_violation = violation;
        } else if (!std::isnan(c.max_violation)) {
          c.max_violation = std::max(c.max_violation, violation);
        }
        return;
      }
    }
  }

  std::vector<ConditionResult> conditions_;
};

} // namespace

StructureReport certify_structure(const MixtureSpec& spec, int samples, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  Battery battery;
  for (int s = 0; s < samples; ++s) {
    battery.sample(spec, rng);
  }
  return battery.finish();
}

StructureReport certify_random_mixtures(int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> species(2, 6);
  std::uniform_int_distribution<int> dims(1, 3);
  Battery battery;
  for (int s = 0; s < samples; ++s) {
    const int n = species(rng);
    const int d = dims(rng);
    const MixtureSpec spec = random_mixture(rng, n, d);
    battery.sample(spec, rng);
  }
  return battery.finish();
}

} // namespace mcdiff
