#pragma once

#include "mcdiff/grid.hpp"
#include "mcdiff/mixture.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mcdiff {

/// Smooth periodic initial data for the 1-D solvers.
struct InitialProfile {
  enum class Kind { SineMixture, GaussianBump, Uniform };

  Kind kind = Kind::SineMixture;
  std::vector<double> base;       ///< a_i, background density per species
  std::vector<double> amplitudes; ///< b_i
  std::vector<double> phases;     ///< phi_i (sine) or bump centres in [0, 1) (gaussian)
  double width = 0.1;             ///< gaussian bump width, fraction of the domain
  double velocity_mean = 0.0;
  double velocity_amplitude = 0.0;

  /// The reference smooth test used for the epsilon sweep (N = 3).
  static InitialProfile standard();
};

const char* to_string(InitialProfile::Kind kind);
InitialProfile::Kind profile_kind_from_string(const std::string& name);

/// Point values at cell centres: rho_i(x) and V(x) = mean + amp sin(2 pi x / L).
FieldU1D make_initial_field(const InitialProfile& profile, int cells, double length);

/// The reference mixture for the sweep: three isothermal species, c = (1, 1.2, 0.8),
/// sigma = 1 off the diagonal, reference densities 1.
MixtureSpec standard_mixture(double epsilon);

struct SweepRow {
  double epsilon = 0.0;
  double error = 0.0;
  std::optional<double> running_order; ///< fitted order over rows 0..k (k >= 1)
  int steps = 0;
};

struct SweepOptions {
  int cells = 1024;
  double length = 1.0;
  double t_end = 0.05;
  double cfl = 0.5;
  int samples = 20; ///< comparison times t_k = k * t_end / samples, k = 1..samples
  int threads = 1;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double order = 0.0;
};

/// sup over sample times of the L2 distance between the conserved mode of the
/// relaxation solution (well-prepared data) and the limit solution, per epsilon.
/// Both solvers advance in lock-step with a common dt.
SweepResult epsilon_sweep(const MixtureSpec& spec, const InitialProfile& profile,
                          const std::vector<double>& eps_list, const SweepOptions& options);

/// Least-squares slope of log(error) against log(epsilon).
double fit_order(const std::vector<double>& epsilons, const std::vector<double>& errors);
double fit_order(const std::vector<SweepRow>& rows);

/// sweep.csv: epsilon,error,fitted_order_running.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

struct ConditionResult {
  std::string condition;
  int samples = 0;
  double max_violation = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct StructureReport {
  std::vector<ConditionResult> conditions;
  bool pass = true;

  const ConditionResult& find(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Structure battery on random states of a fixed mixture.
StructureReport certify_structure(const MixtureSpec& spec, int samples,
                                  std::uint64_t seed = 1);

/// Same battery, drawing N in {2..6}, d in {1, 2, 3} and a random mixture per sample.
StructureReport certify_random_mixtures(int samples, std::uint64_t seed = 1);

} // namespace mcdiff
