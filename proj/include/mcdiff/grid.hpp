#pragma once

#include "mcdiff/entropy.hpp"

#include <vector>

namespace mcdiff {

/// One cell of the relaxation system in d = 1:
/// (rho, rho V, rho_1..rho_{N-1}, J_1..J_{N-1}).
struct StateW {
  double rho = 1.0;
  double momentum = 0.0;
  std::vector<double> partial;
  std::vector<double> flux;

  int num_species() const { return static_cast<int>(partial.size()) + 1; }
  double velocity() const { return momentum / rho; }

  friend bool operator==(const StateW&, const StateW&) = default;
};

/// W -> U: rho_N = rho - sum rho_i, rho_i V_i = rho_i V + J_i, J_N = -sum J_i.
StateU to_species(const StateW& w);

/// U -> W for d = 1 states.
StateW from_species(const StateU& u);

/// Periodic 1-D grid of relaxation-system cell averages.
class Field1D {
public:
  Field1D() = default;
  Field1D(int num_species, int cells, double length);

  int num_species() const { return num_species_; }
  int cells() const { return cells_; }
  int width() const { return 2 * num_species_; }
  double length() const { return length_; }
  double dx() const { return length_ / cells_; }
  double center(int c) const { return (c + 0.5) * dx(); }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  double& rho(int c) { return at(c, 0); }
  double rho(int c) const { return at(c, 0); }
  double& momentum(int c) { return at(c, 1); }
  double momentum(int c) const { return at(c, 1); }
  double& partial(int c, int i) { return at(c, 2 + i); }
  double partial(int c, int i) const { return at(c, 2 + i); }
  double& flux(int c, int i) { return at(c, num_species_ + 1 + i); }
  double flux(int c, int i) const { return at(c, num_species_ + 1 + i); }

  /// rho - sum of the stored partial densities.
  double last_density(int c) const;

  StateW cell(int c) const;
  void set_cell(int c, const StateW& w);

  /// Throws NonPositiveDensity naming the first offending cell.
  void require_positive() const;

  const std::vector<double>& data() const { return data_; }

private:
  double& at(int c, int k) { return data_[static_cast<std::size_t>(c * width() + k)]; }
  double at(int c, int k) const { return data_[static_cast<std::size_t>(c * width() + k)]; }

  int num_species_ = 0;
  int cells_ = 0;
  double length_ = 1.0;
  double time_ = 0.0;
  std::vector<double> data_;
};

/// Periodic 1-D grid of conserved-mode cell averages (rho, rho V, rho_1..rho_{N-1}).
class FieldU1D {
public:
  FieldU1D() = default;
  FieldU1D(int num_species, int cells, double length);

  int num_species() const { return num_species_; }
  int cells() const { return cells_; }
  int width() const { return num_species_ + 1; }
  double length() const { return length_; }
  double dx() const { return length_ / cells_; }
  double center(int c) const { return (c + 0.5) * dx(); }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  double& rho(int c) { return at(c, 0); }
  double rho(int c) const { return at(c, 0); }
  double& momentum(int c) { return at(c, 1); }
  double momentum(int c) const { return at(c, 1); }
  double& partial(int c, int i) { return at(c, 2 + i); }
  double partial(int c, int i) const { return at(c, 2 + i); }

  double last_density(int c) const;

  /// Conserved state of one cell (d = 1).
  ConservedU cell(int c) const;
  void set_cell(int c, const ConservedU& u);

  /// All N densities of a cell.
  std::vector<double> densities(int c) const;

  void require_positive() const;

  const std::vector<double>& data() const { return data_; }

private:
  double& at(int c, int k) { return data_[static_cast<std::size_t>(c * width() + k)]; }
  double at(int c, int k) const { return data_[static_cast<std::size_t>(c * width() + k)]; }

  int num_species_ = 0;
  int cells_ = 0;
  double length_ = 1.0;
  double time_ = 0.0;
  std::vector<double> data_;
};

/// Conserved mode of a relaxation field (J dropped).
FieldU1D conserved_field(const Field1D& field);

/// Discrete L2 norm sqrt(dx * sum over cells and components of diff^2).
double conserved_l2_difference(const FieldU1D& a, const FieldU1D& b);

} // namespace mcdiff
