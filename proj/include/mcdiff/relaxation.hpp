#pragma once

#include "mcdiff/grid.hpp"
#include "mcdiff/mixture.hpp"

#include <iosfwd>
#include <vector>

namespace mcdiff {

/// How the stiff collision source is combined with the hyperbolic update.
enum class Splitting {
  Lie,    ///< hyperbolic substep, then one backward-Euler source step over dt
  Strang, ///< half source, hyperbolic, half source
};

/// Per-species tendency of the conservative U-system, (d rho_i/dt, d m_i/dt) per cell.
class SpeciesTendency {
public:
  SpeciesTendency(int num_species, int cells)
      : num_species_(num_species), cells_(cells),
        data_(static_cast<std::size_t>(2 * num_species * cells), 0.0) {}

  int num_species() const { return num_species_; }
  int cells() const { return cells_; }
  double& mass(int c, int i) { return data_[pos(c, i)]; }
  double mass(int c, int i) const { return data_[pos(c, i)]; }
  double& momentum(int c, int i) { return data_[pos(c, i) + 1]; }
  double momentum(int c, int i) const { return data_[pos(c, i) + 1]; }

  double total_mass(int c) const;
  double total_momentum(int c) const;

private:
  std::size_t pos(int c, int i) const {
    return static_cast<std::size_t>(2 * (c * num_species_ + i));
  }

  int num_species_;
  int cells_;
  std::vector<double> data_;
};

/// Largest frozen characteristic speed max |V_i| + sqrt(p_i') over cells and species.
double relaxation_max_speed(const MixtureSpec& spec, const Field1D& field);

/// cfl * dx / relaxation_max_speed. Throws CflViolation unless cfl is in (0, 1].
double relaxation_stable_dt(const MixtureSpec& spec, const Field1D& field, double cfl);

/// Rusanov (local Lax-Friedrichs) tendency of the per-species Euler fluxes.
SpeciesTendency hyperbolic_rhs(const MixtureSpec& spec, const Field1D& field);

/// Forward-Euler hyperbolic substep of length dt (no collisions).
void hyperbolic_step(const MixtureSpec& spec, Field1D& field, double dt);

/// Backward Euler for dJ/dt = -(1/eps) K Phi J, per cell at frozen densities.
void stiff_source_step(const MixtureSpec& spec, Field1D& field, double dt);

/// One split step with an explicit dt (checked against the stability bound).
void step_with_dt(const MixtureSpec& spec, Field1D& field, double dt,
                  Splitting splitting = Splitting::Lie);

/// One split step with dt = cfl * dx / max speed; returns the dt taken.
double step(const MixtureSpec& spec, Field1D& field, double cfl,
            Splitting splitting = Splitting::Lie);

/// sum over cells of eta(U(cell)) * dx.
double total_entropy(const MixtureSpec& spec, const Field1D& field);

/// CSV snapshot: x,rho,momentum,rho_1..rho_{N-1},J_1..J_{N-1}.
void write_snapshot(std::ostream& out, const Field1D& field);

} // namespace mcdiff
