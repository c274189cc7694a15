#pragma once

#include "mcdiff/grid.hpp"
#include "mcdiff/mixture.hpp"

#include <iosfwd>
#include <vector>

namespace mcdiff {

/// Tendency in the FieldU1D layout (rho, rho V, rho_1..rho_{N-1}) per cell.
struct LimitTendency {
  int width = 0;
  std::vector<double> data;

  double& at(int c, int k) { return data[static_cast<std::size_t>(c * width + k)]; }
  double at(int c, int k) const { return data[static_cast<std::size_t>(c * width + k)]; }
};

/// max over cells of |V| + max_i sqrt(p_i').
double limit_max_speed(const MixtureSpec& spec, const FieldU1D& field);

/// max over cells of ||D||_inf * (max_i p_i'/rho_i + (N-1) p_N'/rho_N).
double limit_diffusion_bound(const MixtureSpec& spec, const FieldU1D& field);

/// cfl * min(dx / speed, dx^2 / (2 eps lambda_D)); the parabolic bound is skipped
/// for eps == 0.
double limit_stable_dt(const MixtureSpec& spec, const FieldU1D& field, double cfl,
                       double epsilon);

/// Rusanov tendency of the Euler flux G(u).
LimitTendency limit_convective_rhs(const MixtureSpec& spec, const FieldU1D& field);

/// Flux-difference form of eps d/dx (D(u) force) with D at arithmetic face states
/// and two-point force gradients.
LimitTendency limit_diffusion_rhs(const MixtureSpec& spec, const FieldU1D& field,
                                  double epsilon);

/// Explicit Euler step with a given dt and diffusion scale eps >= 0.
void limit_step_with_dt(const MixtureSpec& spec, FieldU1D& field, double dt,
                        double epsilon);

/// Step with dt from limit_stable_dt at spec.epsilon; returns dt.
double limit_step(const MixtureSpec& spec, FieldU1D& field, double cfl);

/// sum over cells of eta_eq(u) * dx.
double limit_total_entropy(const MixtureSpec& spec, const FieldU1D& field);

/// CSV snapshot: x,rho,momentum,rho_1..rho_{N-1}.
void write_snapshot(std::ostream& out, const FieldU1D& field);

} // namespace mcdiff
