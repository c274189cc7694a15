#pragma once

#include "mcdiff/entropy.hpp"
#include "mcdiff/grid.hpp"
#include "mcdiff/linalg.hpp"
#include "mcdiff/mixture.hpp"

#include <span>

namespace mcdiff {

/// Diffusion fluxes produced by the truncated Maxwell-iteration closure.
struct FluxClosureResult {
  Matrix fluxes;    ///< (N-1) x d, J_1..J_{N-1}
  Vector last_flux; ///< d, J_N = -sum J_i
  Matrix forces;    ///< (N-1) x d, entropic forces
  Matrix diffusion; ///< (N-1) x (N-1), D(u)
};

/// J_i = -eps sum_j D_ij(u) force_j with forces from the N x d density gradients.
FluxClosureResult maxwell_flux(const MixtureSpec& spec, const ConservedU& u,
                               const Matrix& density_gradients);

/// Same law, driven by given entropic forces grad(d eta_eq / d rho_j), (N-1) x d.
FluxClosureResult maxwell_flux_from_forces(const MixtureSpec& spec, const ConservedU& u,
                                           const Matrix& forces);

/// Pre-symmetrization form of the law:
/// J_i = -eps sum_kl C_ik Kbar_kl (grad p_l - rho_l / rho grad sum_j p_j).
Matrix maxwell_flux_pressure_form(const MixtureSpec& spec, const ConservedU& u,
                                  const Matrix& density_gradients);

/// Second-order central derivative on a periodic grid.
std::vector<double> periodic_central_gradient(std::span<const double> values, double dx);

/// Fourth-order central derivative on a periodic grid.
std::vector<double> periodic_central_gradient4(std::span<const double> values, double dx);

/// Relaxation state whose conserved mode equals `field` exactly and whose J_i are the
/// closure values (second-order central density gradients).
Field1D well_prepared_state(const MixtureSpec& spec, const FieldU1D& field);

/// Khat_ij = K_ij + omega_i rho_j. Throws DegenerateOmega when sum(omega) == 0.
Matrix lam_khat(const MixtureSpec& spec, std::span<const double> densities,
                std::span<const double> omega);

/// Dbar = p * Khat^{-1}, p = sum of partial pressures.
Matrix lam_diffusion_matrix(const MixtureSpec& spec, std::span<const double> densities,
                            std::span<const double> omega);

/// dbar_j = grad(p_j / p) + (p_j / p - rho_j / rho) grad(ln p), N x d.
Matrix lam_forces(const MixtureSpec& spec, std::span<const double> densities,
                  const Matrix& density_gradients);

/// J_i = -eps sum_j rho_i Dbar_ij dbar_j, N x d.
Matrix lam_flux(const MixtureSpec& spec, std::span<const double> densities,
                const Matrix& density_gradients, std::span<const double> omega);

} // namespace mcdiff
