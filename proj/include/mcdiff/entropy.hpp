#pragma once

#include "mcdiff/linalg.hpp"
#include "mcdiff/mixture.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mcdiff {

/// Per-species conservative state (rho_i, rho_i V_i), i = 1..N, in d dimensions.
///
/// Packed vector layout is species-major: block i = (rho_i, m_i1, ..., m_id).
struct StateU {
  int dimension = 1;
  std::vector<double> rho;      ///< N densities
  std::vector<double> momentum; ///< N x d, row-major

  int num_species() const { return static_cast<int>(rho.size()); }
  int block_size() const { return dimension + 1; }
  double momentum_at(int species, int axis) const {
    return momentum[static_cast<std::size_t>(species * dimension + axis)];
  }
  double velocity(int species, int axis) const {
    return momentum_at(species, axis) / rho[static_cast<std::size_t>(species)];
  }

  Vector packed() const;
  static StateU unpack(const Vector& packed, int num_species, int dimension);
};

/// Equilibrium mode u = (rho, rho V, rho_1, ..., rho_{N-1}).
struct ConservedU {
  double rho = 1.0;
  std::vector<double> momentum; ///< d components of rho V
  std::vector<double> partial;  ///< rho_1 .. rho_{N-1}

  int num_species() const { return static_cast<int>(partial.size()) + 1; }
  int dimension() const { return static_cast<int>(momentum.size()); }

  /// All N densities, rho_N = rho - sum(partial). Throws InvalidConserved when
  /// rho_N <= 0 and NonPositiveDensity when a partial density is <= 0.
  std::vector<double> densities() const;

  /// Layout (rho, m_1..m_d, rho_1..rho_{N-1}).
  Vector packed() const;
  static ConservedU unpack(const Vector& packed, int num_species, int dimension);
};

/// Conserved mode of a full state (J_i dropped).
ConservedU conserved_mode(const StateU& state);

/// Equilibrium state (all V_i = V) with the given conserved mode.
StateU equilibrium_state(const ConservedU& u);

double entropy(const MixtureSpec& spec, const StateU& state);
Vector entropy_gradient(const MixtureSpec& spec, const StateU& state);
Matrix entropy_hessian(const MixtureSpec& spec, const StateU& state);

/// Physical flux F_j(U) along `axis` (0-based), packed like StateU.
Vector flux(const MixtureSpec& spec, const StateU& state, int axis);

/// Collision source Q(U) without the 1/epsilon factor: (0, -sum_k K_ik V_k) per species.
Vector collision_source(const MixtureSpec& spec, const StateU& state);

/// Block matrix with L_ik = diag(0, K_ik I_d), so that Q = -L grad(eta).
Matrix dissipation_matrix(const MixtureSpec& spec, const StateU& state);

/// Relative asymmetry of eta_UU * dF_axis/dU, with a centered finite-difference flux
/// Jacobian of relative step `h` (component step h * (1 + |U_k|)).
double check_symmetry_condition(const MixtureSpec& spec, const StateU& state, int axis,
                                double h = 1e-6);

struct NullSpaceReport {
  bool pass = true;
  int samples = 0;
  double max_residual = 0.0;   ///< max |L w| over the fixed basis, all samples
  double min_eigenvalue = 0.0; ///< most negative eigenvalue of L seen
  int expected_rank = 0;
  int rank_mismatches = 0;
};

/// The fixed null-space basis: one column per density slot and one per axis
/// (all velocity slots equal).
Matrix fixed_null_basis(int num_species, int dimension);

/// Checks on random states that L annihilates the fixed basis and has rank d(N-1).
NullSpaceReport null_space_check(const MixtureSpec& spec, int samples,
                                 std::uint64_t seed = 1);

double equilibrium_entropy(const MixtureSpec& spec, const ConservedU& u);

/// Finite-difference Hessian of equilibrium_entropy in the packed u layout.
Matrix equilibrium_entropy_hessian(const MixtureSpec& spec, const ConservedU& u,
                                   double h = 1e-4);

/// grad p_i / rho_i - grad p_N / rho_N for i < N. `density_gradients` is N x d.
Matrix entropic_force(const MixtureSpec& spec, std::span<const double> densities,
                      const Matrix& density_gradients);

/// diag(0_{d+1}, D(u)) |xi|^2.
Matrix symbol_matrix(const MixtureSpec& spec, const ConservedU& u,
                     std::span<const double> xi);

struct SymbolNullSpace {
  Matrix basis; ///< orthonormal columns
  int dimension = 0;
};

/// Null space of symbol_matrix; throws ZeroFrequency when xi == 0.
SymbolNullSpace symbol_matrix_nullspace(const MixtureSpec& spec, const ConservedU& u,
                                        std::span<const double> xi);

} // namespace mcdiff
