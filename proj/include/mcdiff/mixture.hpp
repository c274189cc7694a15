#pragma once

#include "mcdiff/linalg.hpp"

#include <functional>
#include <span>
#include <vector>

namespace mcdiff {

/// Barotropic pressure law of one species.
///
/// IsothermalIdeal: p = c * rho.  PowerLaw: p = kappa * rho^gamma, gamma >= 1.
struct PressureLaw {
  enum class Kind { IsothermalIdeal, PowerLaw };

  Kind kind = Kind::IsothermalIdeal;
  double coefficient = 1.0; ///< c (IsothermalIdeal) or kappa (PowerLaw)
  double exponent = 1.0;    ///< gamma, PowerLaw only

  static PressureLaw isothermal(double c);
  static PressureLaw power_law(double kappa, double gamma);

  /// Throws InvalidSpec unless coefficient > 0 and (PowerLaw) gamma >= 1.
  void validate() const;

  friend bool operator==(const PressureLaw&, const PressureLaw&) = default;
};

double pressure(const PressureLaw& law, double rho);
double pressure_derivative(const PressureLaw& law, double rho);

/// Integral of p(z)/z^2 from `rho_ref` to `rho`, in closed form per law kind.
double pressure_integral(const PressureLaw& law, double rho_ref, double rho);

/// Collision coefficients as a function of the N species densities.
using SigmaFunction = std::function<Matrix(std::span<const double>)>;

/// Mixture of N >= 2 isothermal inviscid species with Stefan-Maxwell collisions.
///
/// `sigma` holds sigma_ij = sigma_ji > 0 off the diagonal; the diagonal is ignored
/// and stored as 0. `sigma_of_densities`, when set, replaces the constant matrix in
/// every density-dependent assembly (it must return a valid sigma matrix).
struct MixtureSpec {
  std::vector<PressureLaw> laws;
  std::vector<double> ref_densities;
  Matrix sigma;
  double epsilon = 1.0;
  int dimension = 1;
  SigmaFunction sigma_of_densities;

  int num_species() const { return static_cast<int>(laws.size()); }

  /// Throws InvalidSpec on any broken invariant.
  void validate() const;

  /// Validated construction from explicit collision coefficients.
  static MixtureSpec make(std::vector<PressureLaw> laws,
                          std::vector<double> ref_densities, Matrix sigma,
                          double epsilon, int dimension = 1);

  /// sigma_ij = m_i m_j / (m_i + m_j) * nu_ij (reduced mass times collision frequency).
  static MixtureSpec from_kinetic(std::vector<PressureLaw> laws,
                                  std::vector<double> ref_densities,
                                  std::span<const double> molecular_masses,
                                  const Matrix& collision_frequencies,
                                  double epsilon, int dimension = 1);
};

/// Throws NonPositiveDensity if any entry is <= 0.
void require_positive(std::span<const double> densities, const char* where);

/// K_ij = delta_ij sum_k sigma_ik - sigma_ij, with the constant sigma.
Matrix assemble_K(const MixtureSpec& spec);

/// Same, with sigma evaluated at `densities` when the mixture carries a sigma_of_densities hook.
Matrix assemble_K(const MixtureSpec& spec, std::span<const double> densities);

/// Inverse of the leading (N-1)x(N-1) block of K.
Matrix reduced_K_inverse(const MixtureSpec& spec);
Matrix reduced_K_inverse(const MixtureSpec& spec, std::span<const double> densities);

/// Phi_ij = delta_ij / rho_j + 1 / rho_N, i, j < N.
Matrix phi_matrix(std::span<const double> densities);

/// C_ij = rho_j delta_ij - rho_i rho_j / rho, i, j < N.
Matrix c_matrix(std::span<const double> densities);

/// D = C * Kbar * C with Kbar the reduced inverse at the given densities.
Matrix diffusion_matrix(const MixtureSpec& spec, std::span<const double> densities);

/// Density-dependent collision algebra with the reduced K and its inverse cached
/// when sigma is constant. Holds a reference to the MixtureSpec.
class CollisionOperator {
public:
  explicit CollisionOperator(const MixtureSpec& spec);

  Matrix reduced_K(std::span<const double> densities) const;
  Matrix reduced_K_inverse(std::span<const double> densities) const;
  Matrix diffusion(std::span<const double> densities) const;

private:
  const MixtureSpec& spec_;
  bool constant_ = true;
  Matrix reduced_k_;
  Matrix reduced_k_inverse_;
};

} // namespace mcdiff
