#include "mcdiff/mixture.hpp"

#include "mcdiff/errors.hpp"

#include <cmath>
#include <string>

namespace mcdiff {

PressureLaw PressureLaw::isothermal(double c) {
  PressureLaw law{Kind::IsothermalIdeal, c, 1.0};
  law.validate();
  return law;
}

PressureLaw PressureLaw::power_law(double kappa, double gamma) {
  PressureLaw law{Kind::PowerLaw, kappa, gamma};
  law.validate();
  return law;
}

void PressureLaw::validate() const {
  if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
    throw InvalidSpec("pressure law coefficient must be positive and finite");
  }
  if (kind == Kind::PowerLaw && !(exponent >= 1.0 && std::isfinite(exponent))) {
    throw InvalidSpec("power-law exponent must satisfy gamma >= 1");
  }
}

namespace {

void check_density(double rho, const char* where) {
  if (!(rho > 0.0)) {
    throw NonPositiveDensity(std::string(where) + ": density " + std::to_string(rho) +
                             " is not positive");
  }
}

} // namespace

double pressure(const PressureLaw& law, double rho) {
  check_density(rho, "pressure");
  if (law.kind == PressureLaw::Kind::IsothermalIdeal) {
    return law.coefficient * rho;
  }
  return law.coefficient * std::pow(rho, law.exponent);
}

double pressure_derivative(const PressureLaw& law, double rho) {
  check_density(rho, "pressure_derivative");
  if (law.kind == PressureLaw::Kind::IsothermalIdeal) {
    return law.coefficient;
  }
  return law.coefficient * law.exponent * std::pow(rho, law.exponent - 1.0);
}

double pressure_integral(const PressureLaw& law, double rho_ref, double rho) {
  check_density(rho, "pressure_integral");
  check_density(rho_ref, "pressure_integral");
  if (law.kind == PressureLaw::Kind::IsothermalIdeal || law.exponent == 1.0) {
    return law.coefficient * std::log(rho / rho_ref);
  }
  const double g1 = law.exponent - 1.0;
  return law.coefficient * (std::pow(rho, g1) - std::pow(rho_ref, g1)) / g1;
}

void require_positive(std::span<const double> densities, const char* where) {
  for (std::size_t i = 0; i < densities.size(); ++i) {
    if (!(densities[i] > 0.0)) {
      throw NonPositiveDensity(std::string(where) + ": density of species " +
                               std::to_string(i + 1) + " is " +
                               std::to_string(densities[i]));
    }
  }
}

namespace {

void validate_sigma(const Matrix& sigma, int n) {
  if (sigma.rows() != n || sigma.cols() != n) {
    throw InvalidSpec("sigma must be an N x N matrix");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a = sigma(i, j);
      const double b = sigma(j, i);
      if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidSpec("sigma_" + std::to_string(i + 1) + std::to_string(j + 1) +
                          " must be positive and finite");
      }
      if (std::abs(a - b) > 1e-14 * std::max(a, b)) {
        throw InvalidSpec("sigma must be symmetric");
      }
    }
  }
}

Matrix k_from_sigma(const Matrix& sigma) {
  const Eigen::Index n = sigma.rows();
  Matrix k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) {
        row += sigma(i, j);
        k(i, j) = -sigma(i, j);
      }
    }
    k(i, i) = row;
  }
  return k;
}

} // namespace

void MixtureSpec::validate() const {
  const int n = num_species();
  if (n < 2) {
    throw InvalidSpec("a mixture needs at least two species");
  }
  for (const auto& law : laws) {
    law.validate();
  }
  if (static_cast<int>(ref_densities.size()) != n) {
    throw InvalidSpec("one reference density per species is required");
  }
  for (double r : ref_densities) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InvalidSpec("reference densities must be positive");
    }
  }
  validate_sigma(sigma, n);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidSpec("epsilon must be positive");
  }
  if (dimension < 1 || dimension > 3) {
    throw InvalidSpec("spatial dimension must be 1, 2 or 3");
  }
}

MixtureSpec MixtureSpec::make(std::vector<PressureLaw> laws,
                              std::vector<double> ref_densities, Matrix sigma,
                              double epsilon, int dimension) {
  MixtureSpec spec;
  spec.laws = std::move(laws);
  spec.ref_densities = std::move(ref_densities);
  spec.sigma = std::move(sigma);
  if (spec.sigma.rows() == spec.sigma.cols()) {
    spec.sigma.diagonal().setZero();
  }
  spec.epsilon = epsilon;
  spec.dimension = dimension;
  spec.validate();
  return spec;
}

MixtureSpec MixtureSpec::from_kinetic(std::vector<PressureLaw> laws,
                                      std::vector<double> ref_densities,
                                      std::span<const double> molecular_masses,
                                      const Matrix& collision_frequencies,
                                      double epsilon, int dimension) {
  const auto n = static_cast<Eigen::Index>(molecular_masses.size());
  if (collision_frequencies.rows() != n || collision_frequencies.cols() != n) {
    throw InvalidSpec("collision frequency matrix must be N x N");
  }
  for (double m : molecular_masses) {
    if (!(m > 0.0)) {
      throw InvalidSpec("molecular masses must be positive");
    }
  }
  Matrix sigma = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) {
        const double mi = molecular_masses[static_cast<std::size_t>(i)];
        const double mj = molecular_masses[static_cast<std::size_t>(j)];
        sigma(i, j) = mi * mj / (mi + mj) * collision_frequencies(i, j);
      }
    }
  }
  return make(std::move(laws), std::move(ref_densities), std::move(sigma), epsilon,
              dimension);
}

Matrix assemble_K(const MixtureSpec& spec) { return k_from_sigma(spec.sigma); }

Matrix assemble_K(const MixtureSpec& spec, std::span<const double> densities) {
  if (!spec.sigma_of_densities) {
    return k_from_sigma(spec.sigma);
  }
  require_positive(densities, "assemble_K");
  Matrix sigma = spec.sigma_of_densities(densities);
  validate_sigma(sigma, spec.num_species());
  return k_from_sigma(sigma);
}

Matrix reduced_K_inverse(const MixtureSpec& spec) {
  const Matrix k = assemble_K(spec);
  const Eigen::Index m = k.rows() - 1;
  return lu_inverse(k.topLeftCorner(m, m));
}

Matrix reduced_K_inverse(const MixtureSpec& spec, std::span<const double> densities) {
  const Matrix k = assemble_K(spec, densities);
  const Eigen::Index m = k.rows() - 1;
  return lu_inverse(k.topLeftCorner(m, m));
}

Matrix phi_matrix(std::span<const double> densities) {
  require_positive(densities, "phi_matrix");
  const auto m = static_cast<Eigen::Index>(densities.size()) - 1;
  const double inv_last = 1.0 / densities.back();
  Matrix phi = Matrix::Constant(m, m, inv_last);
  for (Eigen::Index i = 0; i < m; ++i) {
    phi(i, i) += 1.0 / densities[static_cast<std::size_t>(i)];
  }
  return phi;
}

Matrix c_matrix(std::span<const double> densities) {
  require_positive(densities, "c_matrix");
  const auto m = static_cast<Eigen::Index>(densities.size()) - 1;
  double total = 0.0;
  for (double r : densities) {
    total += r;
  }
  Matrix c(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double ri = densities[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m; ++j) {
      const double rj = densities[static_cast<std::size_t>(j)];
      c(i, j) = (i == j ? rj : 0.0) - ri * rj / total;
    }
  }
  return c;
}

Matrix diffusion_matrix(const MixtureSpec& spec, std::span<const double> densities) {
  require_positive(densities, "diffusion_matrix");
  const Matrix c = c_matrix(densities);
  const Matrix kbar = reduced_K_inverse(spec, densities);
  return c * kbar * c;
}

CollisionOperator::CollisionOperator(const MixtureSpec& spec)
    : spec_(spec), constant_(!spec.sigma_of_densities) {
  if (constant_) {
    const Matrix k = assemble_K(spec);
    const Eigen::Index m = k.rows() - 1;
    reduced_k_ = k.topLeftCorner(m, m);
    reduced_k_inverse_ = lu_inverse(reduced_k_);
  }
}

Matrix CollisionOperator::reduced_K(std::span<const double> densities) const {
  if (constant_) {
    return reduced_k_;
  }
  const Matrix k = assemble_K(spec_, densities);
  const Eigen::Index m = k.rows() - 1;
  return k.topLeftCorner(m, m);
}

Matrix CollisionOperator::reduced_K_inverse(std::span<const double> densities) const {
  if (constant_) {
    return reduced_k_inverse_;
  }
  return mcdiff::reduced_K_inverse(spec_, densities);
}

Matrix CollisionOperator::diffusion(std::span<const double> densities) const {
  if (!constant_) {
    return diffusion_matrix(spec_, densities);
  }
  const Matrix c = c_matrix(densities);
  return c * reduced_k_inverse_ * c;
}

} // namespace mcdiff
