#include "mcdiff/closure.hpp"

#include "mcdiff/errors.hpp"

#include <cmath>

namespace mcdiff {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_gradients(const MixtureSpec& spec, std::span<const double> densities,
                     const Matrix& gradients, const char* where) {
  if (static_cast<int>(densities.size()) != spec.num_species() ||
      gradients.rows() != spec.num_species()) {
    throw InvalidSpec(std::string(where) + ": expected N densities and N gradient rows");
  }
  require_positive(densities, where);
}

} // namespace

FluxClosureResult maxwell_flux_from_forces(const MixtureSpec& spec, const ConservedU& u,
                                           const Matrix& forces) {
  const std::vector<double> rho = u.densities();
  FluxClosureResult out;
  out.forces = forces;
  out.diffusion = diffusion_matrix(spec, rho);
  out.fluxes = -spec.epsilon * (out.diffusion * forces);
  out.last_flux = -out.fluxes.colwise().sum().transpose();
  return out;
}

FluxClosureResult maxwell_flux(const MixtureSpec& spec, const ConservedU& u,
                               const Matrix& density_gradients) {
  const std::vector<double> rho = u.densities();
  check_gradients(spec, rho, density_gradients, "maxwell_flux");
  return maxwell_flux_from_forces(spec, u, entropic_force(spec, rho, density_gradients));
}

Matrix maxwell_flux_pressure_form(const MixtureSpec& spec, const ConservedU& u,
                                  const Matrix& density_gradients) {
  const std::vector<double> rho = u.densities();
  check_gradients(spec, rho, density_gradients, "maxwell_flux_pressure_form");
  const int n = spec.num_species();
  const Eigen::Index d = density_gradients.cols();
  Matrix grad_p(n, d);
  for (int i = 0; i < n; ++i) {
    grad_p.row(i) = density_gradients.row(i) * pressure_derivative(spec.laws[idx(i)], rho[idx(i)]);
  }
  const Eigen::RowVectorXd grad_total = grad_p.colwise().sum();
  Matrix drive(n - 1, d);
  for (int l = 0; l < n - 1; ++l) {
    drive.row(l) = grad_p.row(l) - (rho[idx(l)] / u.rho) * grad_total;
  }
  return -spec.epsilon * (c_matrix(rho) * reduced_K_inverse(spec, rho) * drive);
}

std::vector<double> periodic_central_gradient(std::span<const double> values, double dx) {
  const int m = static_cast<int>(values.size());
  std::vector<double> out(values.size());
  for (int c = 0; c < m; ++c) {
    const double right = values[idx((c + 1) % m)];
    const double left = values[idx((c - 1 + m) % m)];
    out[idx(c)] = (right - left) / (2.0 * dx);
  }
  return out;
}

std::vector<double> periodic_central_gradient4(std::span<const double> values, double dx) {
  const int m = static_cast<int>(values.size());
  std::vector<double> out(values.size());
  for (int c = 0; c < m; ++c) {
    const double p1 = values[idx((c + 1) % m)];
    const double p2 = values[idx((c + 2) % m)];
    const double m1 = values[idx((c - 1 + m) % m)];
    const double m2 = values[idx((c - 2 + 2 * m) % m)];
    out[idx(c)] = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * dx);
  }
  return out;
}

Field1D well_prepared_state(const MixtureSpec& spec, const FieldU1D& field) {
  field.require_positive();
  const int n = field.num_species();
  const int cells = field.cells();
  if (n != spec.num_species()) {
    throw InvalidSpec("well_prepared_state: species count does not match the mixture");
  }
  std::vector<std::vector<double>> gradients(idx(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> rho_i(idx(cells));
    for (int c = 0; c < cells; ++c) {
      rho_i[idx(c)] = i < n - 1 ? field.partial(c, i) : field.last_density(c);
    }
    gradients[idx(i)] = periodic_central_gradient(rho_i, field.dx());
  }

  Field1D out(n, cells, field.length());
  out.set_time(field.time());
  Matrix grad(n, 1);
  for (int c = 0; c < cells; ++c) {
    out.rho(c) = field.rho(c);
    out.momentum(c) = field.momentum(c);
    for (int i = 0; i < n - 1; ++i) {
      out.partial(c, i) = field.partial(c, i);
    }
    for (int i = 0; i < n; ++i) {
      grad(i, 0) = gradients[idx(i)][idx(c)];
    }
    const FluxClosureResult closure = maxwell_flux(spec, field.cell(c), grad);
    for (int i = 0; i < n - 1; ++i) {
      out.flux(c, i) = closure.fluxes(i, 0);
    }
  }
  return out;
}

Matrix lam_khat(const MixtureSpec& spec, std::span<const double> densities,
                std::span<const double> omega) {
  const int n = spec.num_species();
  if (static_cast<int>(omega.size()) != n || static_cast<int>(densities.size()) != n) {
    throw InvalidSpec("lam_khat: expected N densities and N weights");
  }
  require_positive(densities, "lam_khat");
  double sum = 0.0;
  double scale = 0.0;
  for (double w : omega) {
    sum += w;
    scale += std::abs(w);
  }
  if (scale == 0.0 || std::abs(sum) <= 1e-14 * scale) {
    throw DegenerateOmega("Lam weights must satisfy sum(omega) != 0");
  }
  Matrix khat = assemble_K(spec, densities);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      khat(i, j) += omega[idx(i)] * densities[idx(j)];
    }
  }
  return khat;
}

Matrix lam_diffusion_matrix(const MixtureSpec& spec, std::span<const double> densities,
                            std::span<const double> omega) {
  const Matrix khat = lam_khat(spec, densities, omega);
  double p = 0.0;
  for (int i = 0; i < spec.num_species(); ++i) {
    p += pressure(spec.laws[idx(i)], densities[idx(i)]);
  }
  return p * lu_inverse(khat);
}

Matrix lam_forces(const MixtureSpec& spec, std::span<const double> densities,
                  const Matrix& density_gradients) {
  check_gradients(spec, densities, density_gradients, "lam_forces");
  const int n = spec.num_species();
  const Eigen::Index d = density_gradients.cols();
  Vector p_i(n);
  Matrix grad_p(n, d);
  double rho = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& law = spec.laws[idx(i)];
    p_i(i) = pressure(law, densities[idx(i)]);
    grad_p.row(i) = density_gradients.row(i) * pressure_derivative(law, densities[idx(i)]);
    rho += densities[idx(i)];
  }
  const double p = p_i.sum();
  const Eigen::RowVectorXd grad_total = grad_p.colwise().sum();
  const Eigen::RowVectorXd grad_log_p = grad_total / p;
  Matrix forces(n, d);
  for (int j = 0; j < n; ++j) {
    // grad(p_j / p) by the quotient rule
    const Eigen::RowVectorXd grad_fraction = grad_p.row(j) / p - p_i(j) * grad_total / (p * p);
    forces.row(j) = grad_fraction + (p_i(j) / p - densities[idx(j)] / rho) * grad_log_p;
  }
  return forces;
}

Matrix lam_flux(const MixtureSpec& spec, std::span<const double> densities,
                const Matrix& density_gradients, std::span<const double> omega) {
  const Matrix dbar = lam_diffusion_matrix(spec, densities, omega);
  const Matrix forces = lam_forces(spec, densities, density_gradients);
  Matrix flux = -spec.epsilon * (dbar * forces);
  for (int i = 0; i < spec.num_species(); ++i) {
    flux.row(i) *= densities[idx(i)];
  }
  return flux;
}

} // namespace mcdiff
