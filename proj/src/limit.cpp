#include "mcdiff/limit.hpp"

#include "mcdiff/csv.hpp"
#include "mcdiff/entropy.hpp"
#include "mcdiff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace mcdiff {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_spec(const MixtureSpec& spec, const FieldU1D& field) {
  if (spec.num_species() != field.num_species()) {
    throw InvalidSpec("limit solver: species count does not match the mixture");
  }
  if (spec.dimension != 1) {
    throw InvalidSpec("limit solver supports d = 1 only");
  }
}

std::vector<double> checked_densities(const FieldU1D& field, int c) {
  std::vector<double> rho = field.densities(c);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) {
      throw NonPositiveDensity("limit solver: cell " + std::to_string(c) + ", species " +
                               std::to_string(i + 1) + " has density " +
                               std::to_string(rho[i]));
    }
  }
  return rho;
}

double cell_speed(const MixtureSpec& spec, const FieldU1D& field, int c,
                  const std::vector<double>& rho) {
  double sound = 0.0;
  for (int i = 0; i < field.num_species(); ++i) {
    sound = std::max(sound, std::sqrt(pressure_derivative(spec.laws[idx(i)], rho[idx(i)])));
  }
  return std::abs(field.momentum(c) / field.rho(c)) + sound;
}

} // namespace

double limit_max_speed(const MixtureSpec& spec, const FieldU1D& field) {
  check_spec(spec, field);
  double s = 0.0;
  for (int c = 0; c < field.cells(); ++c) {
    s = std::max(s, cell_speed(spec, field, c, checked_densities(field, c)));
  }
  return s;
}

double limit_diffusion_bound(const MixtureSpec& spec, const FieldU1D& field) {
  check_spec(spec, field);
  const int n = field.num_species();
  const CollisionOperator collisions(spec);
  double bound = 0.0;
  for (int c = 0; c < field.cells(); ++c) {
    const std::vector<double> rho = checked_densities(field, c);
    double stiffness = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      stiffness = std::max(stiffness, pressure_derivative(spec.laws[idx(i)], rho[idx(i)]) /
                                          rho[idx(i)]);
    }
    stiffness += (n - 1) * pressure_derivative(spec.laws[idx(n - 1)], rho[idx(n - 1)]) /
                 rho[idx(n - 1)];
    bound = std::max(bound, inf_norm(collisions.diffusion(rho)) * stiffness);
  }
  return bound;
}

double limit_stable_dt(const MixtureSpec& spec, const FieldU1D& field, double cfl,
                       double epsilon) {
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw CflViolation("CFL number must lie in (0, 1], got " + std::to_string(cfl));
  }
  if (epsilon < 0.0) {
    throw InvalidSpec("diffusion scale must be non-negative");
  }
  const double dx = field.dx();
  double dt = dx / limit_max_speed(spec, field);
  if (epsilon > 0.0) {
    dt = std::min(dt, dx * dx / (2.0 * epsilon * limit_diffusion_bound(spec, field)));
  }
  return cfl * dt;
}

LimitTendency limit_convective_rhs(const MixtureSpec& spec, const FieldU1D& field) {
  check_spec(spec, field);
  const int n = field.num_species();
  const int w = field.width();
  const int cells = field.cells();

  std::vector<double> g(idx(cells * w));
  std::vector<double> speed(idx(cells));
  for (int c = 0; c < cells; ++c) {
    const std::vector<double> rho = checked_densities(field, c);
    const double v = field.momentum(c) / field.rho(c);
    double p = 0.0;
    for (int i = 0; i < n; ++i) {
      p += pressure(spec.laws[idx(i)], rho[idx(i)]);
    }
    g[idx(c * w)] = field.momentum(c);
    g[idx(c * w + 1)] = field.momentum(c) * v + p;
    for (int i = 0; i < n - 1; ++i) {
      g[idx(c * w + 2 + i)] = field.partial(c, i) * v;
    }
    speed[idx(c)] = cell_speed(spec, field, c, rho);
  }

  const auto& u = field.data();
  std::vector<double> face(idx(cells * w));
  for (int f = 0; f < cells; ++f) {
    const int r = (f + 1) % cells;
    const double alpha = std::max(speed[idx(f)], speed[idx(r)]);
    for (int k = 0; k < w; ++k) {
      face[idx(f * w + k)] = 0.5 * (g[idx(f * w + k)] + g[idx(r * w + k)]) -
                             0.5 * alpha * (u[idx(r * w + k)] - u[idx(f * w + k)]);
    }
  }

  LimitTendency out{w, std::vector<double>(idx(cells * w))};
  const double inv_dx = 1.0 / field.dx();
  for (int c = 0; c < cells; ++c) {
    const int left = (c - 1 + cells) % cells;
    for (int k = 0; k < w; ++k) {
      out.at(c, k) = -(face[idx(c * w + k)] - face[idx(left * w + k)]) * inv_dx;
    }
  }
  return out;
}

LimitTendency limit_diffusion_rhs(const MixtureSpec& spec, const FieldU1D& field,
                                  double epsilon) {
  check_spec(spec, field);
  const int n = field.num_species();
  const int w = field.width();
  const int cells = field.cells();
  const double dx = field.dx();
  LimitTendency out{w, std::vector<double>(idx(cells * w), 0.0)};
  if (epsilon == 0.0) {
    return out;
  }

  // face_flux[f * (n-1) + i]: diffusive mass flux of species i through the right face of f
  std::vector<double> face_flux(idx(cells * (n - 1)));
  const CollisionOperator collisions(spec);
  std::vector<double> rho_face(idx(n));
  Matrix grad(n, 1);
  for (int f = 0; f < cells; ++f) {
    const int r = (f + 1) % cells;
    const std::vector<double> rl = checked_densities(field, f);
    const std::vector<double> rr = checked_densities(field, r);
    for (int i = 0; i < n; ++i) {
      rho_face[idx(i)] = 0.5 * (rl[idx(i)] + rr[idx(i)]);
      grad(i, 0) = (rr[idx(i)] - rl[idx(i)]) / dx;
    }
    const Matrix force = entropic_force(spec, rho_face, grad);
    const Matrix flux = -epsilon * (collisions.diffusion(rho_face) * force);
    for (int i = 0; i < n - 1; ++i) {
      face_flux[idx(f * (n - 1) + i)] = flux(i, 0);
    }
  }
  for (int c = 0; c < cells; ++c) {
    const int left = (c - 1 + cells) % cells;
    for (int i = 0; i < n - 1; ++i) {
      out.at(c, 2 + i) =
          -(face_flux[idx(c * (n - 1) + i)] - face_flux[idx(left * (n - 1) + i)]) / dx;
    }
  }
  return out;
}

void limit_step_with_dt(const MixtureSpec& spec, FieldU1D& field, double dt,
                        double epsilon) {
  const double bound = limit_stable_dt(spec, field, 1.0, epsilon);
  if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
    throw CflViolation("time step " + std::to_string(dt) + " exceeds the stability bound " +
                       std::to_string(bound));
  }
  const LimitTendency conv = limit_convective_rhs(spec, field);
  const LimitTendency diff = limit_diffusion_rhs(spec, field, epsilon);
  for (int c = 0; c < field.cells(); ++c) {
    field.rho(c) += dt * conv.at(c, 0);
    field.momentum(c) += dt * conv.at(c, 1);
    for (int i = 0; i < field.num_species() - 1; ++i) {
      field.partial(c, i) += dt * (conv.at(c, 2 + i) + diff.at(c, 2 + i));
    }
  }
  field.set_time(field.time() + dt);
  field.require_positive();
}

double limit_step(const MixtureSpec& spec, FieldU1D& field, double cfl) {
  const double dt = limit_stable_dt(spec, field, cfl, spec.epsilon);
  limit_step_with_dt(spec, field, dt, spec.epsilon);
  return dt;
}

double limit_total_entropy(const MixtureSpec& spec, const FieldU1D& field) {
  check_spec(spec, field);
  double sum = 0.0;
  for (int c = 0; c < field.cells(); ++c) {
    sum += equilibrium_entropy(spec, field.cell(c));
  }
  return sum * field.dx();
}

void write_snapshot(std::ostream& out, const FieldU1D& field) {
  const int n = field.num_species();
  out << "x,rho,momentum";
  for (int i = 1; i < n; ++i) {
    out << ",rho_" << i;
  }
  out << '\n';
  for (int c = 0; c < field.cells(); ++c) {
    out << format_double(field.center(c)) << ',' << format_double(field.rho(c)) << ','
        << format_double(field.momentum(c));
    for (int i = 0; i < n - 1; ++i) {
      out << ',' << format_double(field.partial(c, i));
    }
    out << '\n';
  }
}

} // namespace mcdiff
