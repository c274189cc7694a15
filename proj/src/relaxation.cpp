#include "mcdiff/relaxation.hpp"

#include "mcdiff/errors.hpp"
#include "mcdiff/csv.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace mcdiff {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

/// Cell states in U layout plus the per-cell Rusanov speed.
struct SpeciesCells {
  int n = 0;
  std::vector<double> rho;      // cells x N
  std::vector<double> momentum; // cells x N
  std::vector<double> pressure; // cells x N
  std::vector<double> speed;    // cells
};

SpeciesCells species_cells(const MixtureSpec& spec, const Field1D& field) {
  const int n = field.num_species();
  const int cells = field.cells();
  SpeciesCells out;
  out.n = n;
  out.rho.resize(idx(cells * n));
  out.momentum.resize(idx(cells * n));
  out.pressure.resize(idx(cells * n));
  out.speed.resize(idx(cells));
  for (int c = 0; c < cells; ++c) {
    const double v = field.momentum(c) / field.rho(c);
    double last_rho = field.rho(c);
    double last_flux = 0.0;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double ri = 0.0;
      double mi = 0.0;
      if (i < n - 1) {
        ri = field.partial(c, i);
        mi = ri * v + field.flux(c, i);
        last_rho -= ri;
        last_flux -= field.flux(c, i);
      } else {
        ri = last_rho;
        mi = ri * v + last_flux;
      }
      if (!(ri > 0.0)) {
        throw NonPositiveDensity("relaxation solver: cell " + std::to_string(c) +
                                 ", species " + std::to_string(i + 1) + " has density " +
                                 std::to_string(ri));
      }
      const auto& law = spec.laws[idx(i)];
      out.rho[idx(c * n + i)] = ri;
      out.momentum[idx(c * n + i)] = mi;
      out.pressure[idx(c * n + i)] = pressure(law, ri);
      s = std::max(s, std::abs(mi / ri) + std::sqrt(pressure_derivative(law, ri)));
    }
    out.speed[idx(c)] = s;
  }
  return out;
}

void check_spec(const MixtureSpec& spec, const Field1D& field) {
  if (spec.num_species() != field.num_species()) {
    throw InvalidSpec("relaxation solver: species count does not match the mixture");
  }
  if (spec.dimension != 1) {
    throw InvalidSpec("relaxation solver supports d = 1 only");
  }
}

} // namespace

double SpeciesTendency::total_mass(int c) const {
  double s = 0.0;
  for (int i = 0; i < num_species_; ++i) {
    s += mass(c, i);
  }
  return s;
}

double SpeciesTendency::total_momentum(int c) const {
  double s = 0.0;
  for (int i = 0; i < num_species_; ++i) {
    s += momentum(c, i);
  }
  return s;
}

double relaxation_max_speed(const MixtureSpec& spec, const Field1D& field) {
  check_spec(spec, field);
  const SpeciesCells cells = species_cells(spec, field);
  return *std::max_element(cells.speed.begin(), cells.speed.end());
}

double relaxation_stable_dt(const MixtureSpec& spec, const Field1D& field, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw CflViolation("CFL number must lie in (0, 1], got " + std::to_string(cfl));
  }
  return cfl * field.dx() / relaxation_max_speed(spec, field);
}

SpeciesTendency hyperbolic_rhs(const MixtureSpec& spec, const Field1D& field) {
  check_spec(spec, field);
  const int n = field.num_species();
  const int cells = field.cells();
  const SpeciesCells u = species_cells(spec, field);

  // face_flux[f] is the numerical flux through the right face of cell f.
  std::vector<double> face_mass(idx(cells * n));
  std::vector<double> face_mom(idx(cells * n));
  for (int f = 0; f < cells; ++f) {
    const int l = f;
    const int r = (f + 1) % cells;
    const double alpha = std::max(u.speed[idx(l)], u.speed[idx(r)]);
    for (int i = 0; i < n; ++i) {
      const std::size_t kl = idx(l * n + i);
      const std::size_t kr = idx(r * n + i);
      const double rl = u.rho[kl];
      const double rr = u.rho[kr];
      const double ml = u.momentum[kl];
      const double mr = u.momentum[kr];
      const double fl_mom = ml * ml / rl + u.pressure[kl];
      const double fr_mom = mr * mr / rr + u.pressure[kr];
      face_mass[idx(f * n + i)] = 0.5 * (ml + mr) - 0.5 * alpha * (rr - rl);
      face_mom[idx(f * n + i)] = 0.5 * (fl_mom + fr_mom) - 0.5 * alpha * (mr - ml);
    }
  }

  SpeciesTendency out(n, cells);
  const double inv_dx = 1.0 / field.dx();
  for (int c = 0; c < cells; ++c) {
    const int left = (c - 1 + cells) % cells;
    for (int i = 0; i < n; ++i) {
      out.mass(c, i) = -(face_mass[idx(c * n + i)] - face_mass[idx(left * n + i)]) * inv_dx;
      out.momentum(c, i) =
          -(face_mom[idx(c * n + i)] - face_mom[idx(left * n + i)]) * inv_dx;
    }
  }
  return out;
}

void hyperbolic_step(const MixtureSpec& spec, Field1D& field, double dt) {
  const SpeciesTendency rhs = hyperbolic_rhs(spec, field);
  const int n = field.num_species();
  StateU u;
  u.dimension = 1;
  for (int c = 0; c < field.cells(); ++c) {
    u = to_species(field.cell(c));
    for (int i = 0; i < n; ++i) {
      u.rho[idx(i)] += dt * rhs.mass(c, i);
      u.momentum[idx(i)] += dt * rhs.momentum(c, i);
    }
    for (int i = 0; i < n; ++i) {
      if (!(u.rho[idx(i)] > 0.0)) {
        throw NonPositiveDensity("relaxation solver: cell " + std::to_string(c) +
                                 ", species " + std::to_string(i + 1) +
                                 " lost positivity (density " +
                                 std::to_string(u.rho[idx(i)]) + ")");
      }
    }
    field.set_cell(c, from_species(u));
  }
}

void stiff_source_step(const MixtureSpec& spec, Field1D& field, double dt) {
  check_spec(spec, field);
  if (!(dt > 0.0)) {
    throw CflViolation("source step requires dt > 0");
  }
  const int n = field.num_species();
  const int m = n - 1;
  const double factor = dt / spec.epsilon;
  const CollisionOperator collisions(spec);

  std::vector<double> rho(idx(n));
  Vector j_old(m);
  for (int c = 0; c < field.cells(); ++c) {
    for (int i = 0; i < m; ++i) {
      rho[idx(i)] = field.partial(c, i);
      j_old(i) = field.flux(c, i);
    }
    rho[idx(m)] = field.last_density(c);
    const Matrix phi = phi_matrix(rho);
    const Matrix system = Matrix::Identity(m, m) + factor * (collisions.reduced_K(rho) * phi);
    const Vector j_new = lu_solve(system, j_old);
    for (int i = 0; i < m; ++i) {
      field.flux(c, i) = j_new(i);
    }
  }
}

void step_with_dt(const MixtureSpec& spec, Field1D& field, double dt, Splitting splitting) {
  const double limit = relaxation_stable_dt(spec, field, 1.0);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw CflViolation("time step " + std::to_string(dt) + " exceeds the stability bound " +
                       std::to_string(limit));
  }
  if (splitting == Splitting::Strang) {
    stiff_source_step(spec, field, 0.5 * dt);
    hyperbolic_step(spec, field, dt);
    stiff_source_step(spec, field, 0.5 * dt);
  } else {
    hyperbolic_step(spec, field, dt);
    stiff_source_step(spec, field, dt);
  }
  field.set_time(field.time() + dt);
}

double step(const MixtureSpec& spec, Field1D& field, double cfl, Splitting splitting) {
  const double dt = relaxation_stable_dt(spec, field, cfl);
  step_with_dt(spec, field, dt, splitting);
  return dt;
}

double total_entropy(const MixtureSpec& spec, const Field1D& field) {
  check_spec(spec, field);
  double sum = 0.0;
  for (int c = 0; c < field.cells(); ++c) {
    sum += entropy(spec, to_species(field.cell(c)));
  }
  return sum * field.dx();
}

void write_snapshot(std::ostream& out, const Field1D& field) {
  const int n = field.num_species();
  out << "x,rho,momentum";
  for (int i = 1; i < n; ++i) {
    out << ",rho_" << i;
  }
  for (int i = 1; i < n; ++i) {
    out << ",J_" << i;
  }
  out << '\n';
  for (int c = 0; c < field.cells(); ++c) {
    out << format_double(field.center(c)) << ',' << format_double(field.rho(c)) << ','
        << format_double(field.momentum(c));
    for (int i = 0; i < n - 1; ++i) {
      out << ',' << format_double(field.partial(c, i));
    }
    for (int i = 0; i < n - 1; ++i) {
      out << ',' << format_double(field.flux(c, i));
    }
    out << '\n';
  }
}

} // namespace mcdiff
