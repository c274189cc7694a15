#include "mcdiff/grid.hpp"

#include "mcdiff/errors.hpp"

#include <cmath>
#include <string>

namespace mcdiff {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_shape(int num_species, int cells, double length) {
  if (num_species < 2) {
    throw InvalidSpec("a field needs at least two species");
  }
  if (cells < 16) {
    throw InvalidSpec("a field needs at least 16 cells");
  }
  if (!(length > 0.0)) {
    throw InvalidSpec("domain length must be positive");
  }
}

[[noreturn]] void density_failure(int c, double value, const char* what) {
  throw NonPositiveDensity("cell " + std::to_string(c) + ": " + what + " = " +
                           std::to_string(value));
}

} // namespace

StateU to_species(const StateW& w) {
  const int n = w.num_species();
  const double v = w.momentum / w.rho;
  StateU u;
  u.dimension = 1;
  u.rho.resize(idx(n));
  u.momentum.resize(idx(n));
  double last_rho = w.rho;
  double last_flux = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    const double ri = w.partial[idx(i)];
    u.rho[idx(i)] = ri;
    u.momentum[idx(i)] = ri * v + w.flux[idx(i)];
    last_rho -= ri;
    last_flux -= w.flux[idx(i)];
  }
  u.rho[idx(n - 1)] = last_rho;
  u.momentum[idx(n - 1)] = last_rho * v + last_flux;
  return u;
}

StateW from_species(const StateU& u) {
  const int n = u.num_species();
  StateW w;
  w.rho = 0.0;
  w.momentum = 0.0;
  for (int i = 0; i < n; ++i) {
    w.rho += u.rho[idx(i)];
    w.momentum += u.momentum[idx(i)];
  }
  const double v = w.momentum / w.rho;
  w.partial.resize(idx(n - 1));
  w.flux.resize(idx(n - 1));
  for (int i = 0; i < n - 1; ++i) {
    w.partial[idx(i)] = u.rho[idx(i)];
    w.flux[idx(i)] = u.momentum[idx(i)] - u.rho[idx(i)] * v;
  }
  return w;
}

Field1D::Field1D(int num_species, int cells, double length)
    : num_species_(num_species), cells_(cells), length_(length) {
  check_shape(num_species, cells, length);
  data_.assign(idx(cells * width()), 0.0);
}

double Field1D::last_density(int c) const {
  double last = rho(c);
  for (int i = 0; i < num_species_ - 1; ++i) {
    last -= partial(c, i);
  }
  return last;
}

StateW Field1D::cell(int c) const {
  StateW w;
  w.rho = rho(c);
  w.momentum = momentum(c);
  w.partial.resize(idx(num_species_ - 1));
  w.flux.resize(idx(num_species_ - 1));
  for (int i = 0; i < num_species_ - 1; ++i) {
    w.partial[idx(i)] = partial(c, i);
    w.flux[idx(i)] = flux(c, i);
  }
  return w;
}

void Field1D::set_cell(int c, const StateW& w) {
  rho(c) = w.rho;
  momentum(c) = w.momentum;
  for (int i = 0; i < num_species_ - 1; ++i) {
    partial(c, i) = w.partial[idx(i)];
    flux(c, i) = w.flux[idx(i)];
  }
}

void Field1D::require_positive() const {
  for (int c = 0; c < cells_; ++c) {
    for (int i = 0; i < num_species_ - 1; ++i) {
      if (!(partial(c, i) > 0.0)) {
        density_failure(c, partial(c, i), ("rho_" + std::to_string(i + 1)).c_str());
      }
    }
    const double last = last_density(c);
    if (!(last > 0.0)) {
      density_failure(c, last, "rho_N");
    }
    for (int k = 0; k < width(); ++k) {
      if (!std::isfinite(at(c, k))) {
        density_failure(c, at(c, k), "non-finite component");
      }
    }
  }
}

FieldU1D::FieldU1D(int num_species, int cells, double length)
    : num_species_(num_species), cells_(cells), length_(length) {
  check_shape(num_species, cells, length);
  data_.assign(idx(cells * width()), 0.0);
}

double FieldU1D::last_density(int c) const {
  double last = rho(c);
  for (int i = 0; i < num_species_ - 1; ++i) {
    last -= partial(c, i);
  }
  return last;
}

ConservedU FieldU1D::cell(int c) const {
  ConservedU u;
  u.rho = rho(c);
  u.momentum = {momentum(c)};
  u.partial.resize(idx(num_species_ - 1));
  for (int i = 0; i < num_species_ - 1; ++i) {
    u.partial[idx(i)] = partial(c, i);
  }
  return u;
}

void FieldU1D::set_cell(int c, const ConservedU& u) {
  rho(c) = u.rho;
  momentum(c) = u.momentum.at(0);
  for (int i = 0; i < num_species_ - 1; ++i) {
    partial(c, i) = u.partial[idx(i)];
  }
}

std::vector<double> FieldU1D::densities(int c) const {
  std::vector<double> out(idx(num_species_));
  for (int i = 0; i < num_species_ - 1; ++i) {
    out[idx(i)] = partial(c, i);
  }
  out[idx(num_species_ - 1)] = last_density(c);
  return out;
}

void FieldU1D::require_positive() const {
  for (int c = 0; c < cells_; ++c) {
    for (int i = 0; i < num_species_ - 1; ++i) {
      if (!(partial(c, i) > 0.0)) {
        density_failure(c, partial(c, i), ("rho_" + std::to_string(i + 1)).c_str());
      }
    }
    const double last = last_density(c);
    if (!(last > 0.0)) {
      density_failure(c, last, "rho_N");
    }
    for (int k = 0; k < width(); ++k) {
      if (!std::isfinite(at(c, k))) {
        density_failure(c, at(c, k), "non-finite component");
      }
    }
  }
}

FieldU1D conserved_field(const Field1D& field) {
  FieldU1D out(field.num_species(), field.cells(), field.length());
  out.set_time(field.time());
  for (int c = 0; c < field.cells(); ++c) {
    out.rho(c) = field.rho(c);
    out.momentum(c) = field.momentum(c);
    for (int i = 0; i < field.num_species() - 1; ++i) {
      out.partial(c, i) = field.partial(c, i);
    }
  }
  return out;
}

double conserved_l2_difference(const FieldU1D& a, const FieldU1D& b) {
  if (a.cells() != b.cells() || a.num_species() != b.num_species()) {
    throw InvalidSpec("conserved_l2_difference: fields have different shapes");
  }
  double sum = 0.0;
  const auto& da = a.data();
  const auto& db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) {
    const double diff = da[k] - db[k];
    sum += diff * diff;
  }
  return std::sqrt(a.dx() * sum);
}

} // namespace mcdiff
