#include "mcdiff/entropy.hpp"

#include "mcdiff/errors.hpp"
#include "mcdiff/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mcdiff {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_state(const MixtureSpec& spec, const StateU& state, const char* where) {
  if (state.num_species() != spec.num_species()) {
    throw InvalidSpec(std::string(where) + ": species count does not match the mixture");
  }
  if (state.momentum.size() != idx(state.num_species() * state.dimension)) {
    throw InvalidSpec(std::string(where) + ": momentum size does not match N * d");
  }
  require_positive(state.rho, where);
}

double speed_squared(const StateU& state, int species) {
  double v2 = 0.0;
  for (int a = 0; a < state.dimension; ++a) {
    const double v = state.velocity(species, a);
    v2 += v * v;
  }
  return v2;
}

} // namespace

Vector StateU::packed() const {
  const int n = num_species();
  const int b = block_size();
  Vector out(n * b);
  for (int i = 0; i < n; ++i) {
    out(i * b) = rho[idx(i)];
    for (int a = 0; a < dimension; ++a) {
      out(i * b + 1 + a) = momentum_at(i, a);
    }
  }
  return out;
}

StateU StateU::unpack(const Vector& packed, int num_species, int dimension) {
  const int b = dimension + 1;
  StateU state;
  state.dimension = dimension;
  state.rho.resize(idx(num_species));
  state.momentum.resize(idx(num_species * dimension));
  for (int i = 0; i < num_species; ++i) {
    state.rho[idx(i)] = packed(i * b);
    for (int a = 0; a < dimension; ++a) {
      state.momentum[idx(i * dimension + a)] = packed(i * b + 1 + a);
    }
  }
  return state;
}

std::vector<double> ConservedU::densities() const {
  if (!(rho > 0.0)) {
    throw InvalidConserved("total density " + std::to_string(rho) + " is not positive");
  }
  std::vector<double> out(partial);
  require_positive(out, "ConservedU");
  double last = rho;
  for (double r : partial) {
    last -= r;
  }
  if (!(last > 0.0)) {
    throw InvalidConserved("implied density of species N is " + std::to_string(last));
  }
  out.push_back(last);
  return out;
}

Vector ConservedU::packed() const {
  const int d = dimension();
  const int m = num_species() - 1;
  Vector out(1 + d + m);
  out(0) = rho;
  for (int a = 0; a < d; ++a) {
    out(1 + a) = momentum[idx(a)];
  }
  for (int i = 0; i < m; ++i) {
    out(1 + d + i) = partial[idx(i)];
  }
  return out;
}

ConservedU ConservedU::unpack(const Vector& packed, int num_species, int dimension) {
  ConservedU u;
  u.rho = packed(0);
  u.momentum.resize(idx(dimension));
  u.partial.resize(idx(num_species - 1));
  for (int a = 0; a < dimension; ++a) {
    u.momentum[idx(a)] = packed(1 + a);
  }
  for (int i = 0; i < num_species - 1; ++i) {
    u.partial[idx(i)] = packed(1 + dimension + i);
  }
  return u;
}

ConservedU conserved_mode(const StateU& state) {
  const int n = state.num_species();
  const int d = state.dimension;
  ConservedU u;
  u.rho = 0.0;
  for (double r : state.rho) {
    u.rho += r;
  }
  u.momentum.assign(idx(d), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < d; ++a) {
      u.momentum[idx(a)] += state.momentum_at(i, a);
    }
  }
  u.partial.assign(state.rho.begin(), state.rho.end() - 1);
  return u;
}

StateU equilibrium_state(const ConservedU& u) {
  const std::vector<double> rho = u.densities();
  const int n = u.num_species();
  const int d = u.dimension();
  StateU state;
  state.dimension = d;
  state.rho = rho;
  state.momentum.resize(idx(n * d));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < d; ++a) {
      state.momentum[idx(i * d + a)] = rho[idx(i)] * u.momentum[idx(a)] / u.rho;
    }
  }
  return state;
}

double entropy(const MixtureSpec& spec, const StateU& state) {
  check_state(spec, state, "entropy");
  double eta = 0.0;
  for (int i = 0; i < state.num_species(); ++i) {
    const double rho = state.rho[idx(i)];
    const auto& law = spec.laws[idx(i)];
    double m2 = 0.0;
    for (int a = 0; a < state.dimension; ++a) {
      m2 += state.momentum_at(i, a) * state.momentum_at(i, a);
    }
    eta += rho * pressure_integral(law, spec.ref_densities[idx(i)], rho) + 0.5 * m2 / rho;
  }
  return eta;
}

Vector entropy_gradient(const MixtureSpec& spec, const StateU& state) {
  check_state(spec, state, "entropy_gradient");
  const int b = state.block_size();
  Vector g(state.num_species() * b);
  for (int i = 0; i < state.num_species(); ++i) {
    const double rho = state.rho[idx(i)];
    const auto& law = spec.laws[idx(i)];
    g(i * b) = pressure_integral(law, spec.ref_densities[idx(i)], rho) +
               pressure(law, rho) / rho - 0.5 * speed_squared(state, i);
    for (int a = 0; a < state.dimension; ++a) {
      g(i * b + 1 + a) = state.velocity(i, a);
    }
  }
  return g;
}

Matrix entropy_hessian(const MixtureSpec& spec, const StateU& state) {
  check_state(spec, state, "entropy_hessian");
  const int b = state.block_size();
  const int d = state.dimension;
  Matrix h = Matrix::Zero(state.num_species() * b, state.num_species() * b);
  for (int i = 0; i < state.num_species(); ++i) {
    const double rho = state.rho[idx(i)];
    const int o = i * b;
    h(o, o) = (pressure_derivative(spec.laws[idx(i)], rho) + speed_squared(state, i)) / rho;
    for (int a = 0; a < d; ++a) {
      const double v = state.velocity(i, a);
      h(o, o + 1 + a) = -v / rho;
      h(o + 1 + a, o) = -v / rho;
      h(o + 1 + a, o + 1 + a) = 1.0 / rho;
    }
  }
  return h;
}

Vector flux(const MixtureSpec& spec, const StateU& state, int axis) {
  check_state(spec, state, "flux");
  if (axis < 0 || axis >= state.dimension) {
    throw InvalidSpec("flux: axis out of range");
  }
  const int b = state.block_size();
  Vector f(state.num_species() * b);
  for (int i = 0; i < state.num_species(); ++i) {
    const double vj = state.velocity(i, axis);
    f(i * b) = state.momentum_at(i, axis);
    for (int a = 0; a < state.dimension; ++a) {
      f(i * b + 1 + a) = state.momentum_at(i, a) * vj;
    }
    f(i * b + 1 + axis) += pressure(spec.laws[idx(i)], state.rho[idx(i)]);
  }
  return f;
}

Vector collision_source(const MixtureSpec& spec, const StateU& state) {
  check_state(spec, state, "collision_source");
  const int n = state.num_species();
  const int b = state.block_size();
  const Matrix k = assemble_K(spec, state.rho);
  Vector q = Vector::Zero(n * b);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < state.dimension; ++a) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) {
        s += k(i, l) * state.velocity(l, a);
      }
      q(i * b + 1 + a) = -s;
    }
  }
  return q;
}

Matrix dissipation_matrix(const MixtureSpec& spec, const StateU& state) {
  check_state(spec, state, "dissipation_matrix");
  const int n = state.num_species();
  const int b = state.block_size();
  const Matrix k = assemble_K(spec, state.rho);
  Matrix l = Matrix::Zero(n * b, n * b);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a < state.dimension; ++a) {
        l(i * b + 1 + a, j * b + 1 + a) = k(i, j);
      }
    }
  }
  return l;
}

double check_symmetry_condition(const MixtureSpec& spec, const StateU& state, int axis,
                                double h) {
  check_state(spec, state, "check_symmetry_condition");
  const int n = state.num_species();
  const int d = state.dimension;
  const Vector base = state.packed();
  const Eigen::Index size = base.size();
  Matrix jac(size, size);
  for (Eigen::Index k = 0; k < size; ++k) {
    const double step = h * (1.0 + std::abs(base(k)));
    Vector plus = base;
    Vector minus = base;
    plus(k) += step;
    minus(k) -= step;
    const Vector fp = flux(spec, StateU::unpack(plus, n, d), axis);
    const Vector fm = flux(spec, StateU::unpack(minus, n, d), axis);
    jac.col(k) = (fp - fm) / (plus(k) - minus(k));
  }
  return relative_asymmetry(entropy_hessian(spec, state) * jac);
}

Matrix fixed_null_basis(int num_species, int dimension) {
  const int b = dimension + 1;
  Matrix basis = Matrix::Zero(num_species * b, num_species + dimension);
  for (int i = 0; i < num_species; ++i) {
    basis(i * b, i) = 1.0;
  }
  for (int a = 0; a < dimension; ++a) {
    for (int i = 0; i < num_species; ++i) {
      basis(i * b + 1 + a, num_species + a) = 1.0;
    }
  }
  return basis;
}

NullSpaceReport null_space_check(const MixtureSpec& spec, int samples, std::uint64_t seed) {
  NullSpaceReport report;
  const int n = spec.num_species();
  const int d = spec.dimension;
  report.expected_rank = d * (n - 1);
  const Matrix basis = fixed_null_basis(n, d);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const StateU state = random_state(spec, rng);
    const Matrix l = dissipation_matrix(spec, state);
    const double scale = std::max(1.0, inf_norm(l));
    report.max_residual =
        std::max(report.max_residual, (l * basis).cwiseAbs().maxCoeff() / scale);
    report.min_eigenvalue = std::min(report.min_eigenvalue, min_symmetric_eigenvalue(l));
    if (numerical_rank(l) != report.expected_rank) {
      ++report.rank_mismatches;
    }
    ++report.samples;
  }
  report.pass = report.samples > 0 && report.max_residual <= 1e-12 &&
                report.min_eigenvalue >= -1e-12 && report.rank_mismatches == 0;
  return report;
}

double equilibrium_entropy(const MixtureSpec& spec, const ConservedU& u) {
  if (u.num_species() != spec.num_species()) {
    throw InvalidSpec("equilibrium_entropy: species count does not match the mixture");
  }
  const std::vector<double> rho = u.densities();
  double eta = 0.0;
  for (int i = 0; i < spec.num_species(); ++i) {
    eta += rho[idx(i)] *
           pressure_integral(spec.laws[idx(i)], spec.ref_densities[idx(i)], rho[idx(i)]);
  }
  double m2 = 0.0;
  for (double m : u.momentum) {
    m2 += m * m;
  }
  return eta + 0.5 * m2 / u.rho;
}

Matrix equilibrium_entropy_hessian(const MixtureSpec& spec, const ConservedU& u,
                                   double h) {
  const int n = u.num_species();
  const int d = u.dimension();
  const Vector base = u.packed();
  const Eigen::Index size = base.size();
  Vector steps(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    steps(k) = h * (1.0 + std::abs(base(k)));
  }
  auto eval = [&](const Vector& x) {
    return equilibrium_entropy(spec, ConservedU::unpack(x, n, d));
  };
  Matrix hess(size, size);
  const double f0 = eval(base);
  for (Eigen::Index i = 0; i < size; ++i) {
    Vector p = base;
    Vector m = base;
    p(i) += steps(i);
    m(i) -= steps(i);
    hess(i, i) = (eval(p) - 2.0 * f0 + eval(m)) / (steps(i) * steps(i));
    for (Eigen::Index j = i + 1; j < size; ++j) {
      Vector pp = base, pm = base, mp = base, mm = base;
      pp(i) += steps(i);
      pp(j) += steps(j);
      pm(i) += steps(i);
      pm(j) -= steps(j);
      mp(i) -= steps(i);
      mp(j) += steps(j);
      mm(i) -= steps(i);
      mm(j) -= steps(j);
      const double v =
          (eval(pp) - eval(pm) - eval(mp) + eval(mm)) / (4.0 * steps(i) * steps(j));
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return hess;
}

Matrix entropic_force(const MixtureSpec& spec, std::span<const double> densities,
                      const Matrix& density_gradients) {
  const int n = spec.num_species();
  if (static_cast<int>(densities.size()) != n || density_gradients.rows() != n) {
    throw InvalidSpec("entropic_force: expected N densities and N gradient rows");
  }
  require_positive(densities, "entropic_force");
  const Eigen::Index d = density_gradients.cols();
  Matrix per_species(n, d);
  for (int i = 0; i < n; ++i) {
    const double rho = densities[idx(i)];
    per_species.row(i) =
        density_gradients.row(i) * (pressure_derivative(spec.laws[idx(i)], rho) / rho);
  }
  Matrix force(n - 1, d);
  for (int i = 0; i < n - 1; ++i) {
    force.row(i) = per_species.row(i) - per_species.row(n - 1);
  }
  return force;
}

Matrix symbol_matrix(const MixtureSpec& spec, const ConservedU& u,
                     std::span<const double> xi) {
  double xi2 = 0.0;
  for (double x : xi) {
    xi2 += x * x;
  }
  if (!(xi2 > 0.0)) {
    throw ZeroFrequency("symbol matrix requires xi != 0");
  }
  const int d = u.dimension();
  const int m = u.num_species() - 1;
  const std::vector<double> rho = u.densities();
  Matrix b = Matrix::Zero(d + 1 + m, d + 1 + m);
  b.bottomRightCorner(m, m) = diffusion_matrix(spec, rho) * xi2;
  return b;
}

SymbolNullSpace symbol_matrix_nullspace(const MixtureSpec& spec, const ConservedU& u,
                                        std::span<const double> xi) {
  const Matrix b = symbol_matrix(spec, u, xi);
  SymbolNullSpace out;
  out.basis = null_space_basis(b);
  out.dimension = static_cast<int>(out.basis.cols());
  return out;
}

} // namespace mcdiff
