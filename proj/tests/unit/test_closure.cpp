#include "mcdiff/closure.hpp"
#include "mcdiff/errors.hpp"
#include "mcdiff/harness.hpp"
#include "mcdiff/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mcdiff;

namespace {

ConservedU conserved(std::vector<double> rho, double v) {
  ConservedU u;
  u.rho = 0.0;
  for (double r : rho) {
    u.rho += r;
  }
  u.momentum = {u.rho * v};
  u.partial.assign(rho.begin(), rho.end() - 1);
  return u;
}

} // namespace

TEST_CASE("Maxwell flux: zero gradients give zero flux") {
  const MixtureSpec spec = standard_mixture(0.1);
  const ConservedU u = conserved({1.0, 0.7, 1.3}, 0.2);
  const FluxClosureResult r = maxwell_flux(spec, u, Matrix::Zero(3, 1));
  CHECK(r.fluxes.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.last_flux.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Maxwell flux: symmetric and pressure forms agree") {
  Rng rng(17);
  for (int s = 0; s < 50; ++s) {
    const MixtureSpec spec = random_mixture(rng, 2 + s % 5, 1 + s % 3, 0.3);
    const ConservedU u = random_conserved(spec, rng);
    Matrix grad = Matrix::Random(spec.num_species(), spec.dimension);
    const FluxClosureResult a = maxwell_flux(spec, u, grad);
    const Matrix b = maxwell_flux_pressure_form(spec, u, grad);
    CHECK((a.fluxes - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
    // fluxes sum to zero over all species
    CHECK((a.fluxes.colwise().sum() + a.last_flux.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("N = 2 Maxwell flux reduces to Fick's law") {
  // J_1 = -eps D (p_1'/rho_1 - ...) grad: compare with the closed-form scalar
  Matrix s(2, 2);
  s << 0, 2, 2, 0;
  const MixtureSpec spec =
      MixtureSpec::make({PressureLaw::isothermal(1), PressureLaw::isothermal(1)}, {1, 1}, s, 0.5);
  const ConservedU u = conserved({1.0, 3.0}, 0.0);
  Matrix grad(2, 1);
  grad << 0.4, -0.4;
  const double d = 9.0 / 32.0;
  const double force = 0.4 / 1.0 + 0.4 / 3.0;
  CHECK(maxwell_flux(spec, u, grad).fluxes(0, 0) == doctest::Approx(-0.5 * d * force));
}

TEST_CASE("periodic gradients") {
  const int m = 64;
  const double dx = 1.0 / m;
  std::vector<double> f(m);
  for (int c = 0; c < m; ++c) {
    f[static_cast<std::size_t>(c)] = std::sin(2 * std::numbers::pi * (c + 0.5) * dx);
  }
  const std::vector<double> g2 = periodic_central_gradient(f, dx);
  const std::vector<double> g4 = periodic_central_gradient4(f, dx);
  double e2 = 0.0, e4 = 0.0;
  for (int c = 0; c < m; ++c) {
    const double exact = 2 * std::numbers::pi * std::cos(2 * std::numbers::pi * (c + 0.5) * dx);
    e2 = std::max(e2, std::abs(g2[static_cast<std::size_t>(c)] - exact));
    e4 = std::max(e4, std::abs(g4[static_cast<std::size_t>(c)] - exact));
  }
  CHECK(e2 < 1.1e-2);
  CHECK(e4 < 1e-4);
}

TEST_CASE("well-prepared data keeps the conserved mode") {
  const MixtureSpec spec = standard_mixture(0.01);
  const FieldU1D u0 = make_initial_field(InitialProfile::standard(), 64, 1.0);
  const Field1D w = well_prepared_state(spec, u0);
  CHECK(conserved_l2_difference(conserved_field(w), u0) == 0.0);
  double jmax = 0.0;
  for (int c = 0; c < w.cells(); ++c) {
    jmax = std::max(jmax, std::abs(w.flux(c, 0)));
  }
  CHECK(jmax > 0.0);
  CHECK(jmax < 0.05);

  InitialProfile flat = InitialProfile::standard();
  flat.kind = InitialProfile::Kind::Uniform;
  const Field1D wf = well_prepared_state(spec, make_initial_field(flat, 32, 1.0));
  for (int c = 0; c < wf.cells(); ++c) {
    CHECK(wf.flux(c, 0) == 0.0);
    CHECK(wf.flux(c, 1) == 0.0);
  }
}

TEST_CASE("Lam's law") {
  const double sigma = 1.7;
  Matrix s(2, 2);
  s << 0, sigma, sigma, 0;
  const MixtureSpec spec2 =
      MixtureSpec::make({PressureLaw::isothermal(1), PressureLaw::isothermal(1)}, {1, 1}, s, 1.0);
  const std::vector<double> rho{0.6, 1.1};
  const std::vector<double> ones{1.0, 1.0};
  CHECK(lam_khat(spec2, rho, ones).determinant() == doctest::Approx(2 * sigma * 1.7));
  CHECK_THROWS_AS(lam_khat(spec2, rho, std::vector<double>{0.0, 0.0}), DegenerateOmega);
  CHECK_THROWS_AS(lam_khat(spec2, rho, std::vector<double>{1.0, -1.0}), DegenerateOmega);

  const MixtureSpec spec = standard_mixture(1.0);
  const std::vector<double> r3{0.9, 1.2, 0.7};
  CHECK(lam_forces(spec, r3, Matrix::Zero(3, 1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(lam_flux(spec, r3, Matrix::Zero(3, 1), std::vector<double>{1, 2, 3})
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // force identity and omega dependence
  Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    const MixtureSpec mix = random_mixture(rng, 2 + k % 5, 1 + k % 3);
    const StateU st = random_state(mix, rng);
    const Matrix grad = Matrix::Random(mix.num_species(), mix.dimension);
    const Matrix lam = lam_forces(mix, st.rho, grad);
    const Matrix ours = entropic_force(mix, st.rho, grad);
    double p = 0.0;
    for (int i = 0; i < mix.num_species(); ++i) {
      p += pressure(mix.laws[static_cast<std::size_t>(i)], st.rho[static_cast<std::size_t>(i)]);
    }
    const int n = mix.num_species();
    for (int j = 0; j < n - 1; ++j) {
      const Eigen::RowVectorXd lhs =
          p * (lam.row(j) / st.rho[static_cast<std::size_t>(j)] -
               lam.row(n - 1) / st.rho[static_cast<std::size_t>(n - 1)]);
      CHECK((lhs - ours.row(j)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  const Matrix d1 = lam_diffusion_matrix(spec, r3, std::vector<double>{1, 1, 1});
  const Matrix d2 = lam_diffusion_matrix(spec, r3, std::vector<double>{1, 2, 3});
  CHECK((d1 - d2).cwiseAbs().maxCoeff() > 1e-8);
}
