#include "mcdiff/errors.hpp"
#include "mcdiff/linalg.hpp"
#include "mcdiff/mixture.hpp"
#include "mcdiff/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace mcdiff;

namespace {

Matrix sigma3(double s12, double s13, double s23) {
  Matrix s(3, 3);
  s << 0, s12, s13, s12, 0, s23, s13, s23, 0;
  return s;
}

MixtureSpec iso(int n, const Matrix& sigma) {
  return MixtureSpec::make(std::vector<PressureLaw>(static_cast<std::size_t>(n),
                                                    PressureLaw::isothermal(1.0)),
                           std::vector<double>(static_cast<std::size_t>(n), 1.0), sigma, 1.0);
}

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

} // namespace

TEST_CASE("pressure laws") {
  CHECK(pressure(PressureLaw::isothermal(1.0), 1.0) == doctest::Approx(1.0));
  CHECK(pressure(PressureLaw::power_law(2.0, 1.4), 1.0) == doctest::Approx(2.0));
  CHECK(pressure(PressureLaw::isothermal(1.5), 2.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(PressureLaw::power_law(1.0, 0.9).validate(), InvalidSpec);
  CHECK_THROWS_AS(PressureLaw::isothermal(0.0).validate(), InvalidSpec);

  // p' and the entropy integrand against finite differences
  const PressureLaw law = PressureLaw::power_law(1.3, 1.7);
  const double r = 0.8, h = 1e-6;
  const double fd = (pressure(law, r + h) - pressure(law, r - h)) / (2 * h);
  CHECK(pressure_derivative(law, r) == doctest::Approx(fd).epsilon(1e-8));
  const double dint =
      (pressure_integral(law, 1.1, r + h) - pressure_integral(law, 1.1, r - h)) / (2 * h);
  CHECK(dint == doctest::Approx(pressure(law, r) / (r * r)).epsilon(1e-8));
  CHECK(pressure_integral(PressureLaw::isothermal(1.0), 1.0, std::exp(1.0)) ==
        doctest::Approx(1.0));
}

TEST_CASE("spec validation") {
  Matrix bad = sigma3(1, 2, 3);
  bad(0, 1) = 5.0;
  CHECK_THROWS_AS(iso(3, bad), InvalidSpec);
  CHECK_THROWS_AS(iso(3, sigma3(1, 0, 3)), InvalidSpec);
  CHECK_THROWS_AS(iso(3, sigma3(1, -1, 3)), InvalidSpec);
  CHECK_THROWS_AS(MixtureSpec::make({PressureLaw::isothermal(1), PressureLaw::isothermal(1)},
                                    {1, 1}, m2(0, 1, 1, 0), 0.0),
                  InvalidSpec);
  CHECK_THROWS_AS(MixtureSpec::make({PressureLaw::isothermal(1), PressureLaw::isothermal(1)},
                                    {1, 1}, m2(0, 1, 1, 0), 1.0, 4),
                  InvalidSpec);
  CHECK_THROWS_AS(require_positive(std::vector<double>{1.0, 0.0}, "test"), NonPositiveDensity);
}

TEST_CASE("collision matrix K") {
  const Matrix k2 = assemble_K(iso(2, m2(0, 2, 2, 0)));
  CHECK((k2 - m2(2, -2, -2, 2)).cwiseAbs().maxCoeff() == 0.0);

  Matrix expect(3, 3);
  expect << 3, -1, -2, -1, 4, -3, -2, -3, 5;
  const Matrix k3 = assemble_K(iso(3, sigma3(1, 2, 3)));
  CHECK((k3 - expect).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(7);
  for (int n = 2; n <= 6; ++n) {
    const MixtureSpec spec = random_mixture(rng, n, 1);
    CHECK(assemble_K(spec).rowwise().sum().cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("kinetic construction uses reduced masses") {
  const std::vector<double> masses{1.0, 3.0};
  const MixtureSpec spec = MixtureSpec::from_kinetic(
      {PressureLaw::isothermal(1), PressureLaw::isothermal(1)}, {1, 1}, masses,
      m2(0, 4, 4, 0), 1.0);
  CHECK(spec.sigma(0, 1) == doctest::Approx(0.75 * 4.0));
}

TEST_CASE("reduced inverse") {
  const Matrix kbar = reduced_K_inverse(iso(3, sigma3(1, 2, 3)));
  CHECK((kbar - m2(4, 1, 1, 3) / 11.0).cwiseAbs().maxCoeff() < 1e-15);

  Matrix s2 = m2(0, 2.5, 2.5, 0);
  CHECK(reduced_K_inverse(iso(2, s2))(0, 0) == doctest::Approx(0.4));

  Rng rng(3);
  for (int n = 2; n <= 6; ++n) {
    const MixtureSpec spec = random_mixture(rng, n, 1);
    const Matrix kred = assemble_K(spec).topLeftCorner(n - 1, n - 1);
    const Matrix prod = reduced_K_inverse(spec) * kred;
    CHECK((prod - Matrix::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Phi, C and D closed forms") {
  const std::vector<double> rho{1, 2, 3};
  CHECK((phi_matrix(rho) - m2(4.0 / 3, 1.0 / 3, 1.0 / 3, 5.0 / 6)).cwiseAbs().maxCoeff() <
        1e-15);
  CHECK((c_matrix(rho) - m2(5.0 / 6, -1.0 / 3, -1.0 / 3, 4.0 / 3)).cwiseAbs().maxCoeff() <
        1e-15);
  CHECK(phi_matrix(std::vector<double>{2, 5})(0, 0) == doctest::Approx(0.5 + 0.2));
  CHECK(c_matrix(std::vector<double>{1, 3})(0, 0) == doctest::Approx(0.75));

  const Matrix d = diffusion_matrix(iso(2, m2(0, 2, 2, 0)), std::vector<double>{1, 3});
  CHECK(d(0, 0) == doctest::Approx(9.0 / 32).epsilon(1e-14));
}

TEST_CASE("property: C Phi = I and D symmetric positive definite") {
  Rng rng(11);
  std::uniform_int_distribution<int> pick_n(2, 6);
  double worst_inverse = 0.0, worst_asym = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const int n = pick_n(rng);
    const MixtureSpec spec = random_mixture(rng, n, 1);
    const StateU state = random_state(spec, rng);
    const Matrix cp = c_matrix(state.rho) * phi_matrix(state.rho);
    worst_inverse =
        std::max(worst_inverse, (cp - Matrix::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff());
    const Matrix d = diffusion_matrix(spec, state.rho);
    worst_asym = std::max(worst_asym, relative_asymmetry(d));
    REQUIRE(cholesky_succeeds(d));
  }
  CHECK(worst_inverse < 1e-12);
  CHECK(worst_asym < 1e-12);
}

TEST_CASE("density-dependent sigma hook") {
  MixtureSpec spec = iso(2, m2(0, 1, 1, 0));
  spec.sigma_of_densities = [](std::span<const double> r) { return m2(0, r[0], r[0], 0); };
  const std::vector<double> rho{2.0, 1.0};
  CHECK(assemble_K(spec, rho)(0, 1) == doctest::Approx(-2.0));
  const CollisionOperator op(spec);
  CHECK(op.reduced_K_inverse(rho)(0, 0) == doctest::Approx(0.5));
  CHECK(op.diffusion(rho)(0, 0) == doctest::Approx(diffusion_matrix(spec, rho)(0, 0)));
}

TEST_CASE("linear algebra helpers") {
  CHECK_THROWS_AS(lu_inverse(m2(1, 2, 2, 4)), SingularMatrix);
  CHECK(numerical_rank(m2(1, 2, 2, 4)) == 1);
  CHECK(null_space_basis(m2(1, 2, 2, 4)).cols() == 1);
  CHECK_FALSE(cholesky_succeeds(m2(1, 0, 0, -1)));
  CHECK(min_symmetric_eigenvalue(m2(2, 0, 0, 3)) == doctest::Approx(2.0));
}
