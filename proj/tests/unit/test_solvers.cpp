#include "mcdiff/closure.hpp"
#include "mcdiff/entropy.hpp"
#include "mcdiff/errors.hpp"
#include "mcdiff/harness.hpp"
#include "mcdiff/limit.hpp"
#include "mcdiff/relaxation.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace mcdiff;

namespace {

Field1D run_relaxation(const MixtureSpec& spec, Field1D field, double t_end, double cfl) {
  while (field.time() < t_end) {
    const double dt = std::min(relaxation_stable_dt(spec, field, cfl), t_end - field.time());
    step_with_dt(spec, field, dt);
  }
  return field;
}

FieldU1D run_limit(const MixtureSpec& spec, FieldU1D field, double t_end, double cfl,
                   double epsilon) {
  while (field.time() < t_end) {
    const double dt =
        std::min(limit_stable_dt(spec, field, cfl, epsilon), t_end - field.time());
    limit_step_with_dt(spec, field, dt, epsilon);
  }
  return field;
}

// average fine cells in pairs onto the coarse grid
FieldU1D restrict2(const FieldU1D& fine) {
  FieldU1D coarse(fine.num_species(), fine.cells() / 2, fine.length());
  for (int c = 0; c < coarse.cells(); ++c) {
    coarse.rho(c) = 0.5 * (fine.rho(2 * c) + fine.rho(2 * c + 1));
    coarse.momentum(c) = 0.5 * (fine.momentum(2 * c) + fine.momentum(2 * c + 1));
    for (int i = 0; i < fine.num_species() - 1; ++i) {
      coarse.partial(c, i) = 0.5 * (fine.partial(2 * c, i) + fine.partial(2 * c + 1, i));
    }
  }
  return coarse;
}

} // namespace

TEST_CASE("W <-> U round trip") {
  StateW w;
  w.rho = 2.3;
  w.momentum = 0.7;
  w.partial = {0.9, 0.6};
  w.flux = {0.01, -0.02};
  const StateW back = from_species(to_species(w));
  CHECK(std::abs(back.rho - w.rho) < 1e-14);
  CHECK(std::abs(back.momentum - w.momentum) < 1e-14);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(back.partial[i] - w.partial[i]) < 1e-14);
    CHECK(std::abs(back.flux[i] - w.flux[i]) < 1e-14);
  }
}

TEST_CASE("field guards") {
  CHECK_THROWS_AS(Field1D(3, 8, 1.0), InvalidSpec);
  Field1D f(2, 16, 1.0);
  for (int c = 0; c < 16; ++c) {
    f.rho(c) = 1.0;
    f.partial(c, 0) = 0.5;
  }
  f.partial(5, 0) = 1.2;
  CHECK_THROWS_AS(f.require_positive(), NonPositiveDensity);
  const MixtureSpec spec = standard_mixture(0.1);
  const Field1D w = well_prepared_state(spec, make_initial_field(InitialProfile::standard(), 32, 1.0));
  CHECK_THROWS_AS(relaxation_stable_dt(spec, w, 1.5), CflViolation);
  CHECK_THROWS_AS(relaxation_stable_dt(spec, w, 0.0), CflViolation);
}

TEST_CASE("stiff source step") {
  // N = 2: (1 + dt/eps * sigma * rho / (rho_1 rho_2)) J_new = J_old
  Matrix s(2, 2);
  s << 0, 2, 2, 0;
  const MixtureSpec spec =
      MixtureSpec::make({PressureLaw::isothermal(1), PressureLaw::isothermal(1)}, {1, 1}, s, 0.1);
  Field1D f(2, 16, 1.0);
  for (int c = 0; c < 16; ++c) {
    f.rho(c) = 4.0;
    f.momentum(c) = 0.4;
    f.partial(c, 0) = 1.0;
    f.flux(c, 0) = 0.3;
  }
  Field1D g = f;
  stiff_source_step(spec, g, 0.01);
  const double factor = 1.0 + (0.01 / 0.1) * 2.0 * (1.0 / 1.0 + 1.0 / 3.0);
  CHECK(g.flux(3, 0) == doctest::Approx(0.3 / factor).epsilon(1e-14));
  CHECK(g.rho(3) == f.rho(3));
  CHECK(g.momentum(3) == f.momentum(3));

  Field1D h = f;
  stiff_source_step(spec, h, 1e9);
  CHECK(std::abs(h.flux(0, 0)) < 1e-9);

  Field1D z = f;
  for (int c = 0; c < 16; ++c) {
    z.flux(c, 0) = 0.0;
  }
  Field1D z2 = z;
  stiff_source_step(spec, z2, 0.05);
  CHECK(z2.data() == z.data());
}

TEST_CASE("uniform states are fixed points") {
  const MixtureSpec spec = standard_mixture(0.01);
  InitialProfile flat = InitialProfile::standard();
  flat.kind = InitialProfile::Kind::Uniform;
  flat.velocity_mean = 0.3;
  const FieldU1D u0 = make_initial_field(flat, 32, 1.0);
  Field1D w = well_prepared_state(spec, u0);
  const Field1D w0 = w;
  for (int k = 0; k < 50; ++k) {
    step(spec, w, 0.5);
  }
  for (std::size_t k = 0; k < w.data().size(); ++k) {
    CHECK(std::abs(w.data()[k] - w0.data()[k]) <= 1e-14 * std::max(1.0, std::abs(w0.data()[k])));
  }
  FieldU1D u = u0;
  for (int k = 0; k < 50; ++k) {
    limit_step(spec, u, 0.5);
  }
  CHECK(conserved_l2_difference(u, u0) < 1e-14);
  CHECK(limit_total_entropy(spec, u) == doctest::Approx(limit_total_entropy(spec, u0)));

  const LimitTendency t = limit_diffusion_rhs(spec, u0, 0.01);
  for (double v : t.data) {
    CHECK(std::abs(v) < 1e-14);
  }
}

TEST_CASE("entropy does not increase in a relaxation run") {
  const MixtureSpec spec = standard_mixture(0.01);
  Field1D w = well_prepared_state(spec, make_initial_field(InitialProfile::standard(), 128, 1.0));
  double eta = total_entropy(spec, w);
  for (int k = 0; k < 200; ++k) {
    step(spec, w, 0.5);
    const double next = total_entropy(spec, w);
    CHECK(next <= eta + 1e-8 * std::abs(eta));
    eta = next;
  }
}

TEST_CASE("relaxation solver self-convergence in the grid") {
  const MixtureSpec spec = standard_mixture(0.1);
  std::vector<FieldU1D> sol;
  for (int m : {256, 512, 1024}) {
    const Field1D w0 = well_prepared_state(spec, make_initial_field(InitialProfile::standard(), m, 1.0));
    sol.push_back(conserved_field(run_relaxation(spec, w0, 0.05, 0.5)));
  }
  const double e1 = conserved_l2_difference(restrict2(sol[1]), sol[0]);
  const double e2 = conserved_l2_difference(restrict2(sol[2]), sol[1]);
  const double order = std::log2(e1 / e2);
  MESSAGE("grid self-convergence order " << order);
  CHECK(order >= 0.9);
}

TEST_CASE("strong coupling behaves like a single fluid") {
  // two identical isothermal species, sigma = 1e4: compare with the Euler system (eps = 0)
  Matrix s(2, 2);
  s << 0, 1e4, 1e4, 0;
  const MixtureSpec spec =
      MixtureSpec::make({PressureLaw::isothermal(1), PressureLaw::isothermal(1)}, {1, 1}, s, 1.0);
  InitialProfile p;
  p.kind = InitialProfile::Kind::SineMixture;
  p.base = {0.6, 0.5};
  p.amplitudes = {0.1, 0.05};
  p.phases = {0.0, 1.0};
  p.velocity_amplitude = 0.2;
  const FieldU1D u0 = make_initial_field(p, 256, 1.0);
  const Field1D w = well_prepared_state(spec, u0);
  const FieldU1D relaxed = conserved_field(run_relaxation(spec, w, 0.1, 0.5));
  const FieldU1D euler = run_limit(spec, u0, 0.1, 0.5, 0.0);
  const double diff = conserved_l2_difference(relaxed, euler);
  MESSAGE("single-fluid L2 difference " << diff);
  CHECK(diff < 1e-3);
}

TEST_CASE("eps = 0 limit transports species at constant velocity") {
  const MixtureSpec spec = MixtureSpec::make(
      {PressureLaw::isothermal(1), PressureLaw::isothermal(1)}, {1, 1},
      (Matrix(2, 2) << 0, 1, 1, 0).finished(), 1.0);
  InitialProfile p;
  p.kind = InitialProfile::Kind::SineMixture;
  p.base = {1.0, 1.0};
  p.amplitudes = {0.1, -0.1};
  p.phases = {0.0, 0.0};
  p.velocity_mean = 0.5;
  const int m = 1024;
  const double t = 0.2;
  const FieldU1D u = run_limit(spec, make_initial_field(p, m, 1.0), t, 0.5, 0.0);
  double err = 0.0;
  for (int c = 0; c < m; ++c) {
    const double x = u.center(c) - 0.5 * t;
    const double exact = 1.0 + 0.1 * std::sin(2 * std::numbers::pi * x);
    err += (u.partial(c, 0) - exact) * (u.partial(c, 0) - exact) * u.dx();
  }
  CHECK(std::sqrt(err) < 2e-2);
}

TEST_CASE("limit diffusion term against a direct Maxwell-flux evaluation") {
  // interior face fluxes from the closure, differenced, match the rhs to O(dx^2)
  const MixtureSpec spec = standard_mixture(0.05);
  std::vector<double> mismatch;
  for (int m : {128, 256}) {
    const FieldU1D u = make_initial_field(InitialProfile::standard(), m, 1.0);
    const LimitTendency t = limit_diffusion_rhs(spec, u, 0.05);
    const Field1D w = well_prepared_state(spec, u);
    double err = 0.0, scale = 0.0;
    for (int c = 0; c < m; ++c) {
      const int l = (c + m - 1) % m, r = (c + 1) % m;
      const double div = -(w.flux(r, 0) - w.flux(l, 0)) / (2 * u.dx());
      err = std::max(err, std::abs(t.at(c, 2) - div));
      scale = std::max(scale, std::abs(div));
    }
    MESSAGE("M = " << m << " relative mismatch " << err / scale);
    mismatch.push_back(err / scale);
  }
  CHECK(mismatch[1] < 1e-3);
  CHECK(mismatch[0] / mismatch[1] > 3.5);
}

TEST_CASE("snapshot writers") {
  const MixtureSpec spec = standard_mixture(0.1);
  const FieldU1D u = make_initial_field(InitialProfile::standard(), 16, 1.0);
  std::ostringstream a, b;
  write_snapshot(a, well_prepared_state(spec, u));
  write_snapshot(b, u);
  CHECK(a.str().rfind("x,rho,momentum,rho_1,rho_2,J_1,J_2\n", 0) == 0);
  CHECK(b.str().rfind("x,rho,momentum,rho_1,rho_2\n", 0) == 0);
}
