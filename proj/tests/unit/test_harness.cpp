#include "mcdiff/config.hpp"
#include "mcdiff/entropy.hpp"
#include "mcdiff/errors.hpp"
#include "mcdiff/harness.hpp"
#include "mcdiff/relaxation.hpp"
#include "mcdiff/closure.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mcdiff;

TEST_CASE("fit_order") {
  CHECK(fit_order({0.02, 0.01, 0.005}, {4e-4, 1e-4, 2.5e-5}) == doctest::Approx(2.0));
  CHECK(fit_order({1.0, 0.1}, {3.0, 0.3}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_order({0.1}, {1.0}), DegenerateFit);
  CHECK_THROWS_AS(fit_order({0.1, 0.1}, {1.0, 2.0}), DegenerateFit);
  CHECK_THROWS_AS(fit_order({0.1, 0.05}, {1.0, 0.0}), DegenerateFit);
}

TEST_CASE("sweep CSV layout") {
  SweepResult r;
  r.rows = {{0.02, 4e-4, std::nullopt, 10}, {0.01, 1e-4, 2.0, 20}};
  r.order = 2.0;
  std::ostringstream out;
  write_sweep_csv(out, r);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "epsilon,error,fitted_order_running");
  std::getline(in, line);
  CHECK(line.back() == ',');
  std::getline(in, line);
  CHECK(line.rfind("0.01,", 0) == 0);
}

TEST_CASE("small sweep runs and shrinks with epsilon") {
  SweepOptions opt;
  opt.cells = 128;
  opt.t_end = 0.01;
  opt.samples = 4;
  const SweepResult r = epsilon_sweep(standard_mixture(0.01), InitialProfile::standard(),
                                      {0.04, 0.02, 0.01}, opt);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].error > r.rows[1].error);
  CHECK(r.rows[1].error > r.rows[2].error);
  CHECK(r.order > 1.0);
}

TEST_CASE("structure battery on the reference mixture") {
  const StructureReport report = certify_structure(standard_mixture(0.01), 100, 3);
  CHECK(report.pass);
  CHECK(report.find("phi_c_inverse").max_violation < 1e-12);
  CHECK_THROWS(report.find("no_such_condition"));
  const auto j = report.to_json();
  CHECK(j.at("pass").get<bool>());
}

TEST_CASE("reference densities do not change the dynamics") {
  MixtureSpec a = standard_mixture(0.05);
  MixtureSpec b = a;
  b.ref_densities = {0.5, 2.0, 1.3};
  ConservedU u;
  u.rho = 3.0;
  u.momentum = {0.2};
  u.partial = {1.1, 0.8};
  const StateU s = equilibrium_state(u);
  CHECK((entropy_hessian(a, s) - entropy_hessian(b, s)).cwiseAbs().maxCoeff() < 1e-13);

  const FieldU1D u0 = make_initial_field(InitialProfile::standard(), 32, 1.0);
  Field1D wa = well_prepared_state(a, u0), wb = well_prepared_state(b, u0);
  for (int k = 0; k < 10; ++k) {
    step(a, wa, 0.5);
    step(b, wb, 0.5);
  }
  CHECK(wa.data() == wb.data());
}

TEST_CASE("config round trip") {
  ExperimentConfig c = default_config();
  c.snapshot_times = {0.0, 0.01};
  c.mixture.laws[1] = PressureLaw::power_law(1.5, 1.4);
  const ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(back.cells == c.cells);
  CHECK(back.eps_list == c.eps_list);
  CHECK(back.snapshot_times == c.snapshot_times);
  CHECK(back.mixture.laws == c.mixture.laws);
  CHECK(back.mixture.ref_densities == c.mixture.ref_densities);
  CHECK((back.mixture.sigma - c.mixture.sigma).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.initial.base == c.initial.base);
  CHECK(back.order_min == c.order_min);
}

TEST_CASE("config errors") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bad = dir / "mcdiff_bad_config.json";
  {
    std::ofstream(bad) << "{\n  \"mixture\": {\n    \"N\": 2,,\n  }\n}\n";
  }
  try {
    load_config(bad.string());
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config((dir / "mcdiff_missing_config.json").string()), ConfigError);

  auto j = config_to_json(default_config());
  j["mixture"]["sigma"][0][1] = -1.0;
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
  j = config_to_json(default_config());
  j["initial"]["kind"] = "square-wave";
  CHECK_THROWS_AS(config_from_json(j), ConfigError);
}
