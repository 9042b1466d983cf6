#include <cmath>
#include <vector>

#include "doctest.h"
#include "eigenbasis_oracle.hpp"
#include "qze/error.hpp"
#include "qze/zeno_analysis.hpp"

using namespace qze;

namespace {

// P_2(t) starting from |0(f=1)> on the ramp with rate fdot, from the eigenbasis integrator.
double oracle_leak(double fdot, double t, double prefactor) {
  std::vector<oracle::cplx> c(17, 0.0);
  c[0] = 1.0;
  auto out = oracle::evolve_amplitudes(c, TrapProtocol{1.0, 1.0 + fdot * t, t}, prefactor, 16, 2000);
  return std::norm(out[2]);
}

SweepSpec small_spec() {
  SweepSpec s;
  s.K_values = {2.0, 5.0};
  s.T_values = {0.01};
  s.M_values = {10, 50};
  s.cycles_per_point = 2;
  return s;
}

}  // namespace

TEST_CASE("x^2 matrix elements") {
  CHECK(x2_element(0, 0, 1.0) == 0.5);
  CHECK(x2_element(1, 1, 5.0) == doctest::Approx(0.3));
  CHECK(x2_element(0, 2, 1.0) == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(x2_element(3, 1, 2.0) == doctest::Approx(std::sqrt(6.0) / 4.0));
  CHECK(x2_element(0, 1, 1.0) == 0.0);
  CHECK(x2_element(0, 4, 1.0) == 0.0);
}

TEST_CASE("leakage estimate") {
  const TrapProtocol flat{1.0, 1.0, 0.05};
  for (double t : {1e-4, 1e-3, 0.05}) CHECK(leakage_estimate(0, flat, t) == 0.0);

  const TrapProtocol ramp{1.0, 5.0, 0.05};
  for (double t : {1e-5, 1e-4, 1e-3}) {
    CHECK(leakage_estimate(0, ramp, t) == doctest::Approx(800.0 * t * t).epsilon(1e-12));
  }
  const TrapProtocol faster{1.0, 9.0, 0.05};
  CHECK(leakage_estimate(0, faster, 1e-3) ==
        doctest::Approx(4.0 * leakage_estimate(0, ramp, 1e-3)).epsilon(1e-12));
  CHECK_THROWS_AS(leakage_estimate(-1, ramp, 1e-3), DomainError);
}

TEST_CASE("leakage estimate matches the integrator at short times in both unit conventions") {
  const TrapProtocol ramp{1.0, 5.0, 0.05};
  const double est = leakage_estimate(0, ramp, 1e-4);
  for (double c : {2.0 * std::acos(-1.0), 1.0}) {
    CHECK(oracle_leak(80.0, 1e-4, c) == doctest::Approx(est).epsilon(1e-2));
  }
}

TEST_CASE("survival estimate") {
  CHECK(zeno_survival_estimate(1, TrapProtocol{1.0, 1.0, 0.05}, 10) == 1.0);
  const TrapProtocol ramp{1.0, 5.0, 0.05};
  const double l1000 = 1.0 - zeno_survival_estimate(1, ramp, 1000);
  const double l2000 = 1.0 - zeno_survival_estimate(1, ramp, 2000);
  CHECK(l1000 / l2000 == doctest::Approx(2.0).epsilon(0.01));
  const double s10 = zeno_survival_estimate(1, ramp, 10);
  const double s100 = zeno_survival_estimate(1, ramp, 100);
  const double s1000 = zeno_survival_estimate(1, ramp, 1000);
  CHECK(s10 < s100);
  CHECK(s100 < s1000);
  CHECK(s100 >= 0.9);
  CHECK_THROWS_AS(zeno_survival_estimate(1, ramp, 1), PredictorRangeError);
  CHECK_THROWS_AS(zeno_survival_estimate(1, ramp, 0), DomainError);
}

TEST_CASE("survival estimate agrees with simulated strokes in regime") {
  PredictSpec spec;
  spec.M_values = {100, 200, 1000};
  spec.simulate = true;
  auto rows = predict_survival(spec);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    REQUIRE(r.in_range);
    CHECK(r.leakage_per_interval < 0.01);
    CHECK(std::abs(r.simulated_survival - r.survival_estimate) <= 0.2 * r.survival_estimate);
    CHECK_MESSAGE(r.ratio == doctest::Approx(1.0).epsilon(0.25), "M=" << r.M);
  }
}

TEST_CASE("predict with a flat trap and out-of-range points") {
  PredictSpec flat;
  flat.K = 1.0;
  for (const auto& r : predict_survival(flat)) CHECK(r.survival_estimate == 1.0);

  PredictSpec diabatic;
  diabatic.M_values = {1, 10};
  auto rows = predict_survival(diabatic, default_grid(), Execution::serial);
  CHECK_FALSE(rows[0].in_range);
  CHECK(std::isnan(rows[0].survival_estimate));
  CHECK(rows[1].in_range);
  CHECK(std::isnan(rows[1].simulated_survival));
}

TEST_CASE("adiabaticity parameter") {
  CHECK(adiabaticity_parameter(5.0, 100, 5e-2) == doctest::Approx(0.8));
  CHECK(adiabaticity_parameter(2.0, 10, 5e-2) == doctest::Approx(2.0));
  CHECK(adiabaticity_parameter(5.0, 2500, 1e-1) == doctest::Approx(0.016));
}

TEST_CASE("sweep specification") {
  auto s = small_spec();
  CHECK_NOTHROW(s.validate());
  s.K_values.clear();
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = small_spec();
  s.K_values = {1.0};
  CHECK_THROWS_AS(s.validate(), ConfigError);

  SweepSpec big;
  big.K_values = {2, 3, 4};
  big.T_values = {0.1, 0.2, 0.3, 0.4, 0.5};
  big.M_values = {1, 2, 3, 4, 5};
  CHECK(big.size() == 75);

  auto raster = default_cop_raster();
  CHECK(raster.size() == 108);
  CHECK(raster.cycles_per_point == 20);
  CHECK(default_cop_raster(true).cycles_per_point == 100);
}

TEST_CASE("sweep rows are ordered and equal serial and single-point runs") {
  auto spec = small_spec();
  auto par = run_sweep(spec, default_grid(), Execution::parallel);
  auto ser = run_sweep(spec, default_grid(), Execution::serial);
  REQUIRE(par.rows.size() == 4);
  const double expected[][2] = {{2.0, 10}, {2.0, 50}, {5.0, 10}, {5.0, 50}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(par.rows[i].K == expected[i][0]);
    CHECK(par.rows[i].M == expected[i][1]);
    CHECK(par.rows[i].performance_bar == ser.rows[i].performance_bar);
    CHECK(par.rows[i].mean_survival == ser.rows[i].mean_survival);
    CHECK(par.rows[i].gap == par.rows[i].performance_opt - par.rows[i].performance_bar);
  }
  CycleParams p;
  p.K = 5.0;
  p.T = 0.01;
  p.M = 50;
  p.n_cycles = 2;
  CHECK(run_cycles(p).performance_bar == par.rows[3].performance_bar);
}

TEST_CASE("failing sweep points are recorded in their row") {
  SweepSpec s;
  s.K_values = {2.0, 1e5};  // level 1 is not resolved at f = 1e5
  s.T_values = {1e-3};
  s.M_values = {10};
  s.cycles_per_point = 1;
  auto table = run_sweep(s);
  REQUIRE(table.rows.size() == 2);
  CHECK_FALSE(table.rows[0].failed);
  CHECK(table.rows[1].failed);
  CHECK(table.rows[1].error.find("not resolved") != std::string::npos);
  CHECK(std::isnan(table.rows[1].performance_bar));
}
