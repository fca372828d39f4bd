// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rislink/aggregate.hpp"
#include "rislink/channel.hpp"
#include "rislink/errors.hpp"
#include "rislink/optimize.hpp"
#include "rislink/pathloss.hpp"
#include "rislink/performance.hpp"
#include "test_support.hpp"

using namespace rislink;
using namespace rislink::optimize;
using testsupport::close_abs;
using testsupport::close_rel;

namespace {
const double kPl = 81716990992285.17;  // z_c 1000 m, h 100 m, theta 45 deg
const double kBandwidth = 20e6;

double dbm_to_w(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

aggregate::LinkBudget budget(int n, double p_s) {
  return {p_s, 1e-12, n, 10.0, kPl};
}

performance::PowerModel hover150(double p_r_b) {
  performance::PowerModel pm;
  pm.p_h = 150.0;
  pm.p_r_b = p_r_b;
  return pm;
}

int exhaustive_best_n(const channel::FadingParams& p,
                      const aggregate::LinkBudget& lb,
                      const performance::PowerModel& pm) {
  int best_n = 8;
  double best = -1.0;
  for (int n = 8; n <= 1000; ++n) {
    aggregate::LinkBudget b = lb;
    b.n = n;
    const double ee = performance::energy_efficiency(p, b, pm, kBandwidth);
    if (ee > best) {
      best = ee;
      best_n = n;
    }
  }
  return best_n;
}

void check_trace(const DinkelbachResult& res) {
  REQUIRE(res.ratio_trace.size() ==
          static_cast<std::size_t>(res.iterations) + 1);
  for (std::size_t j = 0; j + 1 < res.ratio_trace.size(); ++j)
    CHECK(res.ratio_trace[j + 1] >= res.ratio_trace[j] - 1e-9);
}

CoverageProblem coverage_problem(double p_s_dbm, int n = 32) {
  CoverageProblem prob;
  prob.fading = channel::normalized_params(2.5, 2.5);
  prob.budget = {dbm_to_w(p_s_dbm), 1e-12, n, 10.0, kPl};  // pl unused
  return prob;
}
}  // namespace

TEST_CASE("ratio objective coefficients and closed-form roots") {
  const auto p = channel::normalized_params(2.5, 2.5);
  const auto c =
      ee_coefficients(p, budget(1, dbm_to_w(53)), hover150(0.078), kBandwidth);
  CHECK(close_rel(c.lam, 1.8765237968546031, 1e-12));
  CHECK(close_rel(c.xi, 0.5651499490096442, 1e-11));
  CHECK(close_rel(c.theta, 57707801.63555854, 1e-12));
  CHECK(close_rel(c.p_fix, dbm_to_w(53) / 1.1 + 50.0 + 150.0, 1e-13));
  CHECK(close_rel(c.p_elem, 0.079, 1e-13));

  const auto small = closed_form_n(9.0e5, EeRegime::SmallN, c);
  const auto large = closed_form_n(9.0e5, EeRegime::LargeN, c);
  REQUIRE(small.has_value());
  REQUIRE(large.has_value());
  CHECK(close_rel(*small, 811.6421231138983, 1e-10));
  CHECK(close_rel(*large, 811.4915667773923, 1e-10));

  // Past the achievable ratio the subproblem loses its interior maximum.
  CHECK_FALSE(closed_form_n(1.0e12, EeRegime::SmallN, c).has_value());
  CHECK_FALSE(closed_form_n(1.0e12, EeRegime::LargeN, c).has_value());
  CHECK_THROWS_AS(closed_form_n(0.0, EeRegime::SmallN, c), DomainError);

  CHECK_THROWS_AS(ee_coefficients(p, budget(1, 0.0), hover150(0.078), 20e6),
                  DomainError);
  CHECK_THROWS_AS(
      ee_coefficients(p, budget(1, dbm_to_w(53)), hover150(0.078), 0.0),
      DomainError);
}

TEST_CASE("element-count iteration lands on the exhaustive optimum") {
  struct Scenario {
    double m, m_s, p_r_b;
    int n_star;
    double ee_star;
  };
  // Independently tabulated optima of the integer energy-efficiency curve
  // at 53 dBm, 150 W hover power.
  const Scenario table[] = {
      {2.5, 2.5, 0.078, 804, 908543.4587835366},
      {2.5, 2.5, 0.15, 463, 825115.0511863669},
      {1.5, 1.5, 0.078, 824, 885784.469231705},
      {1.5, 1.5, 0.15, 476, 802717.726494061},
  };
  for (const auto& sc : table) {
    const auto p = channel::normalized_params(sc.m, sc.m_s);
    const auto res = dinkelbach_optimal_n(p, budget(1, dbm_to_w(53)),
                                          hover150(sc.p_r_b), kBandwidth);
    CHECK(res.n_star == sc.n_star);
    CHECK(close_rel(res.ee_star, sc.ee_star, 1e-10));
    CHECK(res.iterations <= 10);
    check_trace(res);
  }

  // More elements pay off under lighter fading, but the efficiency peak is
  // lower; a costlier element always lowers it.
  CHECK(824 > 804);
  CHECK(885784.469231705 < 908543.4587835366);
  CHECK(825115.0511863669 < 908543.4587835366);
  CHECK(802717.726494061 < 885784.469231705);
}

TEST_CASE("element-count iteration vs exhaustive search off the table") {
  struct Config {
    double m, m_s, p_s_dbm, z_c, p_h, p_r_b;
  };
  const Config configs[] = {
      {2.0, 2.5, 55.0, 800.0, 220.0, 0.1},
      {1.5, 1.5, 51.0, 1400.0, 110.0, 0.145},
      {2.5, 2.5, 50.0, 600.0, 290.0, 0.09},
  };
  for (const auto& cf : configs) {
    const auto p = channel::normalized_params(cf.m, cf.m_s);
    const double pl = pathloss::total_path_loss(
        {100.0, cf.z_c, cf.z_c, 45.0}, pathloss::PathLossParams{});
    aggregate::LinkBudget lb{dbm_to_w(cf.p_s_dbm), 1e-12, 1, 10.0, pl};
    performance::PowerModel pm;
    pm.p_h = cf.p_h;
    pm.p_r_b = cf.p_r_b;
    const auto res = dinkelbach_optimal_n(p, lb, pm, kBandwidth);
    const int n_ex = exhaustive_best_n(p, lb, pm);
    CHECK(res.n_star == n_ex);
    aggregate::LinkBudget chosen = lb;
    chosen.n = n_ex;
    CHECK(res.ee_star ==
          performance::energy_efficiency(p, chosen, pm, kBandwidth));
    check_trace(res);
  }
}

TEST_CASE("element-count iteration respects the window clamps") {
  const auto p = channel::normalized_params(2.5, 2.5);

  // Full hover power: efficiency still rises at 1000 elements, so the
  // optimum pins to the upper clamp.
  performance::PowerModel heavy;  // p_h = 1500 W
  const auto res =
      dinkelbach_optimal_n(p, budget(1, dbm_to_w(53)), heavy, kBandwidth);
  CHECK(res.n_star == 1000);
  CHECK(res.n_star == exhaustive_best_n(p, budget(1, dbm_to_w(53)), heavy));
  check_trace(res);

  // Exorbitant per-element power pushes the optimum to the lower clamp.
  performance::PowerModel costly = hover150(500.0);
  const auto res_lo =
      dinkelbach_optimal_n(p, budget(1, dbm_to_w(53)), costly, kBandwidth);
  CHECK(res_lo.n_star ==
        exhaustive_best_n(p, budget(1, dbm_to_w(53)), costly));
  CHECK(res_lo.n_star == 8);

  DinkelbachConfig bad;
  bad.n_min = 0;
  CHECK_THROWS_AS(
      dinkelbach_optimal_n(p, budget(1, 1.0), heavy, kBandwidth, bad),
      DomainError);
  bad = DinkelbachConfig{};
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(
      dinkelbach_optimal_n(p, budget(1, 1.0), heavy, kBandwidth, bad),
      DomainError);
  bad = DinkelbachConfig{};
  bad.t_max = 0;
  CHECK_THROWS_AS(
      dinkelbach_optimal_n(p, budget(1, 1.0), heavy, kBandwidth, bad),
      DomainError);
}

TEST_CASE("coverage constraint assembly") {
  const auto prob = coverage_problem(34.0);
  const double r = 1000.0;
  const double theta = 30.0;
  const auto v = coverage_constraints(r, theta, prob);

  // Geometry terms plus a closing constant fixed by the outage margin.
  const double rad = theta * M_PI / 180.0;
  const double h = r * std::tan(rad);
  const double geo =
      10.0 * std::log10(1000.0 * 1000.0 + h * h) +
      20.0 * std::log10(r / std::cos(rad)) +
      (0.1 - 20.0) * pathloss::p_los(theta, prob.environment);
  CHECK(close_abs(v.g1 - geo, -83.10288807289074, 1e-9));
  CHECK(close_abs(v.g2, 100.0 - h, 1e-9));
  CHECK(close_abs(v.g3, h - 2000.0, 1e-9));

  // The constant tracks transmit power dB for dB.
  const auto v36 = coverage_constraints(r, theta, coverage_problem(36.0));
  const auto v60 = coverage_constraints(r, theta, coverage_problem(60.0));
  const auto v66 = coverage_constraints(r, theta, coverage_problem(66.0));
  CHECK(close_abs(v36.g1 - geo, -85.10288807289074, 1e-9));
  CHECK(close_abs(v60.g1 - geo, -109.1028880728907, 1e-9));
  CHECK(close_abs(v66.g1 - geo, -115.10288807289074, 1e-9));

  // The alternative margin reading shifts the constant by the SNR
  // requirement in dB.
  auto prob_sq = coverage_problem(34.0);
  prob_sq.config.reading = ThresholdReading::SquaredMargin;
  const auto v_sq = coverage_constraints(r, theta, prob_sq);
  const double k = 10.0 * 1e-12 / dbm_to_w(34.0);
  CHECK(close_abs(v_sq.g1 - v.g1, 10.0 * std::log10(k), 1e-9));

  CHECK_THROWS_AS(coverage_constraints(0.0, 30.0, prob), DomainError);
  CHECK_THROWS_AS(coverage_constraints(1000.0, 0.0, prob), DomainError);
  CHECK_THROWS_AS(coverage_constraints(1000.0, 90.0, prob), DomainError);
  // Too few elements: the normal approximation cannot reach the target.
  CHECK_THROWS_AS(coverage_constraints(1000.0, 30.0, coverage_problem(34.0, 4)),
                  DomainError);
  auto bad = coverage_problem(34.0);
  bad.config.h_min = 0.0;
  CHECK_THROWS_AS(coverage_constraints(1000.0, 30.0, bad), DomainError);
  bad = coverage_problem(34.0);
  bad.config.op_threshold = 0.0;
  CHECK_THROWS_AS(coverage_constraints(1000.0, 30.0, bad), DomainError);
}

TEST_CASE("coverage grid oracle reproduces the reference scan") {
  struct Scenario {
    double p_s_dbm, r_u, theta, h;
    CoverageCase which;
  };
  const Scenario table[] = {
      {34.0, 98.81216182788323, 45.348449612403094, 100.02140154605252,
       CoverageCase::AltitudeMin},
      {36.0, 146.04490285543204, 34.40038759689922, 100.00048318801522,
       CoverageCase::AltitudeMin},
      {60.0, 2147.942118742307, 16.73062015503876, 645.6649494342548,
       CoverageCase::Interior},
      {66.0, 3530.231460178413, 15.606589147286822, 986.0959816107536,
       CoverageCase::Interior},
  };
  for (const auto& sc : table) {
    const auto sol = coverage_grid_oracle(coverage_problem(sc.p_s_dbm), 4000);
    CHECK(close_rel(sol.r_u, sc.r_u, 1e-9));
    CHECK(close_abs(sol.theta, sc.theta, 1e-9));
    CHECK(close_rel(sol.h, sc.h, 1e-9));
    CHECK(sol.active_case == sc.which);
    CHECK_FALSE(sol.from_grid_fallback);
  }

  CHECK(coverage_grid_oracle(coverage_problem(30.0), 500).active_case ==
        CoverageCase::Infeasible);
  CHECK_THROWS_AS(coverage_grid_oracle(coverage_problem(34.0), 99),
                  DomainError);
}

TEST_CASE("coverage KKT solution refines the scan and verifies") {
  struct Scenario {
    double p_s_dbm, grid_r;
    CoverageCase which;
  };
  const Scenario table[] = {
      {34.0, 98.81216182788323, CoverageCase::AltitudeMin},
      {36.0, 146.04490285543204, CoverageCase::AltitudeMin},
      {60.0, 2147.942118742307, CoverageCase::Interior},
      {66.0, 3530.231460178413, CoverageCase::Interior},
  };
  for (const auto& sc : table) {
    const auto prob = coverage_problem(sc.p_s_dbm);
    const auto sol = coverage_maximize(prob);
    CHECK_FALSE(sol.from_grid_fallback);
    CHECK(sol.active_case == sc.which);
    // The solver is free of the scan quantization, so it can only do
    // better, and not by more than the quantization allows.
    CHECK(sol.r_u >= sc.grid_r - 1e-6);
    CHECK(close_rel(sol.r_u, sc.grid_r, 5e-3));
    CHECK(close_abs(sol.h, sol.r_u * std::tan(sol.theta * M_PI / 180.0),
                    1e-9));

    const auto res = kkt_residuals(prob, sol);
    CHECK(res.stationarity <= 1e-6);
    CHECK(res.primal <= 1e-6);
    CHECK(res.dual <= 1e-9);
    CHECK(res.complementarity <= 1e-6);

    CHECK(sol.multipliers[0] > 0.0);
    if (sc.which == CoverageCase::AltitudeMin) {
      CHECK(sol.multipliers[1] > 0.0);
      CHECK(sol.multipliers[2] == 0.0);
      CHECK(close_abs(sol.h, 100.0, 1e-6));
    } else {
      CHECK(sol.multipliers[1] == 0.0);
      CHECK(sol.multipliers[2] == 0.0);
      CHECK(sol.h > 110.0);
      CHECK(sol.h < 1990.0);
    }
  }

  const auto infeasible = coverage_maximize(coverage_problem(30.0));
  CHECK(infeasible.active_case == CoverageCase::Infeasible);
  CHECK(infeasible.r_u == 0.0);
}

TEST_CASE("outage sits exactly on target at the coverage boundary") {
  for (const double p_s_dbm : {36.0, 60.0}) {
    const auto prob = coverage_problem(p_s_dbm);
    const auto sol = coverage_maximize(prob);
    const double pl = pathloss::total_path_loss(
        {sol.h, prob.config.z_c, sol.r_u, sol.theta}, prob.environment);
    aggregate::LinkBudget lb = prob.budget;
    lb.pl = pl;
    const double outage = aggregate::outage_clt(prob.fading, lb);
    CHECK(close_rel(outage, 1e-4, 1e-2));
  }
}

TEST_CASE("coverage stationarity holds under numerical differentiation") {
  const auto prob = coverage_problem(60.0);
  const auto sol = coverage_maximize(prob);
  auto lagrangian = [&](double r, double theta) {
    const auto v = coverage_constraints(r, theta, prob);
    return r - sol.multipliers[0] * v.g1 - sol.multipliers[1] * v.g2 -
           sol.multipliers[2] * v.g3;
  };
  const double dr = 1e-3;
  const double dt = 1e-4;
  const double grad_r =
      (lagrangian(sol.r_u + dr, sol.theta) -
       lagrangian(sol.r_u - dr, sol.theta)) /
      (2.0 * dr);
  const double grad_t =
      (lagrangian(sol.r_u, sol.theta + dt) -
       lagrangian(sol.r_u, sol.theta - dt)) /
      (2.0 * dt);
  CHECK(close_abs(grad_r, 0.0, 1e-5));
  CHECK(close_abs(grad_t, 0.0, 1e-4));
}

TEST_CASE("altitude ceiling stays inactive across the power sweep") {
  for (const double p_s_dbm : {34.0, 40.0, 46.0, 52.0, 58.0, 64.0}) {
    const auto sol = coverage_maximize(coverage_problem(p_s_dbm));
    CHECK(sol.active_case != CoverageCase::AltitudeMax);
    CHECK(sol.active_case == (p_s_dbm <= 40.0 ? CoverageCase::AltitudeMin
                                              : CoverageCase::Interior));
  }
}
