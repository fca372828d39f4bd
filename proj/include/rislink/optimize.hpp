// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// The two design optimizers: a Dinkelbach-style ratio iteration for the
// energy-efficiency-optimal element count, and a KKT case analysis for the
// largest user radius that keeps outage below target.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rislink/aggregate.hpp"
#include "rislink/channel.hpp"
#include "rislink/pathloss.hpp"
#include "rislink/performance.hpp"

namespace rislink::optimize {

// ---------------------------------------------------------------- elements

struct DinkelbachConfig {
  int n_min = 8;
  int n_max = 1000;
  // Regime split for the SNR model: mean-only quadratic at or below n_th,
  // variance-corrected above. Must match the energy_efficiency knob.
  int n_th = 50;
  double epsilon = 1e-6;  // ratio convergence threshold
  int t_max = 5000;       // iteration safety cap
};

// Coefficients of the continuous objective
//   EE(n) = bandwidth log2(1 + lam n^2 [+ xi n]) / (p_fix + n p_elem).
struct EeCoefficients {
  double lam;        // gamma0 E[h]^2 / PL
  double xi;         // gamma0 VAR[h] / PL
  double theta;      // 2 bandwidth / ln 2
  double p_fix;      // p_s/upsilon + p_c + p_h
  double p_elem;     // p_r_b + p_f
  double bandwidth;
};

EeCoefficients ee_coefficients(const channel::FadingParams& p,
                               const aggregate::LinkBudget& lb,
                               const performance::PowerModel& pm,
                               double bandwidth);

enum class EeRegime { SmallN, LargeN };

// Stationary point (largest root) of the high-SNR surrogate for the
// parametric subproblem max_n capacity(n) - ratio * power(n). Empty when the
// quadratic has no real root (the subproblem has no interior maximum).
std::optional<double> closed_form_n(double ratio, EeRegime regime,
                                    const EeCoefficients& c);

struct DinkelbachResult {
  int n_star = 0;
  double ee_star = 0.0;  // bit/s/W at n_star
  int iterations = 0;
  // Ratio after each update, starting with the initial value. Nondecreasing
  // up to the convergence threshold by construction.
  std::vector<double> ratio_trace;
};

// Two-phase ratio iteration over the continuous relaxation (variance-
// corrected branch first, mean-only branch when the iterate drops into the
// small-n regime), then an integer rounding step decided by the final
// subproblem value. lb.n is ignored.
DinkelbachResult dinkelbach_optimal_n(const channel::FadingParams& p,
                                      const aggregate::LinkBudget& lb,
                                      const performance::PowerModel& pm,
                                      double bandwidth,
                                      const DinkelbachConfig& cfg = {});

// ---------------------------------------------------------------- coverage

// Two published forms of the SNR-margin term inside the coverage constraint.
// OutageCalibrated makes the normal-approximation outage equal the target
// exactly on the constraint boundary; SquaredMargin keeps the other reading
// available for comparison.
enum class ThresholdReading { OutageCalibrated, SquaredMargin };

struct CoverageConfig {
  double h_min = 100.0;   // altitude window, m
  double h_max = 2000.0;
  double op_threshold = 1e-4;  // outage target on the UAV-user hop
  double theta_min = 0.05;  // elevation search interval, degrees
  double theta_max = 89.95;
  double z_c = 1000.0;    // command-link ground distance, m
  ThresholdReading reading = ThresholdReading::OutageCalibrated;
};

// Full problem statement. budget.pl is ignored: the loss is recomputed from
// the candidate geometry at every evaluation.
struct CoverageProblem {
  channel::FadingParams fading;
  aggregate::LinkBudget budget;
  pathloss::PathLossParams environment;
  CoverageConfig config;
};

struct ConstraintValues {
  double g1;  // outage margin in dB, feasible when <= 0
  double g2;  // h_min - r tan(theta)
  double g3;  // r tan(theta) - h_max
};

ConstraintValues coverage_constraints(double r_u, double theta,
                                      const CoverageProblem& prob);

enum class CoverageCase { Interior, AltitudeMin, AltitudeMax, Infeasible };

struct CoverageSolution {
  double r_u = 0.0;
  double theta = 0.0;  // degrees
  double h = 0.0;      // r_u tan(theta)
  CoverageCase active_case = CoverageCase::Infeasible;
  std::array<double, 3> multipliers{};  // one per constraint
  bool from_grid_fallback = false;
};

struct KktResiduals {
  double stationarity = 0.0;
  double primal = 0.0;          // max positive constraint violation
  double dual = 0.0;            // most negative multiplier, as a magnitude
  double complementarity = 0.0;
};

KktResiduals kkt_residuals(const CoverageProblem& prob,
                           const CoverageSolution& sol);

// Maximize r_u subject to the outage margin and the altitude window. Solves
// the KKT system of the case suggested by a coarse scan (and the others as
// needed), verifies residuals, and falls back to the scan result with
// from_grid_fallback set if no case verifies.
CoverageSolution coverage_maximize(const CoverageProblem& prob);

// Reference: theta grid of `resolution` points over the search interval with
// an exact bisection on r at each angle (the margin is increasing in r).
// resolution >= 100.
CoverageSolution coverage_grid_oracle(const CoverageProblem& prob,
                                      int resolution);

}  // namespace rislink::optimize
