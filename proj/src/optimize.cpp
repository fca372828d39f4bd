// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0

#include "rislink/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rislink/errors.hpp"
#include "rislink/numerics.hpp"

namespace rislink::optimize {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegToRad = kPi / 180.0;

// ------------------------------------------------------------ element count

void check_dinkelbach(const DinkelbachConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
    throw DomainError("element window must satisfy 1 <= n_min <= n_max");
  if (!(cfg.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (cfg.t_max < 1) throw DomainError("t_max must be at least 1");
}

double cap_continuous(double n, EeRegime regime, const EeCoefficients& c) {
  const double snr =
      c.lam * n * n + (regime == EeRegime::LargeN ? c.xi * n : 0.0);
  return c.bandwidth * std::log2(1.0 + snr);
}

double ee_continuous(double n, EeRegime regime, const EeCoefficients& c) {
  return cap_continuous(n, regime, c) / (c.p_fix + n * c.p_elem);
}

// Capacity with the integer-n regime split used everywhere else: mean-only
// SNR at or below n_th, variance-corrected above.
double cap_integer(double n, int n_th, const EeCoefficients& c) {
  return cap_continuous(
      n, n > n_th ? EeRegime::LargeN : EeRegime::SmallN, c);
}

// -------------------------------------------------------------- coverage

// Everything in the outage-margin constraint that does not depend on the
// candidate geometry.
struct CoverageTerms {
  double m_const;     // closing constant of the margin, dB
  double eta_delta;   // eta_los - eta_nlos
  double alpha;
  double z_c;
};

void check_coverage(const CoverageProblem& prob) {
  const auto& cfg = prob.config;
  const auto& lb = prob.budget;
  if (!(lb.p_s > 0.0)) throw DomainError("p_s must be positive");
  if (!(lb.n_0 > 0.0)) throw DomainError("n_0 must be positive");
  if (!(lb.gamma_th > 0.0)) throw DomainError("gamma_th must be positive");
  if (lb.n < 1) throw DomainError("element count must be at least 1");
  if (!(cfg.h_min > 0.0) || !(cfg.h_max > cfg.h_min))
    throw DomainError("altitude window must satisfy 0 < h_min < h_max");
  if (!(cfg.op_threshold > 0.0) || !(cfg.op_threshold < 1.0))
    throw DomainError("outage threshold must lie in (0, 1)");
  if (!(cfg.theta_min > 0.0) || !(cfg.theta_max > cfg.theta_min) ||
      !(cfg.theta_max < 90.0))
    throw DomainError("elevation interval must lie inside (0, 90) degrees");
  if (!(cfg.z_c >= 0.0)) throw DomainError("z_c must be nonnegative");
}

CoverageTerms make_terms(const CoverageProblem& prob) {
  check_coverage(prob);
  const auto& cfg = prob.config;
  const auto& lb = prob.budget;
  const auto mom = aggregate::clt_moments(prob.fading, lb.n);
  const double quantile = numerics::gauss_q_inverse(1.0 - cfg.op_threshold);
  const double margin = quantile * std::sqrt(mom.sigma2_a) + mom.mu_a;
  if (!(margin > 0.0))
    throw DomainError(
        "outage target unreachable: the approximating normal puts the "
        "required quantile below zero at this element count");
  const double k = lb.gamma_th / aggregate::gamma0(lb);
  const double margin_db =
      cfg.reading == ThresholdReading::OutageCalibrated
          ? 10.0 * std::log10(margin * margin / k)
          : 10.0 * std::log10(margin * margin / (k * k));
  CoverageTerms t;
  t.m_const = 20.0 * std::log10(4.0 * kPi /
                                pathloss::wavelength(prob.environment)) +
              prob.environment.eta_nlos - margin_db;
  t.eta_delta = prob.environment.eta_los - prob.environment.eta_nlos;
  t.alpha = prob.environment.alpha;
  t.z_c = cfg.z_c;
  return t;
}

// Outage margin in dB: the total loss the geometry produces minus the
// largest loss the link budget tolerates at the outage target.
double g1_value(double r, double theta, const CoverageTerms& t,
                const pathloss::PathLossParams& env) {
  const double tan_t = std::tan(theta * kDegToRad);
  const double h = r * tan_t;
  return 5.0 * t.alpha * std::log10(t.z_c * t.z_c + h * h) +
         20.0 * std::log10(r / std::cos(theta * kDegToRad)) +
         t.eta_delta * pathloss::p_los(theta, env) + t.m_const;
}

struct G1Gradient {
  double d_r;
  double d_theta;  // per degree
};

G1Gradient g1_gradient(double r, double theta, const CoverageTerms& t,
                       const pathloss::PathLossParams& env) {
  const double ln10 = std::log(10.0);
  const double rad = theta * kDegToRad;
  const double tan_t = std::tan(rad);
  const double sec2 = 1.0 + tan_t * tan_t;
  const double denom = t.z_c * t.z_c + r * r * tan_t * tan_t;
  const double e = env.s_a * std::exp(-env.s_b * (theta - env.s_a));
  G1Gradient g;
  g.d_r = 10.0 * t.alpha / ln10 * r * tan_t * tan_t / denom +
          20.0 / (ln10 * r);
  g.d_theta = kDegToRad * (10.0 * t.alpha / ln10 * r * r * tan_t * sec2 /
                               denom +
                           20.0 / ln10 * tan_t) +
              t.eta_delta * env.s_b * e / ((1.0 + e) * (1.0 + e));
  return g;
}

void check_point(double r_u, double theta) {
  if (!(r_u > 0.0)) throw DomainError("r_u must be positive");
  if (!(theta > 0.0) || !(theta < 90.0))
    throw DomainError("theta must lie in (0, 90) degrees");
}

ConstraintValues constraint_values(double r_u, double theta,
                                   const CoverageTerms& t,
                                   const CoverageProblem& prob) {
  check_point(r_u, theta);
  const double h = r_u * std::tan(theta * kDegToRad);
  ConstraintValues v;
  v.g1 = g1_value(r_u, theta, t, prob.environment);
  v.g2 = prob.config.h_min - h;
  v.g3 = h - prob.config.h_max;
  return v;
}

struct ScanPoint {
  double theta = 0.0;
  double r = 0.0;
  bool feasible = false;
};

// Largest feasible radius at one elevation. The margin is strictly
// increasing in r, so the feasible set at fixed theta is an interval
// starting at the altitude floor; 80 bisection steps pin its upper end to
// machine precision.
ScanPoint scan_theta(double theta, const CoverageTerms& t,
                     const CoverageProblem& prob) {
  ScanPoint p;
  p.theta = theta;
  const double tan_t = std::tan(theta * kDegToRad);
  const double r_lo = prob.config.h_min / tan_t;
  const double r_hi = prob.config.h_max / tan_t;
  if (g1_value(r_lo, theta, t, prob.environment) > 0.0) return p;
  p.feasible = true;
  if (g1_value(r_hi, theta, t, prob.environment) <= 0.0) {
    p.r = r_hi;
    return p;
  }
  double a = r_lo;
  double b = r_hi;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (a + b);
    if (g1_value(mid, theta, t, prob.environment) <= 0.0)
      a = mid;
    else
      b = mid;
  }
  p.r = a;
  return p;
}

std::vector<ScanPoint> scan_grid(const CoverageTerms& t,
                                 const CoverageProblem& prob, int resolution) {
  const auto& cfg = prob.config;
  std::vector<ScanPoint> pts(static_cast<std::size_t>(resolution));
  const double step =
      (cfg.theta_max - cfg.theta_min) / static_cast<double>(resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    const double theta = i + 1 == resolution
                             ? cfg.theta_max
                             : cfg.theta_min + static_cast<double>(i) * step;
    pts[static_cast<std::size_t>(i)] = scan_theta(theta, t, prob);
  }
  return pts;
}

int best_index(const std::vector<ScanPoint>& pts) {
  int best = -1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].feasible) continue;
    if (best < 0 || pts[i].r > pts[static_cast<std::size_t>(best)].r)
      best = static_cast<int>(i);
  }
  return best;
}

CoverageCase classify_altitude(double h, const CoverageConfig& cfg) {
  const double tol = 1e-2 * (cfg.h_max - cfg.h_min);
  if (std::abs(h - cfg.h_min) <= tol) return CoverageCase::AltitudeMin;
  if (std::abs(h - cfg.h_max) <= tol) return CoverageCase::AltitudeMax;
  return CoverageCase::Interior;
}

CoverageSolution grid_solution(const std::vector<ScanPoint>& pts,
                               const CoverageProblem& prob) {
  CoverageSolution sol;
  const int best = best_index(pts);
  if (best < 0) return sol;
  const auto& p = pts[static_cast<std::size_t>(best)];
  sol.r_u = p.r;
  sol.theta = p.theta;
  sol.h = p.r * std::tan(p.theta * kDegToRad);
  sol.active_case = classify_altitude(sol.h, prob.config);
  return sol;
}

// ------------------------------------------------------- KKT case solvers

// Shared multiplier assembly for the altitude-pinned cases. Stationarity of
// r - w1 g1 - w g_alt in (r, theta) fixes both multipliers; validity is then
// a sign question decided by the caller.
struct PinnedMultipliers {
  double w1;
  double w_alt;
};

PinnedMultipliers pinned_multipliers(double r, double theta,
                                     const CoverageTerms& t,
                                     const CoverageProblem& prob) {
  const auto g = g1_gradient(r, theta, t, prob.environment);
  const double rad = theta * kDegToRad;
  const double tan_t = std::tan(rad);
  const double s = r * (1.0 + tan_t * tan_t) * kDegToRad;  // d(r tan)/dtheta
  const double w1 = 1.0 / (g.d_r - g.d_theta * tan_t / s);
  return {w1, w1 * g.d_theta / s};
}

// Root of the margin along an altitude-pinned curve r(theta) = h_b/tan.
// The radius falls with theta on the curve, so the best feasible point is
// the lowest-theta crossing into feasibility.
std::optional<double> pinned_crossing(double h_b, const CoverageTerms& t,
                                      const CoverageProblem& prob,
                                      const std::vector<ScanPoint>& pts) {
  auto phi = [&](double theta) {
    return g1_value(h_b / std::tan(theta * kDegToRad), theta, t,
                    prob.environment);
  };
  double prev_theta = pts.front().theta;
  if (phi(prev_theta) <= 0.0)
    return std::nullopt;  // edge of the search interval
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double cur_theta = pts[i].theta;
    if (phi(cur_theta) <= 0.0) {
      numerics::RootSpec spec;
      spec.tolerance = 1e-12;
      return numerics::find_root(phi, prev_theta, cur_theta, spec);
    }
    prev_theta = cur_theta;
  }
  return std::nullopt;
}

std::optional<CoverageSolution> solve_case(CoverageCase which,
                                           const CoverageTerms& t,
                                           const CoverageProblem& prob,
                                           const std::vector<ScanPoint>& pts,
                                           const ScanPoint& seed) {
  CoverageSolution sol;
  sol.active_case = which;
  try {
    if (which == CoverageCase::Interior) {
      auto system = [&](const std::vector<double>& x) {
        return std::vector<double>{
            g1_value(x[0], x[1], t, prob.environment),
            g1_gradient(x[0], x[1], t, prob.environment).d_theta};
      };
      numerics::RootSpec spec;
      spec.tolerance = 1e-11;
      const auto x =
          numerics::find_root_system(system, {seed.r, seed.theta}, spec);
      sol.r_u = x[0];
      sol.theta = x[1];
      const auto g = g1_gradient(sol.r_u, sol.theta, t, prob.environment);
      sol.multipliers = {1.0 / g.d_r, 0.0, 0.0};
    } else {
      const double h_b = which == CoverageCase::AltitudeMin
                             ? prob.config.h_min
                             : prob.config.h_max;
      const auto theta = pinned_crossing(h_b, t, prob, pts);
      if (!theta) return std::nullopt;
      sol.theta = *theta;
      sol.r_u = h_b / std::tan(sol.theta * kDegToRad);
      const auto w = pinned_multipliers(sol.r_u, sol.theta, t, prob);
      sol.multipliers = which == CoverageCase::AltitudeMin
                            ? std::array<double, 3>{w.w1, w.w_alt, 0.0}
                            : std::array<double, 3>{w.w1, 0.0, -w.w_alt};
    }
  } catch (const ConvergenceError&) {
    return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;
  }
  if (!(sol.r_u > 0.0) || !(sol.theta > prob.config.theta_min) ||
      !(sol.theta < prob.config.theta_max))
    return std::nullopt;
  sol.h = sol.r_u * std::tan(sol.theta * kDegToRad);
  return sol;
}

}  // namespace

EeCoefficients ee_coefficients(const channel::FadingParams& p,
                               const aggregate::LinkBudget& lb,
                               const performance::PowerModel& pm,
                               double bandwidth) {
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
  if (!(lb.p_s > 0.0)) throw DomainError("p_s must be positive");
  if (!(lb.n_0 > 0.0)) throw DomainError("n_0 must be positive");
  if (!(lb.pl > 0.0)) throw DomainError("path loss must be positive");
  const double g0 = aggregate::gamma0(lb);
  const double mean = channel::mean_envelope(p);
  EeCoefficients c;
  c.lam = g0 * mean * mean / lb.pl;
  c.xi = g0 * channel::variance_envelope(p) / lb.pl;
  c.theta = 2.0 * bandwidth / std::log(2.0);
  c.p_fix = lb.p_s / pm.upsilon + pm.p_c + pm.p_h;
  c.p_elem = pm.p_r_b + pm.p_f;
  c.bandwidth = bandwidth;
  return c;
}

std::optional<double> closed_form_n(double ratio, EeRegime regime,
                                    const EeCoefficients& c) {
  if (!(ratio > 0.0)) throw DomainError("ratio must be positive");
  const double r_cost = ratio * c.p_elem;
  if (regime == EeRegime::SmallN) {
    const double disc =
        c.theta * c.theta * c.lam * c.lam - 4.0 * r_cost * r_cost * c.lam;
    if (disc < 0.0) return std::nullopt;
    return (c.theta * c.lam + std::sqrt(disc)) / (2.0 * r_cost * c.lam);
  }
  const double t1 = c.theta * c.lam - r_cost * c.xi;
  const double disc =
      t1 * t1 - 4.0 * r_cost * c.lam * (r_cost - c.theta * c.xi / 2.0);
  if (disc < 0.0) return std::nullopt;
  return (t1 + std::sqrt(disc)) / (2.0 * r_cost * c.lam);
}

DinkelbachResult dinkelbach_optimal_n(const channel::FadingParams& p,
                                      const aggregate::LinkBudget& lb,
                                      const performance::PowerModel& pm,
                                      double bandwidth,
                                      const DinkelbachConfig& cfg) {
  check_dinkelbach(cfg);
  const EeCoefficients c = ee_coefficients(p, lb, pm, bandwidth);
  const double n_min = static_cast<double>(cfg.n_min);
  const double n_max = static_cast<double>(cfg.n_max);

  DinkelbachResult res;
  double n_cur = n_max;
  double ratio = ee_continuous(n_cur, EeRegime::LargeN, c);
  res.ratio_trace.push_back(ratio);

  // One ratio-improvement pass over a fixed branch of the objective.
  auto run_phase = [&](EeRegime regime) {
    for (int pass = 0; pass < cfg.t_max; ++pass) {
      ++res.iterations;
      const auto root = closed_form_n(ratio, regime, c);
      const double n_new =
          root ? std::clamp(*root, n_min, n_max) : n_min;
      const double r_new = ee_continuous(n_new, regime, c);
      n_cur = n_new;
      const bool done = std::abs(r_new - ratio) < cfg.epsilon;
      ratio = r_new;
      res.ratio_trace.push_back(r_new);
      if (done) return true;
    }
    return false;
  };

  bool converged = run_phase(EeRegime::LargeN);
  if (n_cur >= n_min && n_cur <= static_cast<double>(cfg.n_th)) {
    converged = run_phase(EeRegime::SmallN);
    if (n_cur > static_cast<double>(cfg.n_th))
      n_cur = static_cast<double>(cfg.n_th);
  }
  if (!converged)
    throw ConvergenceError(
        "ratio iteration did not settle within the iteration cap");

  int lo = std::clamp(static_cast<int>(std::floor(n_cur)), cfg.n_min,
                      cfg.n_max);
  int hi = std::clamp(static_cast<int>(std::ceil(n_cur)), cfg.n_min,
                      cfg.n_max);
  auto subproblem = [&](int n) {
    return cap_integer(n, cfg.n_th, c) - ratio * (c.p_fix + n * c.p_elem);
  };
  res.n_star = subproblem(lo) >= subproblem(hi) ? lo : hi;

  aggregate::LinkBudget chosen = lb;
  chosen.n = res.n_star;
  res.ee_star =
      performance::energy_efficiency(p, chosen, pm, bandwidth, cfg.n_th);
  return res;
}

ConstraintValues coverage_constraints(double r_u, double theta,
                                      const CoverageProblem& prob) {
  const CoverageTerms t = make_terms(prob);
  return constraint_values(r_u, theta, t, prob);
}

KktResiduals kkt_residuals(const CoverageProblem& prob,
                           const CoverageSolution& sol) {
  KktResiduals res;
  if (sol.active_case == CoverageCase::Infeasible) return res;
  const CoverageTerms t = make_terms(prob);
  const auto v = constraint_values(sol.r_u, sol.theta, t, prob);
  const auto g = g1_gradient(sol.r_u, sol.theta, t, prob.environment);
  const double rad = sol.theta * kDegToRad;
  const double tan_t = std::tan(rad);
  const double s = sol.r_u * (1.0 + tan_t * tan_t) * kDegToRad;
  const auto& w = sol.multipliers;
  const double st_r = 1.0 - w[0] * g.d_r + w[1] * tan_t - w[2] * tan_t;
  const double st_theta = -w[0] * g.d_theta + w[1] * s - w[2] * s;
  res.stationarity = std::max(std::abs(st_r), std::abs(st_theta));
  res.primal = std::max({v.g1, v.g2, v.g3, 0.0});
  res.dual = std::max(0.0, -*std::min_element(w.begin(), w.end()));
  res.complementarity = std::max(
      {std::abs(w[0] * v.g1), std::abs(w[1] * v.g2), std::abs(w[2] * v.g3)});
  return res;
}

CoverageSolution coverage_maximize(const CoverageProblem& prob) {
  const CoverageTerms t = make_terms(prob);
  const auto pts = scan_grid(t, prob, 1201);
  const int best = best_index(pts);
  if (best < 0) return CoverageSolution{};  // nothing feasible anywhere
  const auto& seed = pts[static_cast<std::size_t>(best)];

  CoverageSolution accepted{};
  bool have = false;
  for (const auto which :
       {CoverageCase::Interior, CoverageCase::AltitudeMin,
        CoverageCase::AltitudeMax}) {
    const auto cand = solve_case(which, t, prob, pts, seed);
    if (!cand) continue;
    const auto res = kkt_residuals(prob, *cand);
    if (res.stationarity > 1e-6 || res.primal > 1e-6 || res.dual > 1e-9 ||
        res.complementarity > 1e-6)
      continue;
    if (cand->r_u < seed.r * (1.0 - 1e-3)) continue;  // inferior KKT point
    if (!have || cand->r_u > accepted.r_u) {
      accepted = *cand;
      have = true;
    }
  }
  if (have) return accepted;
  CoverageSolution fallback = grid_solution(pts, prob);
  fallback.from_grid_fallback = true;
  return fallback;
}

CoverageSolution coverage_grid_oracle(const CoverageProblem& prob,
                                      int resolution) {
  if (resolution < 100)
    throw DomainError("grid resolution must be at least 100");
  const CoverageTerms t = make_terms(prob);
  return grid_solution(scan_grid(t, prob, resolution), prob);
}

}  // namespace rislink::optimize
