// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0

#include "rislink/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rislink/errors.hpp"
#include "rislink/numerics.hpp"

namespace rislink::aggregate {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Truncation error allowed for the inversion integral (per evaluation).
constexpr double kCdfTailTol = 1e-7;
constexpr int kMaxSumSize = 128;
constexpr std::size_t kMaxTableNodes = 100000;

void check_budget(const LinkBudget& lb) {
  if (!(lb.p_s > 0.0) || !(lb.n_0 > 0.0)) {
    throw DomainError("powers must be positive");
  }
  if (!(lb.pl > 0.0)) throw DomainError("path loss must be positive");
  if (!(lb.gamma_th > 0.0)) throw DomainError("SNR threshold must be positive");
  if (lb.n < 1) throw DomainError("element count must be at least 1");
}

// Characteristic function of one element sampled on a uniform omega grid and
// stored in log-polar form: ln|phi| and the unwrapped phase interpolate well
// (both are smooth), whereas Re/Im oscillate. The n-th power is then exact
// up to interpolation error: phi^n = exp(n ln r) * e^{i n alpha}.
struct CfTable {
  numerics::CubicSpline ln_r;
  numerics::CubicSpline alpha;
  double omega_max = 0.0;
};

CfTable build_cf_table(const channel::FadingParams& p, int n) {
  const double mean_h = channel::mean_envelope(p);
  // Node spacing: fine enough that the phase moves well under a radian per
  // step (its slope is steepest at the origin, where it equals E[h]).
  const double step = std::min(0.025, 0.5 / mean_h);
  const double bound_target = kPi * kCdfTailTol * (2.0 * p.m * n);

  std::vector<double> xs{0.0}, lr{0.0}, al{0.0};
  double prev_angle = 0.0;
  while (true) {
    // Extend in chunks, then test the inversion-tail bound at the edge. The
    // |phi| ~ K omega^(-2m) decay only holds past the body of the
    // distribution, so require the edge to be well outside it too.
    for (int i = 0; i < 512; ++i) {
      const double w = (xs.size()) * step;
      const auto phi = char_fn_single(w, p);
      xs.push_back(w);
      lr.push_back(0.5 * std::log(std::norm(phi)));
      double ang = std::atan2(phi.imag(), phi.real());
      while (ang - prev_angle > kPi) ang -= 2.0 * kPi;
      while (ang - prev_angle < -kPi) ang += 2.0 * kPi;
      al.push_back(ang);
      prev_angle = ang;
    }
    double edge_r = 0.0;
    for (std::size_t i = xs.size() - 8; i < xs.size(); ++i) {
      edge_r = std::max(edge_r, std::exp(lr[i]));
    }
    const bool past_body = xs.back() * mean_h > 8.0;
    if (past_body && std::pow(edge_r, n) <= bound_target) break;
    if (xs.size() > kMaxTableNodes) {
      throw AccuracyError(
          "characteristic function decays too slowly for inversion at this "
          "shape parameter",
          std::pow(edge_r, n) / (2.0 * p.m * n));
    }
  }
  CfTable t;
  // Clamped left ends: |phi| is flat at omega = 0 and the phase grows with
  // slope E[h] there.
  t.omega_max = xs.back();
  t.ln_r = numerics::CubicSpline(xs, lr, 0.0);
  t.alpha = numerics::CubicSpline(std::move(xs), std::move(al), mean_h);
  return t;
}

double gil_pelaez_cdf(double a, const CfTable& t, int n, double clamp_tol) {
  if (a <= 0.0) return 0.0;
  numerics::QuadratureSpec spec;
  spec.abs_tol = 1e-8;
  spec.rel_tol = 1e-8;
  auto magnitude = [&](double w) {
    const double e = n * t.ln_r(w);
    return e < -745.0 ? 0.0 : std::exp(e);
  };
  // Im(e^{-i w a} phi^n) = Im(phi^n) cos(wa) - Re(phi^n) sin(wa); both halves
  // are damped-oscillatory with kernel frequency a.
  auto f_im = [&](double w) {
    if (w >= t.omega_max) return 0.0;
    const double r = magnitude(w);
    return r == 0.0 ? 0.0 : r * std::sin(n * t.alpha(w)) / w;
  };
  auto f_re = [&](double w) {
    if (w >= t.omega_max) return 0.0;
    const double r = magnitude(w);
    return r == 0.0 ? 0.0 : r * std::cos(n * t.alpha(w)) / w;
  };
  const double part_im =
      numerics::integrate_oscillatory(f_im, a, spec, numerics::OscKernel::Cosine);
  const double part_re =
      numerics::integrate_oscillatory(f_re, a, spec, numerics::OscKernel::Sine);
  const double cdf = 0.5 - (part_im - part_re) / kPi;
  if (cdf < -clamp_tol || cdf > 1.0 + clamp_tol) {
    throw AccuracyError("inverted distribution value left [0,1]", cdf);
  }
  return std::clamp(cdf, 0.0, 1.0);
}

}  // namespace

double gamma0(const LinkBudget& lb) {
  check_budget(lb);
  return lb.p_s / lb.n_0;
}

std::complex<double> char_fn_single(double omega,
                                    const channel::FadingParams& p) {
  if (omega < 0.0) return std::conj(char_fn_single(-omega, p));
  if (omega == 0.0) return {1.0, 0.0};
  numerics::QuadratureSpec spec;
  spec.abs_tol = 1e-9;
  spec.rel_tol = 1e-8;
  auto pdf = [&](double h) { return channel::envelope_pdf(h, p); };
  const double re = numerics::integrate_oscillatory(
      pdf, omega, spec, numerics::OscKernel::Cosine);
  const double im = numerics::integrate_oscillatory(
      pdf, omega, spec, numerics::OscKernel::Sine);
  return {re, im};
}

std::complex<double> char_fn_sum(double omega, const channel::FadingParams& p,
                                 int n) {
  if (n < 1) throw DomainError("element count must be at least 1");
  return std::pow(char_fn_single(omega, p), n);
}

double mgf_envelope(double t, const channel::FadingParams& p) {
  numerics::QuadratureSpec spec;
  auto f = [&](double h) { return std::exp(t * h) * channel::envelope_pdf(h, p); };
  if (t <= 0.0) return numerics::integrate(f, 0.0, kInf, spec);
  // For t > 0 the exponential eventually beats the power-law tail and the
  // integrand turns back up. Its minimum sits at (2 m_s + 1)/t; cut there,
  // provided the dip actually reaches quadrature noise (otherwise the
  // truncation bias would be visible and the value is not trustworthy).
  const double cut = (2.0 * p.m_s + 1.0) / t;
  if (f(cut) > spec.abs_tol) {
    throw AccuracyError("mgf integrand never falls below tolerance", f(cut));
  }
  return numerics::integrate(f, 0.0, cut, spec);
}

double exact_cdf_A(double a, const channel::FadingParams& p, int n) {
  return exact_cdf_A(std::vector<double>{a}, p, n).front();
}

std::vector<double> exact_cdf_A(const std::vector<double>& a,
                                const channel::FadingParams& p, int n) {
  if (n < 1 || n > kMaxSumSize) {
    throw DomainError("inversion supports 1 <= n <= 128 elements");
  }
  const CfTable table = build_cf_table(p, n);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = gil_pelaez_cdf(a[i], table, n, 5e-3);
  }
  return out;
}

CltMoments clt_moments(const channel::FadingParams& p, int n) {
  if (n < 1) throw DomainError("element count must be at least 1");
  return {n * channel::mean_envelope(p), n * channel::variance_envelope(p)};
}

double clt_cdf_A(double a, const channel::FadingParams& p, int n) {
  const auto mo = clt_moments(p, n);
  return numerics::gauss_q((mo.mu_a - a) / std::sqrt(mo.sigma2_a));
}

double expected_A_sq(const channel::FadingParams& p, int n,
                     SecondMomentMethod method) {
  if (n < 1) throw DomainError("element count must be at least 1");
  if (method == SecondMomentMethod::MomentIdentity) {
    const double mean = channel::mean_envelope(p);
    return n * channel::envelope_moment(p, 2.0) +
           double(n) * (n - 1) * mean * mean;
  }
  // d^2/dt^2 of mgf^n at 0. The step shrinks with the sum mean so the
  // stencil stays inside the region where the truncated MGF is faithful.
  const double step = 1e-2 / (1.0 + n * channel::mean_envelope(p));
  return numerics::derivative2(
      [&](double t) { return std::pow(mgf_envelope(t, p), n); }, 0.0, step);
}

SnrExpectation snr_expectation_bounds(const channel::FadingParams& p,
                                      const LinkBudget& lb) {
  const double g0 = gamma0(lb);
  const double mean = channel::mean_envelope(p);
  const double ma = lb.n * mean;
  return {g0 * ma * ma / lb.pl,
          g0 * expected_A_sq(p, lb.n, SecondMomentMethod::MomentIdentity) /
              lb.pl,
          g0 * double(lb.n) * lb.n * channel::envelope_moment(p, 2.0) / lb.pl};
}

double snr_expectation_clt(const channel::FadingParams& p,
                           const LinkBudget& lb) {
  const double g0 = gamma0(lb);
  const auto mo = clt_moments(p, lb.n);
  return g0 * (mo.mu_a * mo.mu_a + mo.sigma2_a) / lb.pl;
}

double outage_clt(const channel::FadingParams& p, const LinkBudget& lb) {
  const double g0 = gamma0(lb);
  return clt_cdf_A(std::sqrt(lb.pl * lb.gamma_th / g0), p, lb.n);
}

double outage_upper_bound(const channel::FadingParams& p,
                          const LinkBudget& lb) {
  const double g0 = gamma0(lb);
  const double nm = lb.n * p.m;
  const double ln_pref =
      std::log(2.0) + p.m * std::log(p.m * p.omega_s / (p.m_s * p.omega_m)) +
      numerics::ln_gamma(2.0 * p.m) - numerics::ln_beta(p.m, p.m_s);
  const double ln_val = lb.n * ln_pref +
                        nm * std::log(lb.gamma_th * lb.pl / g0) -
                        std::log(2.0 * nm) - numerics::ln_gamma(2.0 * nm);
  return std::exp(ln_val);
}

}  // namespace rislink::aggregate
