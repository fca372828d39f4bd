// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0

#include "rislink/channel.hpp"

#include <cmath>

#include "rislink/errors.hpp"

namespace rislink::channel {

namespace {

void check_shapes(double m, double m_s) {
  if (!(m > 0.0)) throw DomainError("multipath shape m must be positive");
  // m_s = 1 makes the mean shadowing power (and every envelope moment of
  // order >= 2) blow up; the model is only defined above it.
  if (!(m_s > 1.0)) throw DomainError("shadowing shape m_s must exceed 1");
}

// Scale inside the gamma-ratio sampler and the moment formula.
double moment_scale(const FadingParams& p) {
  return p.m_s * p.omega_m / (p.m * p.omega_s);
}

}  // namespace

FadingParams normalized_params(double m, double m_s) {
  check_shapes(m, m_s);
  return FadingParams{m, m_s, std::sqrt((m_s - 1.0) / m_s),
                      std::sqrt(m_s / (m_s - 1.0)), Variant::Modified};
}

FadingParams conventional_params(double m, double m_s, double omega) {
  check_shapes(m, m_s);
  if (!(omega > 0.0)) throw DomainError("mean power omega must be positive");
  return FadingParams{m, m_s, omega, 1.0, Variant::Conventional};
}

double envelope_pdf(double h, const FadingParams& p) {
  if (h < 0.0) throw DomainError("envelope must be nonnegative");
  const double a = p.m * p.omega_s;
  const double b = p.m_s * p.omega_m;
  if (h == 0.0) {
    // (2m-1) ln h is -inf, 0, or +inf depending on m; resolve by hand so the
    // exp() below never sees NaN from 0 * inf.
    if (p.m > 0.5) return 0.0;
    if (p.m < 0.5) return std::numeric_limits<double>::infinity();
    return std::exp(0.5 * std::log(a) + (p.m_s - 0.5) * std::log(b) +
                    std::log(2.0) - numerics::ln_beta(p.m, p.m_s) -
                    (0.5 + p.m_s) * std::log(b));
  }
  const double ln_f = std::log(2.0) + p.m * std::log(a) +
                      p.m_s * std::log(b) + (2.0 * p.m - 1.0) * std::log(h) -
                      numerics::ln_beta(p.m, p.m_s) -
                      (p.m + p.m_s) * std::log(a * h * h + b);
  return std::exp(ln_f);
}

double envelope_cdf(double h, const FadingParams& p) {
  if (h < 0.0) throw DomainError("envelope must be nonnegative");
  if (h == 0.0) return 0.0;
  const double u = p.m * p.omega_s * h * h;
  const double x = u / (u + p.m_s * p.omega_m);
  return numerics::reg_inc_beta(p.m, p.m_s, x);
}

double envelope_moment(const FadingParams& p, double k) {
  if (!(k > -2.0 * p.m)) throw DomainError("moment order too negative");
  if (!(k < 2.0 * p.m_s))
    throw DomainError("moment of order k is infinite unless k < 2 m_s");
  const double half = 0.5 * k;
  return std::pow(moment_scale(p), half) *
         std::exp(numerics::ln_beta(p.m + half, p.m_s - half) -
                  numerics::ln_beta(p.m, p.m_s));
}

double mean_envelope(const FadingParams& p) { return envelope_moment(p, 1.0); }

double mean_power(const FadingParams& p) {
  if (p.variant == Variant::Modified) return 1.0;  // exact by construction
  return p.m_s * p.omega_m / ((p.m_s - 1.0) * p.omega_s);
}

double variance_envelope(const FadingParams& p) {
  const double mu = mean_envelope(p);
  return mean_power(p) - mu * mu;
}

double sample_envelope(const FadingParams& p, numerics::RandomSource& src) {
  const double g_m = src.gamma(p.m, 1.0);
  const double g_s = src.gamma(p.m_s, 1.0);
  return std::sqrt(moment_scale(p) * g_m / g_s);
}

}  // namespace rislink::channel
