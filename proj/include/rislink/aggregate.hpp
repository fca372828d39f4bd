// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// Statistics of the combined envelope A = sum of n i.i.d. composite fading
// envelopes (one per reflecting element, ideal phase alignment). Exact
// distribution values come from characteristic-function inversion; a normal
// approximation and closed-form moment bounds cover the regimes where the
// inversion is unnecessary or infeasible.
#pragma once

#include <complex>
#include <vector>

#include "rislink/channel.hpp"

namespace rislink::aggregate {

// Everything the SNR-level statistics need besides the fading law. Powers in
// watts, path loss linear.
struct LinkBudget {
  double p_s;       // transmit power
  double n_0;       // noise power
  int n;            // reflecting element count
  double gamma_th;  // SNR threshold (linear)
  double pl;        // two-hop path loss (linear)
};

struct CltMoments {
  double mu_a;      // n E[h]
  double sigma2_a;  // n VAR[h]
};

// Routes for E[A^2]: the exact moment identity n E[h^2] + n(n-1) E[h]^2, or
// the second derivative of the (domain-truncated) MGF raised to the n-th
// power. The latter exists as an independent cross-check of the former.
enum class SecondMomentMethod { MomentIdentity, MgfDerivative };

struct SnrExpectation {
  double lower;  // from E[A]^2  (Jensen direction)
  double exact;  // from E[A^2]
  double upper;  // from n^2 E[h^2]
};

// Transmit SNR before fading and path loss, p_s / n_0.
double gamma0(const LinkBudget& lb);

// E[exp(j omega h)] for one element. Conjugate-symmetric in omega.
std::complex<double> char_fn_single(double omega,
                                    const channel::FadingParams& p);

// E[exp(j omega A)] = char_fn_single(omega)^n, n >= 1.
std::complex<double> char_fn_sum(double omega, const channel::FadingParams& p,
                                 int n);

// E[exp(t h)] over a truncated domain: the composite envelope has a
// power-law tail, so the untruncated integral diverges for every t > 0. The
// domain is cut where the integrand first falls below quadrature noise,
// which leaves a bias far below the quadrature tolerance for |t| << 1.
double mgf_envelope(double t, const channel::FadingParams& p);

// P(A <= a) by numerical inversion of char_fn_sum, 1 <= n <= 128. Values
// outside [0,1] by more than 5e-3 raise AccuracyError; smaller excursions
// are clamped. The batch overload shares one characteristic-function table
// across all points, which is the intended way to evaluate a grid.
double exact_cdf_A(double a, const channel::FadingParams& p, int n);
std::vector<double> exact_cdf_A(const std::vector<double>& a,
                                const channel::FadingParams& p, int n);

CltMoments clt_moments(const channel::FadingParams& p, int n);

// Normal approximation P(A <= a) with clt_moments.
double clt_cdf_A(double a, const channel::FadingParams& p, int n);

double expected_A_sq(const channel::FadingParams& p, int n,
                     SecondMomentMethod method = SecondMomentMethod::MomentIdentity);

// E[gamma] = gamma0 E[A^2] / PL with its two closed-form brackets.
SnrExpectation snr_expectation_bounds(const channel::FadingParams& p,
                                      const LinkBudget& lb);

// Same expectation assembled from the normal-approximation moments;
// algebraically identical to the exact route (mu^2 + sigma^2 = E[A^2]).
double snr_expectation_clt(const channel::FadingParams& p,
                           const LinkBudget& lb);

// P(gamma < gamma_th) under the normal approximation of A.
double outage_clt(const channel::FadingParams& p, const LinkBudget& lb);

// Closed-form high-SNR upper bound on the outage probability; decays as
// gamma0^(-n m) and is evaluated in log space to survive extreme SNR.
double outage_upper_bound(const channel::FadingParams& p,
                          const LinkBudget& lb);

}  // namespace rislink::aggregate
