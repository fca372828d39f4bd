// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// Composite fading model for a single reflecting element: the envelope is
// h = X * Y with X an inverse-Nakagami shadowing factor (shape m_s) and Y a
// Nakagami multipath envelope (shape m). The squared envelope, suitably
// scaled, follows an F(2m, 2m_s) distribution. The Modified variant fixes the
// component mean powers so that E[h^2] = 1 exactly; the Conventional variant
// keeps a caller-supplied multipath mean power Omega (comparison baseline).
#pragma once

#include "rislink/numerics.hpp"

namespace rislink::channel {

enum class Variant { Modified, Conventional };

struct FadingParams {
  double m;        // multipath shape, > 0
  double m_s;      // shadowing shape, > 1
  double omega_m;  // multipath component mean power
  double omega_s;  // shadowed RMS-power scale
  Variant variant;
};

// Modified-variant parameters: omega_s^2 = m_s/(m_s-1), omega_m^2 =
// (m_s-1)/m_s, which forces mean_power == 1. Throws DomainError for m <= 0 or
// m_s <= 1.
FadingParams normalized_params(double m, double m_s);

// Conventional-variant parameters: omega_s = 1, omega_m = omega.
FadingParams conventional_params(double m, double m_s, double omega);

// Density of the composite envelope at h >= 0, evaluated in log space.
double envelope_pdf(double h, const FadingParams& p);

// Distribution function, via the regularized incomplete beta (the scaled
// squared envelope is F-distributed).
double envelope_cdf(double h, const FadingParams& p);

// E[h^k]; finite only for k < 2*m_s (DomainError otherwise).
double envelope_moment(const FadingParams& p, double k);

// E[h] = sqrt(m_s omega_m/(m omega_s)) B(m+1/2, m_s-1/2)/B(m, m_s).
double mean_envelope(const FadingParams& p);

// E[h^2] = m_s omega_m/((m_s-1) omega_s); exactly 1 for Modified params.
double mean_power(const FadingParams& p);

// VAR[h] = mean_power - mean_envelope^2.
double variance_envelope(const FadingParams& p);

// One composite draw: h = sqrt(c * G_m / G_s) with G_m ~ Gamma(m, 1),
// G_s ~ Gamma(m_s, 1), c = m_s omega_m / (m omega_s). Compositional rather
// than inverse-CDF, so it is independently checkable against the density.
double sample_envelope(const FadingParams& p, numerics::RandomSource& src);

}  // namespace rislink::channel
