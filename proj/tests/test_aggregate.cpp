// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rislink/aggregate.hpp"
#include "rislink/channel.hpp"
#include "rislink/errors.hpp"
#include "test_support.hpp"

using namespace rislink;
using namespace rislink::aggregate;
using testsupport::close_abs;
using testsupport::close_rel;

namespace {
// Composite loss for z_c=1000 m, h=100 m, theta=45 deg at the default
// carrier; pinned once here so link budgets are reproducible.
const double kPl = 81716990992285.17;

channel::FadingParams ref_params() { return channel::normalized_params(2.0, 2.5); }
}  // namespace

TEST_CASE("single-element characteristic function at pinned points") {
  const auto p = ref_params();
  const auto c03 = char_fn_single(0.3, p);
  CHECK(close_abs(c03.real(), 0.9562730648105212, 1e-7));
  CHECK(close_abs(c03.imag(), 0.25286149682448605, 1e-7));
  const auto c1 = char_fn_single(1.0, p);
  CHECK(close_abs(c1.real(), 0.6058889524809226, 1e-7));
  CHECK(close_abs(c1.imag(), 0.6662411335807671, 1e-7));
  const auto c5 = char_fn_single(5.0, p);
  CHECK(close_abs(c5.real(), -0.27147621549650125, 1e-7));
  CHECK(close_abs(c5.imag(), -0.02804227660835085, 1e-7));

  CHECK(char_fn_single(0.0, p) == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(c1) < 1.0);
  // Conjugate symmetry for negative frequencies.
  const auto cm = char_fn_single(-1.0, p);
  CHECK(cm == std::conj(c1));
}

TEST_CASE("sum characteristic function is the n-th power") {
  const auto p = ref_params();
  const auto c5 = char_fn_sum(0.7, p, 5);
  CHECK(close_abs(c5.real(), -0.7480756649803082, 1e-7));
  CHECK(close_abs(c5.imag(), 0.13388667709675273, 1e-7));

  CHECK(char_fn_sum(1.3, p, 1) == char_fn_single(1.3, p));
  const double r1 = std::abs(char_fn_single(1.0, p));
  CHECK(close_rel(std::abs(char_fn_sum(1.0, p, 8)), std::pow(r1, 8), 1e-9));
  CHECK_THROWS_AS(char_fn_sum(1.0, p, 0), DomainError);
}

TEST_CASE("truncated-domain MGF") {
  const auto p = ref_params();
  CHECK(close_rel(mgf_envelope(-0.1, p), 0.9181432897574838, 1e-8));
  CHECK(close_rel(mgf_envelope(-0.02, p), 0.9828773557719864, 1e-8));
  CHECK(close_rel(mgf_envelope(0.02, p), 1.0175227038375296, 1e-8));
  CHECK(close_abs(mgf_envelope(0.0, p), 1.0, 1e-9));
  // Far from the origin the positive-argument integrand never dies out.
  CHECK_THROWS_AS(mgf_envelope(5.0, p), AccuracyError);
}

TEST_CASE("inversion CDF matches the independent oracle") {
  const auto p = ref_params();
  struct Case { double t; int n; double want; };
  const Case cases[] = {
      {0.9, 2, 0.062066256771820094},
      {1.7320508075688772, 2, 0.5809005756517374},
      {2.8, 2, 0.9285925593045994},
      {3.2, 5, 0.13292802423517924},
      {4.330127018922193, 5, 0.5577177094488497},
      {5.6, 5, 0.8803762867361289},
      {7.2, 10, 0.16932854116524626},
      {8.660254037844386, 10, 0.5438797650479696},
      {10.2, 10, 0.8471015918119209},
  };
  for (const auto& c : cases) {
    CHECK(close_abs(exact_cdf_A(c.t, p, c.n), c.want, 1e-5));
  }
}

TEST_CASE("inversion at n = 1 reproduces the closed-form CDF") {
  const auto p = ref_params();
  const std::vector<double> ts{0.7, 1.4};
  const auto got = exact_cdf_A(ts, p, 1);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(close_abs(got[i], channel::envelope_cdf(ts[i], p), 1e-5));
  }
}

TEST_CASE("batch inversion: consistency, monotonicity, guards") {
  const auto p = ref_params();
  std::vector<double> ts;
  for (double t = 0.4; t <= 4.4; t += 0.25) ts.push_back(t);
  const auto batch = exact_cdf_A(ts, p, 2);
  for (std::size_t i = 1; i < batch.size(); ++i) {
    CHECK(batch[i] >= batch[i - 1] - 1e-9);
  }
  CHECK(close_abs(batch.front(), exact_cdf_A(ts.front(), p, 2), 1e-12));

  CHECK(exact_cdf_A(0.0, p, 3) == 0.0);
  CHECK(exact_cdf_A(-1.0, p, 3) == 0.0);
  CHECK_THROWS_AS(exact_cdf_A(1.0, p, 0), DomainError);
  CHECK_THROWS_AS(exact_cdf_A(1.0, p, 129), DomainError);
}

TEST_CASE("normal-approximation moments and CDF") {
  const auto p = ref_params();
  const auto mo = clt_moments(p, 12);
  CHECK(close_rel(mo.mu_a, 12.0 * 0.86602540378443865, 1e-14));
  CHECK(close_rel(mo.sigma2_a, 12.0 * 0.25, 1e-12));

  CHECK(clt_cdf_A(mo.mu_a, p, 12) == 0.5);
  CHECK(clt_cdf_A(mo.mu_a + 1.7320508075688772, p, 12) ==
        doctest::Approx(1.0 - 0.15865525393145705).epsilon(1e-12));
  CHECK(clt_cdf_A(2.0, p, 12) < clt_cdf_A(3.0, p, 12));
}

TEST_CASE("normal approximation tightens as the sum grows") {
  const auto p = ref_params();
  double prev_sup = 1.0;
  for (int n : {2, 5, 10}) {
    const auto mo = clt_moments(p, n);
    const double sd = std::sqrt(mo.sigma2_a);
    std::vector<double> ts;
    for (int i = -16; i <= 16; ++i) {
      const double t = mo.mu_a + 0.25 * i * sd;
      if (t > 0.05) ts.push_back(t);
    }
    const auto exact = exact_cdf_A(ts, p, n);
    double sup = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      sup = std::max(sup, std::abs(exact[i] - clt_cdf_A(ts[i], p, n)));
    }
    CHECK(sup < prev_sup);
    prev_sup = sup;
  }
  // Even at n = 10 the normal approximation is visibly off; the inversion is
  // the reference in this regime.
  CHECK(prev_sup > 5e-3);
}

TEST_CASE("second moment of the sum: identity and MGF routes") {
  const auto p = ref_params();
  CHECK(close_rel(expected_A_sq(p, 10, SecondMomentMethod::MomentIdentity),
                  77.5, 1e-13));
  CHECK(close_rel(expected_A_sq(p, 1, SecondMomentMethod::MomentIdentity),
                  1.0, 1e-13));
  for (int n : {1, 5, 20}) {
    const double ident = expected_A_sq(p, n, SecondMomentMethod::MomentIdentity);
    const double mgf = expected_A_sq(p, n, SecondMomentMethod::MgfDerivative);
    CHECK(close_rel(mgf, ident, 1e-4));
  }
}

TEST_CASE("SNR expectation bracket at pinned link budgets") {
  const auto p = ref_params();
  const double p_s = std::pow(10.0, 5.3) / 1000.0;  // 53 dBm in watts
  for (const auto& [n, lo, ex, up] :
       {std::tuple{10, 183.12553093981853, 189.22971530447916,
                   244.16737458642476},
        std::tuple{100, 18312.553093981856, 18373.59493762846,
                   24416.737458642474}}) {
    const LinkBudget lb{p_s, 1e-12, n, 10.0, kPl};
    const auto se = snr_expectation_bounds(p, lb);
    CHECK(close_rel(se.lower, lo, 1e-12));
    CHECK(close_rel(se.exact, ex, 1e-12));
    CHECK(close_rel(se.upper, up, 1e-12));
    CHECK(se.lower < se.exact);
    CHECK(se.exact < se.upper);
    // The CLT-moment assembly is the same number by algebra.
    CHECK(close_rel(snr_expectation_clt(p, lb), se.exact, 1e-12));
  }
  // Relative width of the lower gap is 1/(1+3n) at these shape parameters.
  for (int n : {4, 8, 16}) {
    const LinkBudget lb{p_s, 1e-12, n, 10.0, kPl};
    const auto se = snr_expectation_bounds(p, lb);
    CHECK(close_rel((se.exact - se.lower) / se.exact, 1.0 / (1.0 + 3.0 * n),
                    1e-10));
  }
  CHECK_THROWS_AS(gamma0(LinkBudget{0.0, 1e-12, 4, 10.0, kPl}), DomainError);
  CHECK_THROWS_AS(gamma0(LinkBudget{1.0, 1e-12, 0, 10.0, kPl}), DomainError);
}

TEST_CASE("outage under the normal approximation") {
  const auto p25 = channel::normalized_params(2.5, 2.5);
  const LinkBudget lb{0.35, 1e-12, 70, 10.0, kPl};
  CHECK(close_rel(outage_clt(p25, lb), 0.0005948523850545887, 1e-12));

  // More transmit power can only help.
  const LinkBudget stronger{0.70, 1e-12, 70, 10.0, kPl};
  CHECK(outage_clt(p25, stronger) < outage_clt(p25, lb));
}

TEST_CASE("closed-form outage upper bound") {
  const auto p = ref_params();
  const LinkBudget lb3{1e5, 1e-12, 3, 10.0, kPl};  // gamma0 = 1e17
  CHECK(close_rel(outage_upper_bound(p, lb3), 4.0433147673581763e-15, 1e-12));

  const auto p15 = channel::normalized_params(1.5, 2.0);
  const LinkBudget lb2{1e4, 1e-12, 2, 10.0, kPl};  // gamma0 = 1e16
  CHECK(close_rel(outage_upper_bound(p15, lb2), 0.0005755206333978738, 1e-12));

  // Pure power law: two points two decades apart pin the diversity order.
  for (const auto& [n, m] : {std::pair{3, 2.0}, {5, 1.0}, {10, 2.5}}) {
    const auto pp = channel::normalized_params(m, 2.5);
    const LinkBudget a{1e4, 1e-12, n, 10.0, kPl};
    const LinkBudget b{1e6, 1e-12, n, 10.0, kPl};
    const double slope = std::log(outage_upper_bound(pp, b) /
                                  outage_upper_bound(pp, a)) /
                         std::log(100.0);
    CHECK(close_abs(slope, -n * m, 1e-10));
  }
}

TEST_CASE("normal-approximation outage approaches the bound from below") {
  const auto p = ref_params();
  const int n = 3;
  // Position the two-decade sweep to end where the bound reaches 1.
  const LinkBudget ref{1.0, 1e-12, n, 10.0, kPl};
  const double g_star =
      gamma0(ref) * std::pow(outage_upper_bound(p, ref), 1.0 / (n * p.m));
  double prev_ratio = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double g = g_star * std::pow(10.0, -2.0 + 0.1 * i);
    const LinkBudget lb{g * 1e-12, 1e-12, n, 10.0, kPl};
    const double ratio = outage_clt(p, lb) / outage_upper_bound(p, lb);
    CHECK(ratio < 1.0);
    CHECK(ratio > prev_ratio);
    prev_ratio = ratio;
  }
}
