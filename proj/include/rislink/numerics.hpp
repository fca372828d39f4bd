// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// Foundation layer: special functions, adaptive quadrature (plain and
// damped-oscillatory), numerical differentiation, root finding, and the
// seedable random source every stochastic component draws from.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace rislink::numerics {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  // Hard cap used in place of an infinite upper limit; the integrator stops
  // extending the domain earlier once the integrand has died out.
  double truncation_point = 1e6;
};

struct RootSpec {
  double tolerance = 1e-12;  // residual norm target
  int max_iterations = 200;
};

// ln Gamma(x), x > 0. Relative error <= 1e-12. Throws DomainError otherwise.
double ln_gamma(double x);

// ln B(a,b) = ln_gamma(a) + ln_gamma(b) - ln_gamma(a+b).
double ln_beta(double a, double b);

// Gaussian tail Q(x) = 0.5 erfc(x/sqrt(2)).
double gauss_q(double x);

// Inverse of gauss_q on (0,1): rational approximation polished by Newton.
// Round-trips with gauss_q to better than 1e-9 over [-6, 6].
double gauss_q_inverse(double p);

// Regularized incomplete beta I_x(a,b) via the Lentz continued fraction.
// Used for the composite-envelope CDF and the F-distribution cross-checks.
double reg_inc_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a), a > 0,
// x >= 0. Series for x < a+1, continued fraction otherwise.
double reg_lower_gamma(double a, double x);

// Adaptive Gauss-Kronrod 7-15 over [lower, upper]. upper may be
// +infinity, in which case the domain grows in blocks until the integrand
// falls below abs_tol/100 (or truncation_point is reached). Integrable
// endpoint singularities are fine: all nodes are interior.
// Throws AccuracyError (carrying the partial estimate) if the subdivision
// budget runs out before the tolerance is met.
double integrate(const std::function<double(double)>& f, double lower,
                 double upper, const QuadratureSpec& spec = {});

enum class OscKernel { Sine, Cosine };

// Computes  integral_0^inf f(w) * kernel(nu * w) dw  by partitioning at the
// kernel zero crossings, integrating each half-period adaptively, and
// Euler-accelerating the alternating tail when the envelope decays slowly.
// nu == 0 degenerates to plain integrate(f, 0, inf).
double integrate_oscillatory(const std::function<double(double)>& f, double nu,
                             const QuadratureSpec& spec = {},
                             OscKernel kernel = OscKernel::Sine);

// 5-point central second derivative, O(step^4). step <= 0 selects the
// default 1e-3 * (|x| + 1).
double derivative2(const std::function<double(double)>& f, double x,
                   double step = 0.0);

// Brent's method on a bracketing interval [lo, hi] (f must change sign).
// Returns x with |f(x)| <= spec.tolerance. Throws ConvergenceError if the
// bracket is invalid or the iteration budget is exhausted.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const RootSpec& spec = {});

// Damped Newton with a finite-difference Jacobian and backtracking line
// search. Returns x with ||F(x)||_inf <= spec.tolerance.
std::vector<double> find_root_system(
    const std::function<std::vector<double>(const std::vector<double>&)>& F,
    const std::vector<double>& start, const RootSpec& spec = {});

// Deterministic uniform/gamma source. Distinct seeds give independent
// streams by construction (the engine is re-seeded through a mixing
// function, see derive()).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  double uniform();                      // U(0,1)
  double gamma(double shape, double scale);

  // Child stream for worker/chunk `index`; stable under any partitioning of
  // work across threads.
  RandomSource derive(std::uint64_t index) const;

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Incremental natural cubic spline with an optional clamped left endpoint
// (known first derivative). Supports only evaluation inside [x_front, x_back].
class CubicSpline {
 public:
  CubicSpline() = default;
  // x strictly increasing, same length as y (>= 3 points).
  CubicSpline(std::vector<double> x, std::vector<double> y);
  CubicSpline(std::vector<double> x, std::vector<double> y, double left_deriv);

  double operator()(double xq) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  void build(bool clamp_left, double left_deriv);
  std::vector<double> x_, y_, y2_;
};

}  // namespace rislink::numerics
