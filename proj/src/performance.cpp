// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0

#include "rislink/performance.hpp"

#include <cmath>

#include "rislink/errors.hpp"
#include "rislink/montecarlo.hpp"

namespace rislink::performance {

namespace {

void check_model(const PowerModel& pm) {
  if (!(pm.upsilon > 0.0)) throw DomainError("amplifier factor must be positive");
  if (pm.p_c < 0.0 || pm.p_h < 0.0 || pm.p_r_b < 0.0 || pm.p_f < 0.0) {
    throw DomainError("component powers must be nonnegative");
  }
}

void check_bandwidth(double bandwidth) {
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
}

constexpr double kLn2 = 0.69314718055994530942;

}  // namespace

double total_power(const PowerModel& pm, double p_s, int n) {
  check_model(pm);
  if (!(p_s > 0.0)) throw DomainError("transmit power must be positive");
  if (n < 1) throw DomainError("element count must be at least 1");
  return p_s / pm.upsilon + pm.p_c + pm.p_h + n * (pm.p_r_b + pm.p_f);
}

CapacityEstimate average_capacity_mc(const channel::FadingParams& p,
                                     const aggregate::LinkBudget& lb,
                                     double bandwidth, std::uint64_t trials,
                                     std::uint64_t seed, int workers) {
  check_bandwidth(bandwidth);
  const double scale = aggregate::gamma0(lb) / lb.pl;
  const int n = lb.n;
  const auto rep = montecarlo::mc_mean(
      [&p, scale, n](numerics::RandomSource& src) {
        double a = 0.0;
        for (int k = 0; k < n; ++k) a += channel::sample_envelope(p, src);
        return std::log1p(scale * a * a) / kLn2;
      },
      trials, seed, workers);
  return {bandwidth * rep.estimate, bandwidth * rep.half_width_95,
          CapacityMethod::MonteCarlo};
}

CapacityEstimate average_capacity_jensen(const channel::FadingParams& p,
                                         const aggregate::LinkBudget& lb,
                                         double bandwidth,
                                         CapacityMethod method) {
  check_bandwidth(bandwidth);
  double snr = 0.0;
  switch (method) {
    case CapacityMethod::SmallN_LowerBoundE:
      snr = aggregate::snr_expectation_bounds(p, lb).lower;
      break;
    case CapacityMethod::LargeN_Clt:
      snr = aggregate::snr_expectation_clt(p, lb);
      break;
    case CapacityMethod::Exact:
      snr = aggregate::snr_expectation_bounds(p, lb).exact;
      break;
    case CapacityMethod::MonteCarlo:
      throw DomainError("MonteCarlo is not a closed-form capacity method");
  }
  return {bandwidth * std::log2(1.0 + snr), 0.0, method};
}

double energy_efficiency(const channel::FadingParams& p,
                         const aggregate::LinkBudget& lb,
                         const PowerModel& pm, double bandwidth, int n_th) {
  const auto method = lb.n <= n_th ? CapacityMethod::SmallN_LowerBoundE
                                   : CapacityMethod::LargeN_Clt;
  const auto cap = average_capacity_jensen(p, lb, bandwidth, method);
  return cap.value / total_power(pm, lb.p_s, lb.n);
}

}  // namespace rislink::performance
