// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// Link-level performance: achievable rate estimates over the combined
// channel and the energy-efficiency objective built from them. Rates use
// log base 2 (bit/s); powers are watts.
#pragma once

#include <cstdint>

#include "rislink/aggregate.hpp"
#include "rislink/channel.hpp"

namespace rislink::performance {

struct PowerModel {
  double upsilon = 1.1;  // power-amplifier efficiency factor
  double p_c = 50.0;     // static circuit power, W
  double p_h = 1500.0;   // hovering power, W
  double p_r_b = 0.078;  // per-element reflecting power at resolution b, W
  double p_f = 1e-3;     // per-element phase-shift control power, W
};

// (1/upsilon) p_s + p_c + p_h + n (p_r_b + p_f).
double total_power(const PowerModel& pm, double p_s, int n);

enum class CapacityMethod {
  MonteCarlo,          // sample average of log2(1 + gamma)
  SmallN_LowerBoundE,  // log2(1 + gamma0 (n E[h])^2 / PL): mean-only SNR
  LargeN_Clt,          // log2(1 + gamma0 (mu^2 + sigma^2) / PL)
  Exact,               // log2(1 + gamma0 E[A^2] / PL)
};

struct CapacityEstimate {
  double value;       // bit/s
  double half_width;  // 95% interval, 0 for the deterministic methods
  CapacityMethod method;
};

// bandwidth * E[log2(1 + gamma)] by seeded simulation.
CapacityEstimate average_capacity_mc(const channel::FadingParams& p,
                                     const aggregate::LinkBudget& lb,
                                     double bandwidth, std::uint64_t trials,
                                     std::uint64_t seed, int workers = 1);

// bandwidth * log2(1 + E-route SNR): moves the expectation inside the log,
// so it upper-bounds the Monte Carlo mean for Exact/LargeN_Clt. The method
// selects which SNR expectation is used; MonteCarlo is rejected here.
CapacityEstimate average_capacity_jensen(const channel::FadingParams& p,
                                         const aggregate::LinkBudget& lb,
                                         double bandwidth,
                                         CapacityMethod method);

// Capacity-per-watt objective, bit/s/W (= bit/J). Uses the mean-only SNR for
// n <= n_th and the variance-corrected form above it, matching the regime
// split of the element-count optimizer.
double energy_efficiency(const channel::FadingParams& p,
                         const aggregate::LinkBudget& lb,
                         const PowerModel& pm, double bandwidth,
                         int n_th = 50);

}  // namespace rislink::performance
