// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo oracle for everything the analytic layers claim. Work
// is split into fixed-size chunks; each chunk reseeds from the base seed and
// its own index, and chunk results are reduced in index order. Output is
// therefore bit-identical for any worker count, serial or OpenMP.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rislink/aggregate.hpp"
#include "rislink/channel.hpp"
#include "rislink/numerics.hpp"

namespace rislink::montecarlo {

struct McReport {
  double estimate = 0.0;
  double half_width_95 = 0.0;  // normal-theory 95% half interval
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  // Set when the effective event count is too small for the interval to be
  // trusted (rare events).
  bool low_confidence = false;
};

// Mean of an arbitrary functional of the random source. value_fn must draw
// all randomness it needs from the supplied source and nothing else.
McReport mc_mean(const std::function<double(numerics::RandomSource&)>& value_fn,
                 std::uint64_t trials, std::uint64_t seed, int workers = 1);

// Empirical CDF of A = sum of n envelopes at each query point, from one
// shared set of `trials` draws. Event counts are integers, so the reduction
// is exact. Points need not be sorted.
std::vector<McReport> mc_cdf_A(const std::vector<double>& points,
                               const channel::FadingParams& p, int n,
                               std::uint64_t trials, std::uint64_t seed,
                               int workers = 1);

// P(gamma0 A^2 / PL < gamma_th). Flags low_confidence when fewer than 100
// outage events were seen.
McReport mc_outage(const channel::FadingParams& p,
                   const aggregate::LinkBudget& lb, std::uint64_t trials,
                   std::uint64_t seed, int workers = 1);

struct SnrMoments {
  McReport mean_snr;   // E[gamma]
  McReport mean_a_sq;  // E[A^2]
};

SnrMoments mc_snr_moments(const channel::FadingParams& p,
                          const aggregate::LinkBudget& lb,
                          std::uint64_t trials, std::uint64_t seed,
                          int workers = 1);

namespace detail {

// One chunk's reduced payload. Kernels fill whichever vectors they use;
// sizes must not depend on the chunk index.
struct ChunkAccum {
  std::vector<double> sums;
  std::vector<std::uint64_t> counts;
};

using ChunkFn = std::function<ChunkAccum(std::uint64_t chunk_index)>;

inline constexpr std::uint64_t kChunkTrials = 8192;

// Reference driver: runs chunks in index order on the calling thread.
std::vector<ChunkAccum> run_chunks_serial(const ChunkFn& fn,
                                          std::uint64_t n_chunks);

// OpenMP driver; falls back to the serial driver when built without OpenMP.
// Produces the same chunk results in the same slots by construction.
std::vector<ChunkAccum> run_chunks_parallel(const ChunkFn& fn,
                                            std::uint64_t n_chunks,
                                            int workers);

}  // namespace detail

}  // namespace rislink::montecarlo
