// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0

#include "rislink/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "rislink/errors.hpp"

namespace rislink::montecarlo {

namespace detail {

std::vector<ChunkAccum> run_chunks_serial(const ChunkFn& fn,
                                          std::uint64_t n_chunks) {
  std::vector<ChunkAccum> out(n_chunks);
  for (std::uint64_t c = 0; c < n_chunks; ++c) out[c] = fn(c);
  return out;
}

}  // namespace detail

namespace {

using detail::ChunkAccum;
using detail::kChunkTrials;

void check_run(std::uint64_t trials, int workers) {
  if (trials == 0) throw DomainError("trial count must be positive");
  if (workers < 1) throw DomainError("worker count must be at least 1");
}

std::uint64_t chunk_trials(std::uint64_t chunk, std::uint64_t total) {
  const std::uint64_t begin = chunk * kChunkTrials;
  return std::min(kChunkTrials, total - begin);
}

// Dispatch to the requested driver and reduce in chunk order. The reduction
// order is what keeps double-precision sums identical across drivers.
ChunkAccum run_reduced(const detail::ChunkFn& fn, std::uint64_t trials,
                       int workers) {
  const std::uint64_t n_chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  const auto chunks = workers == 1
                          ? detail::run_chunks_serial(fn, n_chunks)
                          : detail::run_chunks_parallel(fn, n_chunks, workers);
  ChunkAccum total = chunks.front();
  for (std::uint64_t c = 1; c < n_chunks; ++c) {
    for (std::size_t i = 0; i < total.sums.size(); ++i) {
      total.sums[i] += chunks[c].sums[i];
    }
    for (std::size_t i = 0; i < total.counts.size(); ++i) {
      total.counts[i] += chunks[c].counts[i];
    }
  }
  return total;
}

McReport proportion_report(std::uint64_t hits, std::uint64_t trials,
                           std::uint64_t seed) {
  const double p = double(hits) / double(trials);
  McReport r;
  r.estimate = p;
  r.half_width_95 = 1.96 * std::sqrt(p * (1.0 - p) / double(trials));
  r.trials = trials;
  r.seed = seed;
  const std::uint64_t rare = std::min(hits, trials - hits);
  r.low_confidence = rare < 100;
  return r;
}

double sum_envelope(const channel::FadingParams& p, int n,
                    numerics::RandomSource& src) {
  double a = 0.0;
  for (int k = 0; k < n; ++k) a += channel::sample_envelope(p, src);
  return a;
}

}  // namespace

McReport mc_mean(const std::function<double(numerics::RandomSource&)>& value_fn,
                 std::uint64_t trials, std::uint64_t seed, int workers) {
  check_run(trials, workers);
  const numerics::RandomSource base(seed);
  auto kernel = [&](std::uint64_t chunk) {
    auto src = base.derive(chunk);
    ChunkAccum acc;
    acc.sums.assign(2, 0.0);
    const std::uint64_t count = chunk_trials(chunk, trials);
    for (std::uint64_t i = 0; i < count; ++i) {
      const double v = value_fn(src);
      acc.sums[0] += v;
      acc.sums[1] += v * v;
    }
    return acc;
  };
  const auto total = run_reduced(kernel, trials, workers);
  const double mean = total.sums[0] / double(trials);
  const double var =
      std::max(0.0, total.sums[1] / double(trials) - mean * mean);
  McReport r;
  r.estimate = mean;
  r.half_width_95 = 1.96 * std::sqrt(var / double(trials));
  r.trials = trials;
  r.seed = seed;
  return r;
}

std::vector<McReport> mc_cdf_A(const std::vector<double>& points,
                               const channel::FadingParams& p, int n,
                               std::uint64_t trials, std::uint64_t seed,
                               int workers) {
  check_run(trials, workers);
  if (n < 1) throw DomainError("element count must be at least 1");
  if (points.empty()) return {};
  const numerics::RandomSource base(seed);
  auto kernel = [&](std::uint64_t chunk) {
    auto src = base.derive(chunk);
    ChunkAccum acc;
    acc.counts.assign(points.size(), 0);
    const std::uint64_t count = chunk_trials(chunk, trials);
    for (std::uint64_t i = 0; i < count; ++i) {
      const double a = sum_envelope(p, n, src);
      for (std::size_t j = 0; j < points.size(); ++j) {
        if (a <= points[j]) ++acc.counts[j];
      }
    }
    return acc;
  };
  const auto total = run_reduced(kernel, trials, workers);
  std::vector<McReport> out(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    out[j] = proportion_report(total.counts[j], trials, seed);
  }
  return out;
}

McReport mc_outage(const channel::FadingParams& p,
                   const aggregate::LinkBudget& lb, std::uint64_t trials,
                   std::uint64_t seed, int workers) {
  const double threshold =
      std::sqrt(lb.pl * lb.gamma_th / aggregate::gamma0(lb));
  return mc_cdf_A({threshold}, p, lb.n, trials, seed, workers).front();
}

SnrMoments mc_snr_moments(const channel::FadingParams& p,
                          const aggregate::LinkBudget& lb,
                          std::uint64_t trials, std::uint64_t seed,
                          int workers) {
  const double scale = aggregate::gamma0(lb) / lb.pl;
  const int n = lb.n;
  SnrMoments out;
  out.mean_snr = mc_mean(
      [&, n](numerics::RandomSource& src) {
        const double a = sum_envelope(p, n, src);
        return scale * a * a;
      },
      trials, seed, workers);
  out.mean_a_sq = mc_mean(
      [&, n](numerics::RandomSource& src) {
        const double a = sum_envelope(p, n, src);
        return a * a;
      },
      trials, seed, workers);
  return out;
}

}  // namespace rislink::montecarlo
