// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// Parallel chunk driver. Chunks are independent by construction (each one
// reseeds from its index), so the only coordination is slot assignment.

#include "rislink/montecarlo.hpp"

namespace rislink::montecarlo::detail {

#if defined(RISLINK_HAVE_OPENMP)

std::vector<ChunkAccum> run_chunks_parallel(const ChunkFn& fn,
                                            std::uint64_t n_chunks,
                                            int workers) {
  std::vector<ChunkAccum> out(n_chunks);
  const std::int64_t count = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for num_threads(workers) schedule(dynamic)
  for (std::int64_t c = 0; c < count; ++c) {
    out[static_cast<std::size_t>(c)] = fn(static_cast<std::uint64_t>(c));
  }
  return out;
}

#else

std::vector<ChunkAccum> run_chunks_parallel(const ChunkFn& fn,
                                            std::uint64_t n_chunks,
                                            int /*workers*/) {
  return run_chunks_serial(fn, n_chunks);
}

#endif

}  // namespace rislink::montecarlo::detail
