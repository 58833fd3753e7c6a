#pragma once

// Deterministic chunked execution. Work is cut into chunks whose boundaries
// depend only on the problem size, never on the worker count; each chunk
// writes its own result slot, and slots are merged by a fixed pairwise tree.
// Any thread count therefore produces bit-identical results.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "rudinlab/numeric.hpp"

namespace rudinlab {

/// Process-wide worker count used by the scan routines. 0 means
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

struct ChunkRange {
  std::size_t begin;
  std::size_t end;
};

inline std::size_t chunk_count(std::size_t n, std::size_t chunk) {
  return n == 0 ? 0 : (n + chunk - 1) / chunk;
}

/// Runs body(chunk_index, range, worker_index) for every chunk of [0, n).
/// Each worker index is used by exactly one thread at a time, so callers can
/// keep per-worker scratch buffers indexed by it.
void for_each_chunk(std::size_t n, std::size_t chunk,
                    const std::function<void(std::size_t, ChunkRange, unsigned)>& body);

/// Element-wise summable vector, for reducing several quantities at once.
struct VecSum {
  std::vector<double> v;

  friend VecSum operator+(const VecSum& a, const VecSum& b) {
    if (a.v.empty()) return b;
    if (b.v.empty()) return a;
    VecSum r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
    return r;
  }
};

/// Maps chunks to partial results then reduces them pairwise in index order.
template <class T, class F>
T chunked_reduce(std::size_t n, std::size_t chunk, F&& per_chunk) {
  std::vector<T> parts(chunk_count(n, chunk));
  for_each_chunk(n, chunk, [&](std::size_t ci, ChunkRange r, unsigned w) {
    parts[ci] = per_chunk(r, w);
  });
  return pairwise_sum(parts);
}

}  // namespace rudinlab
