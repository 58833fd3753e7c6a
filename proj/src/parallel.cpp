#include "rudinlab/parallel.hpp"

#include <cstdlib>

namespace rudinlab {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void for_each_chunk(std::size_t n, std::size_t chunk,
                    const std::function<void(std::size_t, ChunkRange, unsigned)>& body) {
  const std::size_t chunks = chunk_count(n, chunk);
  if (chunks == 0) return;
  auto range_of = [&](std::size_t ci) {
    return ChunkRange{ci * chunk, std::min(n, (ci + 1) * chunk)};
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), chunks));
  if (workers <= 1) {
    for (std::size_t ci = 0; ci < chunks; ++ci) body(ci, range_of(ci), 0);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&](unsigned w) {
    try {
      for (std::size_t ci = next.fetch_add(1); ci < chunks; ci = next.fetch_add(1)) {
        body(ci, range_of(ci), w);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(chunks);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rudinlab
