#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace skl::par {

// Resolves a worker count: explicit request wins, then SKL_THREADS, then 1.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SKL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

// Splits [0, n) into fixed-size chunks, maps each chunk to a value, and
// returns the values in chunk order. The partition is independent of the
// worker count, so reductions over the returned vector are reproducible
// for any thread count.
template <typename T, typename Fn>
std::vector<T> map_chunks(std::size_t n, std::size_t chunk_size, int threads, Fn&& fn) {
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t chunks = n == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
  std::vector<T> out(chunks);
  if (chunks == 0) return out;
  const int workers = std::min<std::size_t>(std::max(1, resolve_threads(threads)), chunks);
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c)
      out[c] = fn(c * chunk_size, std::min(n, (c + 1) * chunk_size));
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
          out[c] = fn(c * chunk_size, std::min(n, (c + 1) * chunk_size));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace skl::par
