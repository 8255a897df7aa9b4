#pragma once

// Fixed-chunk OpenMP helpers. The chunk boundaries depend only on the problem
// size, and reductions combine per-chunk partials in chunk order, so results
// are bitwise identical for any thread count.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace tadpole::detail {

inline constexpr std::size_t kChunk = std::size_t{1} << 12;

inline std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

template <class F>
void chunked_for(std::size_t n, F&& body) {
  const auto chunks = static_cast<long long>(chunk_count(n));
#pragma omp parallel for schedule(static) if (chunks > 1)
  for (long long c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    body(lo, std::min(n, lo + kChunk));
  }
}

template <class T, class F>
T chunked_sum(std::size_t n, F&& partial) {
  const std::size_t chunks = chunk_count(n);
  std::vector<T> parts(chunks, T{});
#pragma omp parallel for schedule(static) if (chunks > 1)
  for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    parts[c] = partial(lo, std::min(n, lo + kChunk));
  }
  T total{};
  for (const auto& p : parts) total += p;
  return total;
}

}  // namespace tadpole::detail
