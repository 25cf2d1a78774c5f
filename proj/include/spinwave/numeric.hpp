#ifndef SPINWAVE_NUMERIC_HPP
#define SPINWAVE_NUMERIC_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace spinwave {

//! Pairwise (cascade) summation; error grows as O(log n) instead of O(n).
double pairwise_sum(std::span<const double> values);

//! Incremental FNV-1a 64-bit fingerprint. Not a cryptographic hash.
class Fnv1a {
 public:
  Fnv1a& add(std::string_view bytes);
  Fnv1a& add(double value);
  Fnv1a& add(std::int64_t value);
  std::uint64_t value() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 14695981039346656037ull;
};

std::uint64_t fnv1a(std::string_view bytes);

//! Round-trip text form of a double (17 significant digits).
std::string format_double(double value);

//! Worker count: SPINWAVE_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

//! Runs body(i) for i in [0, n). Work is split in contiguous chunks, so the
//! result only depends on body, never on scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
}

}  // namespace spinwave

#endif
