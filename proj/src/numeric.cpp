#include "spinwave/numeric.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace spinwave {

namespace {
constexpr std::size_t kLeafSize = 16;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;
}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kLeafSize) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Fnv1a& Fnv1a::add(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= kFnvPrime;
  }
  return *this;
}

Fnv1a& Fnv1a::add(double value) {
  // +0 and -0 hash alike
  const auto bits = std::bit_cast<std::uint64_t>(value == 0.0 ? 0.0 : value);
  return add(static_cast<std::int64_t>(bits));
}

Fnv1a& Fnv1a::add(std::int64_t value) {
  auto u = static_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) {
    state_ ^= (u & 0xffu);
    state_ *= kFnvPrime;
    u >>= 8;
  }
  return *this;
}

std::uint64_t fnv1a(std::string_view bytes) { return Fnv1a{}.add(bytes).value(); }

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

unsigned thread_count() {
  if (const char* env = std::getenv("SPINWAVE_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace spinwave
