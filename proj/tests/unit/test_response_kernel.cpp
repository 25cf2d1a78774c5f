#include <doctest.h>

#include <cmath>

#include "spinwave/error.hpp"
#include "spinwave/exact_oracle.hpp"
#include "spinwave/response_kernel.hpp"
#include "test_support.hpp"

using namespace spinwave;

namespace {
const ChainParams kN8{8, 1.0, 0.5, 0.5};
}

TEST_CASE("response_amplitudes closed forms") {
  auto r = response_amplitudes(0.0, 1e-3);
  CHECK(r.A == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(r.B == 0.0);
  r = response_amplitudes(1.0 / 1e-3, 1e-3);
  CHECK(r.A == doctest::Approx(0.5e-3).epsilon(1e-14));
  CHECK(r.B == doctest::Approx(-0.5e-3).epsilon(1e-14));

  // tau = 1e-4, omega = 2, against long double arithmetic
  r = response_amplitudes(2.0, 1e-4);
  const long double inv = 1.0L / 1e-4L;
  const long double D = inv * inv + 4.0L;
  CHECK(testsupport::rel_diff(r.A, static_cast<double>(inv / D)) < 1e-15);
  CHECK(testsupport::rel_diff(r.B, static_cast<double>(-2.0L / D)) < 1e-15);
  CHECK(r.A == doctest::Approx(1e-4).epsilon(1e-6));
  CHECK(r.B == doctest::Approx(-2e-8).epsilon(1e-6));
}

TEST_CASE("pulse validation") {
  CHECK_THROWS_AS(validate(PulseSpec{1.0, 0.0, 8, 0.0}, 8), ParameterError);
  CHECK_THROWS_AS(validate(PulseSpec{1.0, -1.0, 8, 0.0}, 8), ParameterError);
  CHECK_THROWS_AS(validate(PulseSpec{1.0, 1e-4, 9, 0.0}, 8), ParameterError);
  CHECK_THROWS_AS(validate(PulseSpec{1.0, 1e-4, 0, 0.0}, 8), ParameterError);
  CHECK_THROWS_AS(validate(PulseSpec{INFINITY, 1e-4, 8, 0.0}, 8), ParameterError);
}

TEST_CASE("v2 elements: zero field and source independence of the modulus") {
  const auto g = ring_ground_state(kN8);
  for (const auto& v : derive_v2_elements(g, PulseSpec{0.0, 1e-4, 8, 0.0})) CHECK(std::abs(v) == 0.0);
  const auto a = derive_v2_elements(g, PulseSpec{1.0, 1e-4, 8, 0.0});
  const auto b = derive_v2_elements(g, PulseSpec{1.0, 1e-4, 3, 0.0});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(std::abs(a[i]) - std::abs(b[i])) < 1e-15);
}

TEST_CASE("kernel entry count follows the ground sector") {
  // odd sector: N/2 - 1 paired blocks plus the empty and filled unpaired modes
  CHECK(build_kernel(kN8, PulseSpec{1.0, 1e-4, 8, 0.0}).entries.size() == 25);
  CHECK(build_kernel(ChainParams{6, 1.0, 0.5, 0.5}, PulseSpec{1.0, 1e-4, 6, 0.0}).entries.size() == 9);
}

TEST_CASE("zeroth order") {
  // literal form at gamma = 0 and a saturating field
  const auto s = build_spectrum(ChainParams{10, 1.0, 0.0, 3.0});
  CHECK(std::abs(zeroth_order(s)) == doctest::Approx(0.5).epsilon(1e-15));

  const oracle::DenseChain c(kN8);
  const auto prof = oracle::measure_sz_profile(c, oracle::ground_state(c).state);
  const double z = zeroth_order(ring_ground_state(kN8));
  for (double v : prof) CHECK(std::abs(v - z) < 1e-10);
  for (int N : {4, 6, 10}) {
    const ChainParams p{N, 1.0, 0.5, 0.5};
    const oracle::DenseChain d(p);
    const auto pr = oracle::measure_sz_profile(d, oracle::ground_state(d).state);
    CHECK(std::abs(pr[0] - zeroth_order(ring_ground_state(p))) < 1e-10);
  }
}

TEST_CASE("zeroth order literal form at N=100 equals the exact sector value") {
  // the two sectors are degenerate at N=100; the literal periodic-grid sum
  // differs from the exact even-sector value only by a 1/N term
  const ChainParams p{100, 1.0, 0.5, 0.5};
  CHECK(std::abs(zeroth_order(build_spectrum(p)) - zeroth_order(ring_ground_state(p))) <= 1.0 / p.N + 1e-12);
}

TEST_CASE("first-order response: zero field, mirror sites, start of pulse") {
  const auto k0 = build_kernel(kN8, PulseSpec{0.0, 1e-4, 8, 0.0});
  for (int n = 1; n <= 8; ++n) CHECK(first_order_response(k0, n, 2.5) == 0.0);

  const auto k = build_kernel(ChainParams{20, 1.0, 0.5, 0.5}, PulseSpec{1.0, 1e-4, 20, 0.0});
  for (double t : {0.5, 3.0, 17.25}) {
    for (int n = 1; n < 20; ++n) CHECK(first_order_response(k, n, t) == first_order_response(k, 20 - n, t));
  }
  for (int n = 1; n <= 20; ++n) CHECK(first_order_response(k, n, 0.0) == 0.0);
  // continuity at the pulse start when the transient is kept
  CHECK(std::abs(first_order_response(k, 20, 1e-12)) < 1e-12);
}

TEST_CASE("first-order response agrees with exact N=8 dynamics") {
  const PulseSpec q{1.0, 1e-4, 8, 0.0};
  const auto grid = uniform_times(all_sites(8), 0.0, 50.0, 0.5);
  const auto cmp = oracle::compare_first_order(kN8, q, grid);
  MESSAGE("relative deviation " << cmp.relative);
  CHECK(cmp.exact_peak > 0.0);
  CHECK(cmp.relative <= 0.01);
}

TEST_CASE("the relaxation transient is constant once the pulse has decayed") {
  const auto k = build_kernel(kN8, PulseSpec{1.0, 1e-4, 8, 0.0});
  const double t1 = 11e-4, t2 = 5.0;
  for (int n = 1; n <= 8; ++n) {
    CHECK(std::abs(relaxation_offset(k, n, t2) - relaxation_offset(k, n, t1)) < 1e-12);
  }
  KernelOptions off;
  off.include_c_offset = false;
  const auto k2 = build_kernel(kN8, PulseSpec{1.0, 1e-4, 8, 0.0}, off);
  CHECK(std::abs(first_order_response(k, 3, 2e-4) - first_order_response(k2, 3, 2e-4) -
                 relaxation_offset(k, 3, 2e-4)) < 1e-18);
}

TEST_CASE("sum rule at gamma = 0: total deviation vanishes after the pulse") {
  // S^z_total commutes with H0 at gamma = 0 and the exact deviation sums to 0
  const ChainParams p{10, 1.0, 0.0, 0.3};
  const auto k = build_kernel(p, PulseSpec{1.0, 1e-4, 10, 0.0});
  for (double t : {0.5, 2.0, 7.5}) {
    double sum = 0.0;
    for (int n = 1; n <= 10; ++n) sum += first_order_response(k, n, t);
    CHECK(std::abs(sum) < 1e-15);
  }
}

TEST_CASE("second order strengths") {
  auto s = second_order_strengths(PulseSpec{1.0, 1e-4, 1, 0.0}, 1.0);
  CHECK(s.S1 == doctest::Approx(1e-8).epsilon(1e-14));
  CHECK(s.D == doctest::Approx(1e8 + 1.0).epsilon(1e-15));
  CHECK(s.S2 == doctest::Approx(1.0 / ((1e8 + 1.0) * (1e8 + 1.0))).epsilon(1e-14));
  CHECK(s.S3 == doctest::Approx(1e-4).epsilon(1e-6));
  s = second_order_strengths(PulseSpec{0.0, 1e-4, 1, 0.0}, 1.0);
  CHECK(s.S1 == 0.0);
  CHECK(s.S2 == 0.0);
  CHECK(s.S3 == 0.0);
  const auto sp = second_order_strengths(PulseSpec{1.0, 1e-4, 100, 0.0}, build_spectrum(ChainParams{}));
  CHECK(sp.delta_eps > 0.0);
}
