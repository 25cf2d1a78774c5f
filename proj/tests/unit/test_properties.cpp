// Randomized invariants over a fixed-seed generator.
#include <doctest.h>

#include <cmath>

#include "spinwave/config.hpp"
#include "spinwave/propagation.hpp"
#include "spinwave/velocity.hpp"
#include "test_support.hpp"

using namespace spinwave;
using testsupport::Gen;

TEST_CASE("spectrum invariants over random chains") {
  Gen gen(1);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = gen.chain();
    const double h = p.reduced_field();
    CAPTURE(p.N);
    CAPTURE(p.gamma);
    CAPTURE(h);
    const auto s = build_spectrum(p);
    REQUIRE(s.levels.size() == static_cast<std::size_t>(p.N / 2));
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
      const auto& l = s.levels[i];
      CHECK(l.k == static_cast<int>(i) + 1);
      CHECK(l.eps3 == l.eps4);
      CHECK(l.eps3 == std::cos(l.phi));
      CHECK(l.eps1 <= l.eps3);
      CHECK(l.eps3 <= l.eps2);
      CHECK(std::abs(l.eps1 + l.eps2 - 2.0 * std::cos(l.phi)) < 1e-14);
      CHECK(std::abs(std::norm(l.alpha1) + std::norm(l.alpha2) - 1.0) < 1e-12);
      CHECK(std::abs(std::norm(l.beta1) + std::norm(l.beta2) - 1.0) < 1e-12);
      CHECK(std::abs(std::conj(l.alpha1) * l.beta1 + std::conj(l.alpha2) * l.beta2) < 1e-10);
      CHECK(block_residual(l, p.gamma, h) < 1e-10);
    }
    // gamma -> -gamma leaves the energies unchanged
    auto q = p;
    q.gamma = -p.gamma;
    const auto r = build_spectrum(q);
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
      CHECK(r.levels[i].eps1 == s.levels[i].eps1);
      CHECK(r.levels[i].eps2 == s.levels[i].eps2);
    }
  }
}

TEST_CASE("no pairing mixing at gamma = 0") {
  Gen gen(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = gen.chain();
    p.gamma = 0.0;
    for (const auto& l : build_spectrum(p).levels) {
      CHECK(l.delta_p == 0.0);
      CHECK((std::abs(l.alpha1) == 0.0 || std::abs(l.alpha2) == 0.0));
    }
  }
}

TEST_CASE("response amplitude identity A^2 + B^2 = 1/D") {
  Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double w = gen.uniform(-20.0, 20.0);
    const double tau = std::pow(10.0, gen.uniform(-6.0, 1.0));
    const auto r = response_amplitudes(w, tau);
    const double D = 1.0 / (tau * tau) + w * w;
    CHECK(testsupport::rel_diff(r.A * r.A + r.B * r.B, 1.0 / D) < 1e-14);
  }
}

TEST_CASE("kernel frequency symmetry") {
  Gen gen(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = gen.chain(4, 24);
    const auto k = build_kernel(p, gen.pulse(p.N));
    const std::size_t L = k.level_count();
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = 0; j < L; ++j) CHECK(k.entries[i * L + j].omega == k.entries[j * L + i].omega);
    }
  }
  // block energies are symmetric under phi -> 2 pi - phi (k -> N - k)
  const auto p = ChainParams{24, 1.0, 0.5, 0.5};
  for (int k = 1; k < 12; ++k) {
    const double a = quasiparticle_energy(grid_angle(MomentumGrid::Periodic, k, 24), 0.5, 0.5);
    const double b = quasiparticle_energy(grid_angle(MomentumGrid::Periodic, 24 - k, 24), 0.5, 0.5);
    CHECK(std::abs(a - b) < 1e-14);
  }
  (void)p;
}

TEST_CASE("linearity, shift covariance, relocation and boundedness") {
  Gen gen(5);
  for (int trial = 0; trial < 12; ++trial) {
    const auto p = gen.chain(6, 30);
    const auto q = gen.pulse(p.N);
    const auto k1 = build_kernel(p, q);
    auto q2 = q;
    q2.h1 = 2.0 * q.h1;
    const auto k2 = build_kernel(p, q2);
    auto qs = q;
    qs.t_start = q.t_start + 1.25;
    const auto ks = build_kernel(p, qs);
    auto qr = q;
    const int shift = gen.integer(1, p.N - 1);
    qr.source_site = (q.source_site - 1 + shift) % p.N + 1;
    const auto kr = build_kernel(p, qr);
    for (int s = 0; s < 10; ++s) {
      const int n = gen.integer(1, p.N);
      const double t = q.t_start + gen.uniform(0.0, 40.0);
      const double v = first_order_response(k1, n, t);
      CHECK(testsupport::rel_diff(first_order_response(k2, n, t), 2.0 * v) < 1e-12);
      CHECK(testsupport::rel_diff(first_order_response(ks, n, t + 1.25), v) < 1e-9);
      const int moved = (n - 1 + shift) % p.N + 1;
      CHECK(testsupport::rel_diff(first_order_response(kr, moved, t), v) < 1e-12);
    }
  }
  // boundedness at the default parameters
  const auto k = build_kernel(ChainParams{}, PulseSpec{1.0, 1e-4, 100, 0.0});
  const auto tr = scan(k, uniform_times(all_sites(100), 0.0, 60.0, 0.5));
  double peak = 0.0;
  for (double v : tr.values) peak = std::max(peak, std::abs(v));
  CHECK(peak < 10.0 * 1.0 * 1e-4);
}

TEST_CASE("dispersion table invariants") {
  Gen gen(6);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = gen.chain(4, 60);
    const auto t = build_dispersion(build_spectrum(p));
    int total = 0;
    for (std::size_t i = 0; i < t.kappa.size(); ++i) {
      CHECK(t.omega_max[i] >= t.omega_avg[i] - 1e-15);
      total += t.counts[i];
    }
    const int half = p.N / 2;
    CHECK(total == half * half - half);
    const auto c = group_velocities(t);
    for (double v : c.v_max) CHECK(std::isfinite(v));
  }
}

TEST_CASE("random pulse trains superpose") {
  Gen gen(7);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = gen.chain(6, 20);
    auto base = gen.pulse(p.N);
    const int n = gen.integer(1, 4);
    const double t0 = gen.uniform(0.3, 2.0);
    const auto k = build_kernel(p, base);
    const PulseTrain train{n, t0, base};
    for (int s = 0; s < 6; ++s) {
      const int m = gen.integer(1, p.N);
      const double t = base.t_start + (n - 1) * t0 + gen.uniform(0.0, 15.0);
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        auto b = base;
        b.t_start += j * t0;
        sum += first_order_response(build_kernel(p, b), m, t);
      }
      CHECK(testsupport::rel_diff(pulse_train_response(k, train, m, t).value, sum) < 1e-10);
    }
  }
}

TEST_CASE("config snapshot round trip") {
  Gen gen(8);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = gen.chain(4, 40);
    io::ConfigMap m;
    m["chain.N"] = {std::to_string(p.N), 1};
    m["chain.gamma"] = {std::to_string(p.gamma), 2};
    m["chain.h0"] = {std::to_string(p.h0), 3};
    m["pulse.source_site"] = {std::to_string(gen.integer(1, p.N)), 4};
    const auto c = io::build_config(m);
    io::ConfigMap back;
    int line = 0;
    for (const auto& [k, v] : io::snapshot(c)) back[k] = {v, ++line};
    CHECK(io::snapshot(io::build_config(back)) == io::snapshot(c));
  }
}
