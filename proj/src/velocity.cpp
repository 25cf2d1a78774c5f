#include "spinwave/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spinwave/error.hpp"
#include "spinwave/exact_oracle.hpp"
#include "spinwave/numeric.hpp"

namespace spinwave {

DispersionTable build_dispersion(const Spectrum& spectrum) {
  const int N = spectrum.params.N;
  const int half = N / 2;
  DispersionTable t;
  t.N = N;
  const auto bins = static_cast<std::size_t>(std::max(0, half - 1));
  t.kappa.resize(bins);
  t.omega_max.assign(bins, -std::numeric_limits<double>::infinity());
  t.omega_avg.assign(bins, 0.0);
  t.counts.assign(bins, 0);
  std::vector<std::vector<double>> members(bins);

  for (int i = 0; i < half; ++i) {
    for (int j = 0; j < half; ++j) {
      if (i == j) continue;
      const auto& a = spectrum.levels[static_cast<std::size_t>(i)];
      const auto& b = spectrum.levels[static_cast<std::size_t>(j)];
      const auto bin = static_cast<std::size_t>(std::abs(a.k - b.k) - 1);
      const double w = pair_frequency(a, b, spectrum.params.J);
      members[bin].push_back(w);
      t.omega_max[bin] = std::max(t.omega_max[bin], w);
    }
  }
  for (std::size_t b = 0; b < bins; ++b) {
    t.kappa[b] = static_cast<int>(b) + 1;
    t.counts[b] = static_cast<int>(members[b].size());
    t.omega_avg[b] = pairwise_sum(members[b]) / static_cast<double>(members[b].size());
  }
  return t;
}

double GroupVelocityCurve::peak_v_max() const {
  double m = 0.0;
  for (double v : v_max) m = std::max(m, std::abs(v));
  return m;
}

double GroupVelocityCurve::peak_v_avg() const {
  double m = 0.0;
  for (double v : v_avg) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> finite_difference(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d.front() = (y[1] - y[0]) / h;
  d.back() = (y[n - 1] - y[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
  return d;
}

GroupVelocityCurve group_velocities(const DispersionTable& table) {
  GroupVelocityCurve c;
  c.N = table.N;
  c.kappa = table.kappa;
  const double dK = 2.0 * std::numbers::pi / table.N;
  for (int k : table.kappa) c.K.push_back(dK * k);
  c.v_max = finite_difference(table.omega_max, dK);
  c.v_avg = finite_difference(table.omega_avg, dK);
  return c;
}

const char* to_string(NormStrategy s) {
  switch (s) {
    case NormStrategy::QuasiparticleSum: return "quasiparticle-sum";
    case NormStrategy::PeakBlock: return "peak-block";
    case NormStrategy::DenseSpectral: return "dense-spectral";
    case NormStrategy::UserSupplied: return "user-supplied";
  }
  return "?";
}

NormStrategy parse_norm_strategy(const std::string& text) {
  for (auto s : {NormStrategy::QuasiparticleSum, NormStrategy::PeakBlock,
                 NormStrategy::DenseSpectral, NormStrategy::UserSupplied}) {
    if (text == to_string(s)) return s;
  }
  throw ParameterError("lr.norm_strategy", "unknown norm strategy '" + text +
                                               "' (quasiparticle-sum, peak-block, "
                                               "dense-spectral, user-supplied)");
}

double hamiltonian_norm(const ChainParams& params, NormStrategy strategy, double user_value) {
  switch (strategy) {
    case NormStrategy::UserSupplied:
      if (!(user_value >= 0.0) || !std::isfinite(user_value)) {
        throw ParameterError("lr.norm", "user-supplied norm must be finite and nonnegative");
      }
      return user_value;
    case NormStrategy::QuasiparticleSum:
      return params.J * ground_state_energy_scale(params);
    case NormStrategy::PeakBlock: {
      validate(params, 2);
      double peak = 0.0;
      for (const auto& l : detail::build_levels(params, MomentumGrid::Periodic, 1, params.N / 2)) {
        peak = std::max(peak, l.quasiparticle());
      }
      return params.J * 0.5 * params.N * peak;
    }
    case NormStrategy::DenseSpectral:
      return oracle::dense_norm(params);
  }
  return 0.0;
}

LRBoundResult lr_bound(double norm_H, int N, NormStrategy strategy, int samples, double a_lo,
                       double a_hi) {
  if (!(norm_H >= 0.0) || !std::isfinite(norm_H)) {
    throw ParameterError("lr.norm", "norm must be finite and nonnegative");
  }
  if (N < 1) throw ParameterError("chain.N", "site count must be positive");
  if (samples < 3 || !(a_lo > 0.0) || !(a_hi > a_lo)) {
    throw ParameterError("lr.samples", "need at least 3 samples on a positive range");
  }
  LRBoundResult r;
  r.N = N;
  r.norm_H = norm_H;
  r.strategy = strategy;
  const double n = N;
  r.v_LR = std::numbers::e * n * norm_H / 2.0;

  const double lo = std::log(a_lo / n);
  const double step = (std::log(a_hi / n) - lo) / (samples - 1);
  r.grid_ratio = std::exp(step);
  r.a.resize(static_cast<std::size_t>(samples));
  r.v_a.resize(static_cast<std::size_t>(samples));
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.a.size(); ++i) {
    const double a = std::exp(lo + step * static_cast<double>(i));
    r.a[i] = a;
    // exp(aN)/(aN) alone decides the minimizer; the prefactor may be zero
    r.v_a[i] = n * norm_H * std::exp(a * n) / (2.0 * a * n);
    const double shape = std::exp(a * n) / (a * n);
    const double best_shape = std::exp(r.a[best] * n) / (r.a[best] * n);
    if (shape < best_shape) best = i;
  }
  r.a_star = r.a[best];
  return r;
}

VelocityComparison compare_velocities(const GroupVelocityCurve& curve, const LRBoundResult& lr) {
  VelocityComparison c;
  c.v_group_max = curve.peak_v_max();
  c.v_group_avg = curve.peak_v_avg();
  c.v_LR = lr.v_LR;
  c.ratio_max = c.v_group_max > 0.0 ? lr.v_LR / c.v_group_max : 0.0;
  c.ratio_avg = c.v_group_avg > 0.0 ? lr.v_LR / c.v_group_avg : 0.0;
  c.transit_max = c.v_group_max > 0.0 ? 1.0 / c.v_group_max : 0.0;
  c.transit_avg = c.v_group_avg > 0.0 ? 1.0 / c.v_group_avg : 0.0;
  c.bound_holds = c.v_group_max < lr.v_LR && c.v_group_avg < lr.v_LR;
  return c;
}

}  // namespace spinwave
