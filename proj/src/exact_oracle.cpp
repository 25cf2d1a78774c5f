#include "spinwave/exact_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "spinwave/error.hpp"
#include "spinwave/numeric.hpp"

namespace spinwave::oracle {

namespace {

using State = std::vector<cplx>;

void check_size(const ChainParams& params) {
  if (params.N > kMaxSites) {
    throw StateSpaceError("chain.N: dense oracle is capped at N <= " + std::to_string(kMaxSites) +
                          ", got " + std::to_string(params.N));
  }
  validate(params, 2);
}

double field_at(const PulseSpec& pulse, double t) {
  if (t < pulse.t_start) return 0.0;
  return pulse.h1 * std::exp(-(t - pulse.t_start) / pulse.tau_H);
}

// psi' = -i H(t) psi
void derivative(const DenseChain& chain, const PulseSpec& pulse, double t, const State& in,
                State& out) {
  chain.apply(in.data(), out.data(), pulse.source_site, field_at(pulse, t));
  for (auto& z : out) z = cplx(z.imag(), -z.real());
}

struct Rk4Workspace {
  State k1, k2, k3, k4, tmp;
  explicit Rk4Workspace(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
};

void rk4_step(const DenseChain& chain, const PulseSpec& pulse, double t, double h, const State& y,
              State& out, Rk4Workspace& w) {
  const std::size_t n = y.size();
  derivative(chain, pulse, t, y, w.k1);
  for (std::size_t i = 0; i < n; ++i) w.tmp[i] = y[i] + 0.5 * h * w.k1[i];
  derivative(chain, pulse, t + 0.5 * h, w.tmp, w.k2);
  for (std::size_t i = 0; i < n; ++i) w.tmp[i] = y[i] + 0.5 * h * w.k2[i];
  derivative(chain, pulse, t + 0.5 * h, w.tmp, w.k3);
  for (std::size_t i = 0; i < n; ++i) w.tmp[i] = y[i] + h * w.k3[i];
  derivative(chain, pulse, t + h, w.tmp, w.k4);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = y[i] + (h / 6.0) * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
  }
}

double distance(const State& a, const State& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

struct SectorSolution {
  std::vector<std::uint32_t> basis;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

// H0 flips spins in pairs, so it never mixes the two parities of the number of
// down spins; each sector is diagonalized on its own.
std::vector<SectorSolution> solve_sectors(const DenseChain& chain, bool with_vectors) {
  std::vector<SectorSolution> out(2);
  const auto dim = static_cast<std::uint32_t>(chain.dimension());
  for (std::uint32_t s = 0; s < dim; ++s) out[std::popcount(s) & 1].basis.push_back(s);
  for (auto& sec : out) {
    const auto m = static_cast<Eigen::Index>(sec.basis.size());
    Eigen::MatrixXd H(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) {
        H(r, c) = chain.h0_element(sec.basis[static_cast<std::size_t>(r)],
                                   sec.basis[static_cast<std::size_t>(c)]);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        H, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    sec.values = es.eigenvalues();
    if (with_vectors) sec.vectors = es.eigenvectors();
  }
  return out;
}

EvolvedState embed(const DenseChain& chain, const SectorSolution& sec, Eigen::Index column) {
  EvolvedState st;
  st.psi.assign(chain.dimension(), cplx(0.0));
  for (std::size_t i = 0; i < sec.basis.size(); ++i) {
    st.psi[sec.basis[i]] = sec.vectors(static_cast<Eigen::Index>(i), column);
  }
  return st;
}

}  // namespace

DenseChain::DenseChain(const ChainParams& params) : params_(params) {
  check_size(params);
  const int N = params.N;
  const std::uint32_t dim = 1u << N;
  diag_.resize(dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    double mz = 0.0;
    for (int site = 1; site <= N; ++site) mz += 2.0 * sz(s, site);
    diag_[s] = -params.h0 * mz;
  }
  // bond (i, i+1) including the closing (N, 1); for N = 2 both bonds join the same pair
  for (int i = 0; i < N; ++i) {
    const int j = (i + 1) % N;
    bond_first_bit_.push_back(1u << i);
    bond_second_bit_.push_back(1u << j);
    bond_masks_.push_back((1u << i) | (1u << j));
  }
}

double DenseChain::h0_element(std::uint32_t row, std::uint32_t col) const {
  if (row == col) return diag_[row];
  double v = 0.0;
  for (std::size_t b = 0; b < bond_masks_.size(); ++b) {
    if ((row ^ col) != bond_masks_[b]) continue;
    const bool same = ((col & bond_first_bit_[b]) != 0) == ((col & bond_second_bit_[b]) != 0);
    // sx sx + sy sy flips: up-up <-> down-down picks up J gamma, up-down <-> down-up J
    v += same ? params_.J * params_.gamma : params_.J;
  }
  return v;
}

void DenseChain::apply_h0(const cplx* in, cplx* out) const {
  const std::uint32_t dim = static_cast<std::uint32_t>(diag_.size());
  const double jg = params_.J * params_.gamma;
  const double j = params_.J;
  for (std::uint32_t s = 0; s < dim; ++s) {
    cplx acc = diag_[s] * in[s];
    for (std::size_t b = 0; b < bond_masks_.size(); ++b) {
      const std::uint32_t t = s ^ bond_masks_[b];
      const bool same = ((t & bond_first_bit_[b]) != 0) == ((t & bond_second_bit_[b]) != 0);
      acc += (same ? jg : j) * in[t];
    }
    out[s] = acc;
  }
}

void DenseChain::apply(const cplx* in, cplx* out, int site, double field) const {
  apply_h0(in, out);
  if (field == 0.0) return;
  const std::uint32_t dim = static_cast<std::uint32_t>(diag_.size());
  for (std::uint32_t s = 0; s < dim; ++s) out[s] += field * sz(s, site) * in[s];
}

std::vector<double> DenseChain::dense_h0() const {
  const std::size_t dim = diag_.size();
  std::vector<double> m(dim * dim, 0.0);
  for (std::uint32_t r = 0; r < dim; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c) m[r * dim + c] = h0_element(r, c);
  }
  return m;
}

double EvolvedState::norm() const {
  double s = 0.0;
  for (const auto& z : psi) s += std::norm(z);
  return std::sqrt(s);
}

GroundStateResult ground_state(const DenseChain& chain) {
  const auto sectors = solve_sectors(chain, true);
  struct Candidate {
    double value;
    std::size_t sector;
    Eigen::Index column;
  };
  std::vector<Candidate> all;
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    for (Eigen::Index c = 0; c < sectors[s].values.size(); ++c) {
      all.push_back({sectors[s].values(c), s, c});
    }
  }
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    return a.value != b.value ? a.value < b.value : a.sector < b.sector;
  });
  GroundStateResult r;
  r.energy = all[0].value;
  r.state = embed(chain, sectors[all[0].sector], all[0].column);
  r.gap = all.size() > 1 ? all[1].value - all[0].value : 0.0;
  r.degenerate = all.size() > 1 && r.gap < 1e-10;
  if (r.degenerate) r.partner = embed(chain, sectors[all[1].sector], all[1].column);
  return r;
}

std::vector<double> dense_spectrum(const DenseChain& chain) {
  std::vector<double> out;
  for (const auto& sec : solve_sectors(chain, false)) {
    for (Eigen::Index i = 0; i < sec.values.size(); ++i) out.push_back(sec.values(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double dense_norm(const ChainParams& params) {
  const auto ev = dense_spectrum(DenseChain(params));
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

EvolvedState evolve(const DenseChain& chain, const PulseSpec& pulse, EvolvedState state,
                    double t_end, EvolveOptions options, EvolveStats* stats) {
  validate(pulse, chain.params().N);
  const std::size_t n = state.psi.size();
  Rk4Workspace w(n);
  State full(n), half(n), two(n);
  const double active_end = pulse.t_start + options.active_window * pulse.tau_H;
  double dt = std::min(options.dt_free, pulse.tau_H / 10.0);
  EvolveStats local;

  while (state.t < t_end) {
    const double t = state.t;
    const bool active = t >= pulse.t_start && t < active_end;
    double cap = active ? pulse.tau_H / 10.0 : options.dt_free;
    // never straddle the pulse switch-on or the end of the active window
    if (t < pulse.t_start) cap = std::min(cap, pulse.t_start - t);
    if (active) cap = std::min(cap, active_end - t);
    double h = std::min({dt, cap, t_end - t});

    rk4_step(chain, pulse, t, h, state.psi, full, w);
    rk4_step(chain, pulse, t, 0.5 * h, state.psi, half, w);
    rk4_step(chain, pulse, t + 0.5 * h, 0.5 * h, half, two, w);
    const double err = distance(full, two);

    if (err > options.target_error && h > options.min_dt) {
      ++local.rejected;
      dt = std::max(options.min_dt, h * std::max(0.2, 0.9 * std::pow(options.target_error / err, 0.2)));
      continue;
    }
    if (err > options.reject_error) {
      throw StepSizeError("local error " + format_double(err) + " at t=" + format_double(t) +
                          " exceeds the bound even at the minimum step");
    }
    ++local.accepted;
    local.max_local_error = std::max(local.max_local_error, err);
    state.psi.swap(two);
    // land exactly on the boundaries that capped the step
    double t_next = t + h;
    if (h == t_end - t) {
      t_next = t_end;
    } else if (t < pulse.t_start && h == pulse.t_start - t) {
      t_next = pulse.t_start;
    } else if (active && h == active_end - t) {
      t_next = active_end;
    }
    state.t = t_next;
    const double grow = err > 0.0 ? 0.9 * std::pow(options.target_error / err, 0.2) : 2.0;
    dt = std::max(h, dt) * std::clamp(grow, 0.2, 2.0);
  }
  if (stats) *stats = local;
  return state;
}

EvolvedState evolve_fixed(const DenseChain& chain, const PulseSpec& pulse, EvolvedState state,
                          double t_end, double dt) {
  validate(pulse, chain.params().N);
  if (!(dt > 0.0)) throw ParameterError("oracle.dt", "step must be positive");
  const std::size_t n = state.psi.size();
  Rk4Workspace w(n);
  State next(n);
  const double t0 = state.t;
  const auto steps = static_cast<long>(std::ceil((t_end - t0) / dt - 1e-9));
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + static_cast<double>(s) * dt;
    const double h = std::min(dt, t_end - t);
    rk4_step(chain, pulse, t, h, state.psi, next, w);
    state.psi.swap(next);
  }
  state.t = t_end;
  return state;
}

std::vector<double> measure_sz_profile(const DenseChain& chain, const EvolvedState& state) {
  const int N = chain.params().N;
  std::vector<double> prof(static_cast<std::size_t>(N), 0.0);
  double norm2 = 0.0;
  for (std::uint32_t s = 0; s < state.psi.size(); ++s) {
    const double p = std::norm(state.psi[s]);
    norm2 += p;
    for (int site = 1; site <= N; ++site) {
      prof[static_cast<std::size_t>(site - 1)] += p * DenseChain::sz(s, site);
    }
  }
  for (auto& v : prof) v /= norm2;
  return prof;
}

double total_sz(const DenseChain& chain, const EvolvedState& state) {
  const auto prof = measure_sz_profile(chain, state);
  return pairwise_sum(prof);
}

double energy_expectation(const DenseChain& chain, const EvolvedState& state) {
  State h(state.psi.size());
  chain.apply_h0(state.psi.data(), h.data());
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    num += std::conj(state.psi[i]) * h[i];
    den += std::norm(state.psi[i]);
  }
  return num.real() / den;
}

SpinTrace oracle_trace(const ChainParams& params, const PulseSpec& pulse, const ScanGrid& grid,
                       EvolveOptions options) {
  const DenseChain chain(params);
  validate(grid, params.N);
  validate(pulse, params.N);
  const auto gs = ground_state(chain);
  const auto base = measure_sz_profile(chain, gs.state);

  SpinTrace trace;
  trace.grid = grid;
  trace.provenance.generator = "exact-oracle";
  trace.provenance.parameters = {
      {"chain.N", std::to_string(params.N)},     {"chain.J", format_double(params.J)},
      {"chain.gamma", format_double(params.gamma)}, {"chain.h0", format_double(params.h0)},
      {"pulse.h1", format_double(pulse.h1)},       {"pulse.tau_H", format_double(pulse.tau_H)},
      {"pulse.source_site", std::to_string(pulse.source_site)},
      {"pulse.t_start", format_double(pulse.t_start)},
  };
  const std::size_t nt = grid.times.size();
  trace.values.assign(grid.sites.size() * nt, 0.0);

  EvolvedState st = gs.state;
  st.t = grid.times.empty() ? 0.0 : std::min(grid.times.front(), pulse.t_start);
  for (std::size_t ti = 0; ti < nt; ++ti) {
    st = evolve(chain, pulse, std::move(st), grid.times[ti], options);
    const auto prof = measure_sz_profile(chain, st);
    for (std::size_t si = 0; si < grid.sites.size(); ++si) {
      const auto idx = static_cast<std::size_t>(grid.sites[si] - 1);
      trace.values[si * nt + ti] = prof[idx] - base[idx];
    }
  }
  return trace;
}

OracleComparison compare_first_order(const ChainParams& params, const PulseSpec& pulse,
                                     const ScanGrid& grid, EvolveOptions options) {
  OracleComparison c;
  c.exact = oracle_trace(params, pulse, grid, options);
  c.first_order = scan(build_kernel(params, pulse), grid);
  for (std::size_t i = 0; i < c.exact.values.size(); ++i) {
    c.exact_peak = std::max(c.exact_peak, std::abs(c.exact.values[i]));
    c.max_abs_difference =
        std::max(c.max_abs_difference, std::abs(c.exact.values[i] - c.first_order.values[i]));
  }
  c.relative = c.exact_peak > 0.0 ? c.max_abs_difference / c.exact_peak : 0.0;
  return c;
}

}  // namespace spinwave::oracle
