#include "spinwave/response_kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "spinwave/error.hpp"
#include "spinwave/numeric.hpp"

namespace spinwave {

namespace {

struct BranchAmplitudes {
  cplx diff;  // <K-branch state| n_s |Psi0> without the site phase
  cplx sum;
};

// Transition amplitudes of the site-local number operator between the ground
// state and the excitations of levels i, j. u and v are what is left of a level
// after a creation or annihilation operator acts on it.
BranchAmplitudes transition_amplitudes(const GroundLevel& a, const GroundLevel& b, bool same,
                                       double N) {
  if (same) {
    if (a.kind != LevelKind::Paired) return {};
    // alpha -> beta inside one block: both quasiparticles on the same k
    return {2.0 * std::conj(a.mode.beta2) * a.mode.alpha2 / N, 0.0};
  }
  const cplx ua = a.creation_amplitude(), va = a.annihilation_amplitude();
  const cplx ub = b.creation_amplitude(), vb = b.annihilation_amplitude();
  BranchAmplitudes amp{(ua * vb + va * ub) / N, 0.0};
  if (a.kind == LevelKind::Paired && b.kind == LevelKind::Paired) {
    amp.sum = (va * ub - ua * vb) / N;
  }
  return amp;
}

// cos(K x) is even and N-periodic in x for every K on the ring grids, so the
// offset can be folded into [0, N/2]; this also makes n and N-n bit-identical.
int fold_offset(int offset, int N) {
  int x = offset % N;
  if (x < 0) x += N;
  return std::min(x, N - x);
}

// sum_e 2 (A sin(w t) + B cos(w t)) (w_K cos(K x) + w_S cos(K_S x))
double steady_sum(const ResponseKernel& kernel, int x, double elapsed) {
  thread_local std::vector<double> terms;
  terms.resize(kernel.entries.size());
  const double xd = static_cast<double>(x);
  for (std::size_t i = 0; i < kernel.entries.size(); ++i) {
    const auto& e = kernel.entries[i];
    const double spatial = e.weight * std::cos(e.K * xd) + e.weight_sum * std::cos(e.K_sum * xd);
    const double wt = e.omega * elapsed;
    terms[i] = 2.0 * (e.A * std::sin(wt) + e.B * std::cos(wt)) * spatial;
  }
  return pairwise_sum(terms);
}

}  // namespace

void validate(const PulseSpec& pulse, int N) {
  if (!std::isfinite(pulse.h1)) throw ParameterError("pulse.h1", "field strength must be finite");
  if (!(pulse.tau_H > 0.0) || !std::isfinite(pulse.tau_H)) {
    throw ParameterError("pulse.tau_H",
                         "relaxation time must be positive: the pulse h1 exp(-t/tau_H) needs "
                         "tau_H > 0 to relax");
  }
  if (pulse.source_site < 1 || pulse.source_site > N) {
    throw ParameterError("pulse.source_site", "source site " + std::to_string(pulse.source_site) +
                                                  " is outside 1.." + std::to_string(N));
  }
  if (!std::isfinite(pulse.t_start)) throw ParameterError("pulse.t_start", "start time must be finite");
}

ResponseAmplitudes response_amplitudes(double omega, double tau_H) {
  const double inv = 1.0 / tau_H;
  const double D = inv * inv + omega * omega;
  return {inv / D, -omega / D};
}

std::vector<cplx> derive_v2_elements(const RingGround& ground, const PulseSpec& pulse) {
  validate(pulse, ground.params.N);
  const std::size_t L = ground.levels.size();
  const double N = ground.params.N;
  const double s = pulse.source_site;
  std::vector<cplx> v2(L * L);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      const auto& a = ground.levels[i];
      const auto& b = ground.levels[j];
      const auto amp = transition_amplitudes(a, b, i == j, N);
      const double K = a.mode.phi - b.mode.phi;
      v2[i * L + j] = pulse.h1 * std::polar(1.0, K * s) * std::conj(amp.diff);
    }
  }
  return v2;
}

ResponseKernel build_kernel(const ChainParams& params, const PulseSpec& pulse,
                            KernelOptions options) {
  return build_kernel(ring_ground_state(params), pulse, options);
}

ResponseKernel build_kernel(RingGround ground, const PulseSpec& pulse, KernelOptions options) {
  validate(pulse, ground.params.N);
  ResponseKernel kernel;
  kernel.ground = std::move(ground);
  kernel.pulse = pulse;
  kernel.include_c_offset = options.include_c_offset;

  const auto& levels = kernel.ground.levels;
  const std::size_t L = levels.size();
  const double N = kernel.ground.params.N;
  const double s = pulse.source_site;
  kernel.entries.resize(L * L);

  parallel_for(L, [&](std::size_t i) {
    for (std::size_t j = 0; j < L; ++j) {
      const auto& a = levels[i];
      const auto& b = levels[j];
      const bool same = i == j;
      ModePairEntry e;
      e.k = a.mode.k;
      e.l = b.mode.k;
      e.K = same ? 0.0 : a.mode.phi - b.mode.phi;
      e.K_sum = a.mode.phi + b.mode.phi;
      e.omega = a.excitation + b.excitation;
      const auto amp = transition_amplitudes(a, b, same, N);
      double wd = -std::norm(amp.diff);
      // the (0, pi) pair is reached from both orderings; split it evenly
      if (!same && a.kind != LevelKind::Paired && b.kind != LevelKind::Paired) wd *= 0.5;
      e.weight = wd;
      e.weight_sum = -std::norm(amp.sum);
      e.v2 = pulse.h1 * std::polar(1.0, e.K * s) * std::conj(amp.diff);
      e.v2_sum = pulse.h1 * std::polar(1.0, e.K_sum * s) * std::conj(amp.sum);
      const auto ab = response_amplitudes(e.omega, pulse.tau_H);
      e.A = ab.A;
      e.B = ab.B;
      kernel.entries[i * L + j] = e;
    }
  });

  Fnv1a h;
  const auto& p = kernel.ground.params;
  h.add(std::int64_t{p.N}).add(p.J).add(p.gamma).add(p.h0);
  h.add(pulse.h1).add(pulse.tau_H).add(std::int64_t{pulse.source_site}).add(pulse.t_start);
  h.add(std::int64_t{kernel.ground.parity == FermionParity::Even ? 0 : 1});
  h.add(std::int64_t{kernel.include_c_offset ? 1 : 0});
  for (const auto& e : kernel.entries) {
    h.add(e.omega).add(e.K).add(e.K_sum).add(e.weight).add(e.weight_sum).add(e.A).add(e.B);
  }
  kernel.hash = h.value();
  return kernel;
}

double zeroth_order(const Spectrum& spectrum) {
  std::vector<double> terms;
  terms.reserve(spectrum.levels.size());
  for (const auto& l : spectrum.levels) terms.push_back(std::norm(l.alpha2));
  return 2.0 / spectrum.params.N * pairwise_sum(terms) - 0.5;
}

double zeroth_order(const RingGround& ground) {
  std::vector<double> terms;
  terms.reserve(ground.levels.size());
  for (const auto& l : ground.levels) {
    switch (l.kind) {
      case LevelKind::Paired: terms.push_back(2.0 * std::norm(l.mode.alpha2)); break;
      case LevelKind::EmptyMode: break;
      case LevelKind::FilledMode: terms.push_back(1.0); break;
    }
  }
  return pairwise_sum(terms) / ground.params.N - 0.5;
}

double unit_steady_response(const ResponseKernel& kernel, int offset, double elapsed) {
  return steady_sum(kernel, fold_offset(offset, kernel.N()), elapsed);
}

double unit_response(const ResponseKernel& kernel, int offset, double elapsed) {
  if (!(elapsed > 0.0)) return 0.0;
  const int x = fold_offset(offset, kernel.N());
  double value = steady_sum(kernel, x, elapsed);
  if (kernel.include_c_offset) {
    value -= std::exp(-elapsed / kernel.pulse.tau_H) * steady_sum(kernel, x, 0.0);
  }
  return value;
}

double relaxation_offset(const ResponseKernel& kernel, int site, double t) {
  const double elapsed = t - kernel.pulse.t_start;
  if (!(elapsed > 0.0)) return 0.0;
  const int x = fold_offset(site - kernel.pulse.source_site, kernel.N());
  return -kernel.pulse.h1 * std::exp(-elapsed / kernel.pulse.tau_H) * steady_sum(kernel, x, 0.0);
}

double first_order_response(const ResponseKernel& kernel, int site, double t) {
  return kernel.pulse.h1 *
         unit_response(kernel, site - kernel.pulse.source_site, t - kernel.pulse.t_start);
}

SecondOrderStrengths second_order_strengths(const PulseSpec& pulse, double delta_eps) {
  SecondOrderStrengths s;
  const double inv = 1.0 / pulse.tau_H;
  const double h2 = pulse.h1 * pulse.h1;
  s.delta_eps = delta_eps;
  s.D = inv * inv + delta_eps * delta_eps;
  s.S1 = h2 * pulse.tau_H * pulse.tau_H;
  s.S2 = h2 / (s.D * s.D);
  s.S3 = h2 / (pulse.tau_H * s.D);
  return s;
}

SecondOrderStrengths second_order_strengths(const PulseSpec& pulse, const Spectrum& spectrum) {
  double gap = std::numeric_limits<double>::infinity();
  const double scale = kBlockEnergyScale * spectrum.params.J;
  for (const auto& l : spectrum.levels) {
    const double lam = scale * l.quasiparticle();
    if (lam > 1e-12) gap = std::min(gap, lam);
  }
  if (!std::isfinite(gap)) gap = 0.0;
  return second_order_strengths(pulse, gap);
}

}  // namespace spinwave
