#ifndef SPINWAVE_RESPONSE_KERNEL_HPP
#define SPINWAVE_RESPONSE_KERNEL_HPP

#include <cstdint>
#include <vector>

#include "spinwave/chain_spectrum.hpp"
#include "spinwave/ring_ground.hpp"

namespace spinwave {

//! Local pulse h1 exp(-(t - t_start)/tau_H) S^z_{source_site}, S^z = sigma^z / 2.
struct PulseSpec {
  double h1 = 1.0;
  double tau_H = 1e-4;
  int source_site = 100;  // 1..N
  double t_start = 0.0;
};

void validate(const PulseSpec& pulse, int N);

struct ResponseAmplitudes {
  double A = 0.0;
  double B = 0.0;
};

//! A = (1/tau)/D, B = -omega/D with D = 1/tau^2 + omega^2.
ResponseAmplitudes response_amplitudes(double omega, double tau_H);

/// One ordered pair of ground-state levels (k, l) and the two-quasiparticle
/// excitations it generates.
///
/// The K branch lifts level k to momentum +phi_k and level l to -phi_l; the
/// sum branch is its reflected partner l -> -l with wavenumber phi_k + phi_l.
/// `weight` and `weight_sum` are the unit-field response weights, so the
/// first-order deviation is
///   h1 * sum_entries sum_branches weight * [A (sin psi+ + sin psi-) + B (cos psi+ + cos psi-)]
/// with psi+- = omega t +- K (n - source). Each weight is minus the squared
/// modulus of the n_s transition element; the ordered double sum counts each
/// two-state (+K, -K) excitation once.
struct ModePairEntry {
  int k = 0;
  int l = 0;
  double omega = 0.0;
  double K = 0.0;
  double K_sum = 0.0;
  cplx v2;      // <Psi0| V |K-branch state>, V = h1 S^z_source
  cplx v2_sum;  // same for the sum branch
  double weight = 0.0;
  double weight_sum = 0.0;
  double A = 0.0;
  double B = 0.0;
};

struct KernelOptions {
  //! Include the relaxation transient C(t, tau_H). It is O(h1 tau_H^2) and
  //! makes the deviation vanish exactly at the pulse start.
  bool include_c_offset = true;
};

struct ResponseKernel {
  RingGround ground;
  PulseSpec pulse;
  std::vector<ModePairEntry> entries;  // row-major over ground.levels x ground.levels
  bool include_c_offset = true;
  std::uint64_t hash = 0;

  int N() const noexcept { return ground.params.N; }
  std::size_t level_count() const noexcept { return ground.levels.size(); }
};

ResponseKernel build_kernel(const ChainParams& params, const PulseSpec& pulse,
                            KernelOptions options = {});
ResponseKernel build_kernel(RingGround ground, const PulseSpec& pulse, KernelOptions options = {});

//! K-branch transition elements v2_kl, row-major over the ground levels.
std::vector<cplx> derive_v2_elements(const RingGround& ground, const PulseSpec& pulse);

//! 2/N sum_k |alpha2_k|^2 - 1/2 over the spectrum's blocks.
double zeroth_order(const Spectrum& spectrum);
//! Exact ground-state <S^z_n> of the ring (site independent).
double zeroth_order(const RingGround& ground);

//! Oscillating part per unit field; `offset` is n - source in sites.
double unit_steady_response(const ResponseKernel& kernel, int offset, double elapsed);
//! Full unit-field response, strictly causal: 0 for elapsed <= 0.
double unit_response(const ResponseKernel& kernel, int offset, double elapsed);

//! C(t, tau_H) for the kernel's own pulse at absolute time t.
double relaxation_offset(const ResponseKernel& kernel, int site, double t);

//! First-order deviation of <S^z_site(t)> from the ground-state value.
double first_order_response(const ResponseKernel& kernel, int site, double t);

struct SecondOrderStrengths {
  double S1 = 0.0;  // h1^2 tau^2
  double S2 = 0.0;  // h1^2 / D^2
  double S3 = 0.0;  // h1^2 / (tau D)
  double D = 0.0;   // 1/tau^2 + delta_eps^2
  double delta_eps = 0.0;
};

SecondOrderStrengths second_order_strengths(const PulseSpec& pulse, double delta_eps);
//! Uses the smallest nonzero single-particle gap of the spectrum (worst case).
SecondOrderStrengths second_order_strengths(const PulseSpec& pulse, const Spectrum& spectrum);

}  // namespace spinwave

#endif
