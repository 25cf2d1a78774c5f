#ifndef SPINWAVE_CHAIN_SPECTRUM_HPP
#define SPINWAVE_CHAIN_SPECTRUM_HPP

#include <array>
#include <complex>
#include <vector>

namespace spinwave {

using cplx = std::complex<double>;

//! Periodic anisotropic XY ring
//!   H0 = J/2 (1+gamma) sum sx_i sx_{i+1} + J/2 (1-gamma) sum sy_i sy_{i+1} - h0 sum sz_i
//! with Pauli matrices and the (N,1) bond included.
struct ChainParams {
  int N = 100;
  double J = 1.0;
  double gamma = 0.5;
  double h0 = 0.5;

  //! Field in units of the coupling; the momentum blocks only see this ratio.
  double reduced_field() const noexcept { return h0 / J; }
};

//! Throws ParameterError unless N is even and >= min_sites, J > 0 and the
//! couplings are finite. Analytic spectra need min_sites = 4; the dense
//! oracle and the free-fermion ground state accept 2.
void validate(const ChainParams& params, int min_sites = 4);

//! Momentum set used to label the N/2 blocks.
//!  - Periodic:     phi_k = 2 pi k / N,       k = 1..N/2 (the published grid)
//!  - Antiperiodic: phi_k = 2 pi (k - 1/2)/N, k = 1..N/2 (exact even-parity blocks)
enum class MomentumGrid { Periodic, Antiperiodic };

double grid_angle(MomentumGrid grid, int k, int N);

/// One 4-state momentum block {|0>, a+_k a+_-k |0>, a+_k |0>, a+_-k |0>}.
///
/// Energies are block energies in units of J: eps1,2 = cos(phi) -/+ Lambda,
/// eps3 = eps4 = cos(phi), with Lambda = sqrt((cos phi - h)^2 + gamma^2 sin^2 phi).
/// The energies of H0 itself are kBlockEnergyScale * J times these (up to a
/// constant), so every physical frequency carries that factor.
///
/// alpha = (alpha1, alpha2) is the lower eigenvector of the paired 2x2 block,
/// beta the upper one, both on the basis (|0>, |pair>).
struct ModeLevel {
  int k = 0;
  double phi = 0.0;
  double eps1 = 0.0, eps2 = 0.0, eps3 = 0.0, eps4 = 0.0;
  cplx alpha1, alpha2, beta1, beta2;
  double delta_p = 0.0;  // pairing term -2 gamma sin(phi)

  double quasiparticle() const noexcept { return 0.5 * (eps2 - eps1); }
};

inline constexpr double kBlockEnergyScale = 2.0;

struct Spectrum {
  ChainParams params;
  MomentumGrid grid = MomentumGrid::Periodic;
  std::vector<ModeLevel> levels;  // k = 1..N/2, sorted by k
};

//! Lambda(phi) = sqrt((cos phi - h)^2 + gamma^2 sin^2 phi), h = h0/J.
double quasiparticle_energy(double phi, double gamma, double h);

//! Diagonalizes one block. Eigenvectors follow the closed forms with
//! normalization N1, N2; when both closed forms vanish (gamma sin phi = 0 and
//! the level sits on a diagonal entry) the decoupled basis vector is used.
//! Throws std::logic_error if the residual |H psi - eps psi| exceeds 1e-10.
ModeLevel make_mode_level(int k, double phi, double gamma, double h);

//! The 4x4 block Hamiltonian in the basis {|0>, |pair>, |k>, |-k>}.
std::array<std::array<cplx, 4>, 4> block_hamiltonian(double phi, double gamma, double h);

//! max over the four eigenpairs of |H psi - eps psi|.
double block_residual(const ModeLevel& level, double gamma, double h);

Spectrum build_spectrum(const ChainParams& params, MomentumGrid grid = MomentumGrid::Periodic);

//! Sum over k of 2 Lambda_k on the periodic grid. Accepts N >= 2.
double ground_state_energy_scale(const ChainParams& params);
double ground_state_energy_scale(const Spectrum& spectrum);

//! Physical frequency of the excitation that lifts block k to |k> and block l
//! to |-l>: kBlockEnergyScale * J * (eps3_k + eps4_l - eps1_k - eps1_l).
double pair_frequency(const ModeLevel& k, const ModeLevel& l, double J);

namespace detail {
std::vector<ModeLevel> build_levels(const ChainParams& params, MomentumGrid grid, int first_k,
                                    int last_k);
}

}  // namespace spinwave

#endif
