#ifndef SPINWAVE_EXACT_ORACLE_HPP
#define SPINWAVE_EXACT_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "spinwave/chain_spectrum.hpp"
#include "spinwave/propagation.hpp"
#include "spinwave/response_kernel.hpp"

// Brute-force ground truth on the full 2^N space. Basis state bit i set means
// site i+1 is spin down; S^z = sigma^z / 2.
namespace spinwave::oracle {

inline constexpr int kMaxSites = 12;

class DenseChain {
 public:
  //! Throws StateSpaceError for N > kMaxSites, ParameterError for invalid params.
  explicit DenseChain(const ChainParams& params);

  const ChainParams& params() const noexcept { return params_; }
  std::size_t dimension() const noexcept { return diag_.size(); }

  //! out = H0 in
  void apply_h0(const cplx* in, cplx* out) const;
  //! out = (H0 + field * S^z_site) in
  void apply(const cplx* in, cplx* out, int site, double field) const;

  //! S^z of one site (1..N) in a basis state: +1/2 or -1/2.
  static double sz(std::uint32_t state, int site) noexcept {
    return ((state >> (site - 1)) & 1u) ? -0.5 : 0.5;
  }

  double h0_element(std::uint32_t row, std::uint32_t col) const;
  //! Row-major dense H0 (real symmetric).
  std::vector<double> dense_h0() const;

 private:
  ChainParams params_;
  std::vector<double> diag_;
  std::vector<std::uint32_t> bond_masks_;
  std::vector<std::uint32_t> bond_first_bit_;
  std::vector<std::uint32_t> bond_second_bit_;
};

struct EvolvedState {
  std::vector<cplx> psi;
  double t = 0.0;
  double norm() const;
};

struct GroundStateResult {
  EvolvedState state;
  double energy = 0.0;
  double gap = 0.0;  // to the next eigenvalue of H0
  bool degenerate = false;                // gap < 1e-10
  std::optional<EvolvedState> partner;    // second vector when degenerate
};

GroundStateResult ground_state(const DenseChain& chain);

//! All eigenvalues of H0, ascending.
std::vector<double> dense_spectrum(const DenseChain& chain);
//! max |eigenvalue of H0|. Throws StateSpaceError for N > 12.
double dense_norm(const ChainParams& params);

struct EvolveOptions {
  double dt_free = 0.01;      // step cap once the pulse has relaxed
  double active_window = 40;  // pulse counts as active for this many tau_H
  double target_error = 1e-12;  // per-step controller target
  double reject_error = 1e-10;  // larger local error at the minimum step is fatal
  double min_dt = 1e-9;
};

struct EvolveStats {
  long accepted = 0;
  long rejected = 0;
  double max_local_error = 0.0;
};

//! Integrates i d psi/dt = (H0 + h1 exp(-(t - t_start)/tau_H) S^z_source) psi
//! from state.t to t_end with RK4 and step doubling. The field is zero before
//! t_start; step size is capped at tau_H/10 while the pulse is active.
//! Throws StepSizeError if the local error cannot be brought below reject_error.
EvolvedState evolve(const DenseChain& chain, const PulseSpec& pulse, EvolvedState state,
                    double t_end, EvolveOptions options = {}, EvolveStats* stats = nullptr);

//! Fixed-step classical RK4 (no error control); for convergence checks.
EvolvedState evolve_fixed(const DenseChain& chain, const PulseSpec& pulse, EvolvedState state,
                          double t_end, double dt);

//! <S^z_n> for n = 1..N, normalized by the state norm.
std::vector<double> measure_sz_profile(const DenseChain& chain, const EvolvedState& state);
double total_sz(const DenseChain& chain, const EvolvedState& state);
double energy_expectation(const DenseChain& chain, const EvolvedState& state);

//! Exact deviation <S^z_n(t)> - <S^z_n>_ground over the grid (times ascending,
//! nonnegative). Uses the same schema as the first-order trace.
SpinTrace oracle_trace(const ChainParams& params, const PulseSpec& pulse, const ScanGrid& grid,
                       EvolveOptions options = {});

struct OracleComparison {
  double max_abs_difference = 0.0;
  double exact_peak = 0.0;
  double relative = 0.0;  // max_abs_difference / exact_peak
  SpinTrace exact;
  SpinTrace first_order;
};

//! First-order kernel vs exact dynamics on the same grid.
OracleComparison compare_first_order(const ChainParams& params, const PulseSpec& pulse,
                                     const ScanGrid& grid, EvolveOptions options = {});

}  // namespace spinwave::oracle

#endif
