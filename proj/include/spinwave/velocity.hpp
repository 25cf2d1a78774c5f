#ifndef SPINWAVE_VELOCITY_HPP
#define SPINWAVE_VELOCITY_HPP

#include <string>
#include <vector>

#include "spinwave/chain_spectrum.hpp"

namespace spinwave {

//! Pair frequencies grouped by kappa = |k - l| over k, l in 1..N/2, k != l.
struct DispersionTable {
  int N = 0;
  std::vector<int> kappa;  // 1..N/2-1
  std::vector<double> omega_max;
  std::vector<double> omega_avg;
  std::vector<int> counts;
};

DispersionTable build_dispersion(const Spectrum& spectrum);

struct GroupVelocityCurve {
  int N = 0;
  std::vector<int> kappa;
  std::vector<double> K;  // 2 pi kappa / N
  std::vector<double> v_max;
  std::vector<double> v_avg;
  std::string scheme = "central second order, one-sided first order at endpoints";

  double peak_v_max() const;  // max |v_max|
  double peak_v_avg() const;  // max |v_avg|
};

//! dw/dK by finite differences with dK = 2 pi / N per kappa step.
GroupVelocityCurve group_velocities(const DispersionTable& table);

//! Derivative of samples y on a uniform grid of spacing h: central inside,
//! one-sided at both ends. Needs at least two samples.
std::vector<double> finite_difference(const std::vector<double>& y, double h);

enum class NormStrategy {
  QuasiparticleSum,  // J * sum_k 2 Lambda_k
  PeakBlock,         // J * (N/2) * max_k Lambda_k
  DenseSpectral,     // exact operator norm from the dense oracle, N <= 12
  UserSupplied,
};

const char* to_string(NormStrategy s);
NormStrategy parse_norm_strategy(const std::string& text);

//! Accepts N >= 2. `user_value` is only read for UserSupplied.
double hamiltonian_norm(const ChainParams& params, NormStrategy strategy, double user_value = 0.0);

struct LRBoundResult {
  int N = 0;
  double norm_H = 0.0;
  NormStrategy strategy = NormStrategy::UserSupplied;
  double v_LR = 0.0;  // e N norm_H / 2
  std::vector<double> a;    // log-spaced samples
  std::vector<double> v_a;  // N norm_H exp(a N) / (2 a N)
  double a_star = 0.0;      // argmin over the samples
  double grid_ratio = 0.0;  // a[i+1] / a[i]
};

//! `samples` points spanning [a_lo/N, a_hi/N] logarithmically.
LRBoundResult lr_bound(double norm_H, int N, NormStrategy strategy = NormStrategy::UserSupplied,
                       int samples = 4001, double a_lo = 1e-2, double a_hi = 1e2);

struct VelocityComparison {
  double v_group_max = 0.0;
  double v_group_avg = 0.0;
  double v_LR = 0.0;
  double ratio_max = 0.0;  // v_LR / v_group_max
  double ratio_avg = 0.0;
  double transit_max = 0.0;  // 1 / v_group_max, time per site
  double transit_avg = 0.0;
  bool bound_holds = false;
};

VelocityComparison compare_velocities(const GroupVelocityCurve& curve, const LRBoundResult& lr);

}  // namespace spinwave

#endif
