#include "spinwave/chain_spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spinwave/error.hpp"

namespace spinwave {

namespace {

constexpr double kResidualBound = 1e-10;

struct Block2 {
  double a;  // <0|H|0>
  double b;  // <pair|H|pair>
  cplx x;    // <0|H|pair>
};

Block2 paired_block(double phi, double gamma, double h) {
  const double delta_p = -2.0 * gamma * std::sin(phi);
  return {h, 2.0 * std::cos(phi) - h, cplx(0.0, 0.5 * delta_p)};
}

// Unit eigenvector of the 2x2 block for eigenvalue eps. The two closed forms
// (eps - b, x*) and (x, eps - a) are parallel; the larger one is used.
std::array<cplx, 2> block_vector(const Block2& blk, double eps, bool lower) {
  const std::array<cplx, 2> c1{cplx(eps - blk.b), std::conj(blk.x)};
  const std::array<cplx, 2> c2{blk.x, cplx(eps - blk.a)};
  const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
  const double n2 = std::sqrt(std::norm(c2[0]) + std::norm(c2[1]));
  const double scale = 1.0 + std::abs(blk.a) + std::abs(blk.b) + std::abs(blk.x);
  if (std::max(n1, n2) <= 1e-14 * scale) {
    // decoupled and degenerate: lower level takes |0>, upper takes |pair>
    return lower ? std::array<cplx, 2>{1.0, 0.0} : std::array<cplx, 2>{0.0, 1.0};
  }
  if (n1 >= n2) return {c1[0] / n1, c1[1] / n1};
  return {c2[0] / n2, c2[1] / n2};
}

}  // namespace

void validate(const ChainParams& p, int min_sites) {
  if (p.N < min_sites) {
    throw ParameterError("chain.N", "site count " + std::to_string(p.N) + " is below the minimum " +
                                        std::to_string(min_sites));
  }
  if (p.N % 2 != 0) {
    throw ParameterError("chain.N", "site count must be even, got " + std::to_string(p.N));
  }
  if (!(p.J > 0.0) || !std::isfinite(p.J)) {
    throw ParameterError("chain.J", "coupling must be finite and positive");
  }
  if (!std::isfinite(p.gamma)) throw ParameterError("chain.gamma", "anisotropy must be finite");
  if (!std::isfinite(p.h0)) throw ParameterError("chain.h0", "transverse field must be finite");
}

double grid_angle(MomentumGrid grid, int k, int N) {
  const double shift = grid == MomentumGrid::Antiperiodic ? 0.5 : 0.0;
  return 2.0 * std::numbers::pi * (static_cast<double>(k) - shift) / static_cast<double>(N);
}

double quasiparticle_energy(double phi, double gamma, double h) {
  const double d = std::cos(phi) - h;
  const double s = gamma * std::sin(phi);
  return std::sqrt(d * d + s * s);
}

std::array<std::array<cplx, 4>, 4> block_hamiltonian(double phi, double gamma, double h) {
  const Block2 blk = paired_block(phi, gamma, h);
  std::array<std::array<cplx, 4>, 4> m{};
  m[0][0] = blk.a;
  m[0][1] = blk.x;
  m[1][0] = std::conj(blk.x);
  m[1][1] = blk.b;
  m[2][2] = std::cos(phi);
  m[3][3] = std::cos(phi);
  return m;
}

ModeLevel make_mode_level(int k, double phi, double gamma, double h) {
  ModeLevel level;
  level.k = k;
  level.phi = phi;
  const double c = std::cos(phi);
  const double lam = quasiparticle_energy(phi, gamma, h);
  level.eps1 = c - lam;
  level.eps2 = c + lam;
  level.eps3 = c;
  level.eps4 = c;
  level.delta_p = -2.0 * gamma * std::sin(phi);

  const Block2 blk = paired_block(phi, gamma, h);
  const auto alpha = block_vector(blk, level.eps1, true);
  const auto beta = block_vector(blk, level.eps2, false);
  level.alpha1 = alpha[0];
  level.alpha2 = alpha[1];
  level.beta1 = beta[0];
  level.beta2 = beta[1];

  if (const double r = block_residual(level, gamma, h); !(r < kResidualBound)) {
    throw std::logic_error("momentum block k=" + std::to_string(k) +
                           " failed the eigenvector residual check (" + std::to_string(r) + ")");
  }
  return level;
}

double block_residual(const ModeLevel& level, double gamma, double h) {
  const auto m = block_hamiltonian(level.phi, gamma, h);
  const std::array<std::array<cplx, 4>, 4> vecs{{
      {level.alpha1, level.alpha2, 0.0, 0.0},
      {level.beta1, level.beta2, 0.0, 0.0},
      {0.0, 0.0, 1.0, 0.0},
      {0.0, 0.0, 0.0, 1.0},
  }};
  const std::array<double, 4> eps{level.eps1, level.eps2, level.eps3, level.eps4};
  double worst = 0.0;
  for (std::size_t v = 0; v < 4; ++v) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      cplx acc = -eps[v] * vecs[v][i];
      for (std::size_t j = 0; j < 4; ++j) acc += m[i][j] * vecs[v][j];
      r2 += std::norm(acc);
    }
    worst = std::max(worst, std::sqrt(r2));
  }
  return worst;
}

namespace detail {
std::vector<ModeLevel> build_levels(const ChainParams& params, MomentumGrid grid, int first_k,
                                    int last_k) {
  const double h = params.reduced_field();
  std::vector<ModeLevel> levels;
  levels.reserve(static_cast<std::size_t>(std::max(0, last_k - first_k + 1)));
  for (int k = first_k; k <= last_k; ++k) {
    levels.push_back(make_mode_level(k, grid_angle(grid, k, params.N), params.gamma, h));
  }
  return levels;
}
}  // namespace detail

Spectrum build_spectrum(const ChainParams& params, MomentumGrid grid) {
  validate(params, 4);
  return Spectrum{params, grid, detail::build_levels(params, grid, 1, params.N / 2)};
}

double ground_state_energy_scale(const Spectrum& spectrum) {
  double sum = 0.0;
  for (const auto& level : spectrum.levels) sum += 2.0 * level.quasiparticle();
  return sum;
}

double ground_state_energy_scale(const ChainParams& params) {
  validate(params, 2);
  return ground_state_energy_scale(
      Spectrum{params, MomentumGrid::Periodic,
               detail::build_levels(params, MomentumGrid::Periodic, 1, params.N / 2)});
}

double pair_frequency(const ModeLevel& k, const ModeLevel& l, double J) {
  return kBlockEnergyScale * J * (k.eps3 + l.eps4 - k.eps1 - l.eps1);
}

}  // namespace spinwave
