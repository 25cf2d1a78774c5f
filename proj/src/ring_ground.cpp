#include "spinwave/ring_ground.hpp"

#include <cmath>
#include <numbers>

namespace spinwave {

cplx GroundLevel::creation_amplitude() const noexcept {
  switch (kind) {
    case LevelKind::Paired: return mode.alpha1;
    case LevelKind::EmptyMode: return 1.0;
    case LevelKind::FilledMode: return 0.0;
  }
  return 0.0;
}

cplx GroundLevel::annihilation_amplitude() const noexcept {
  switch (kind) {
    case LevelKind::Paired: return mode.alpha2;
    case LevelKind::EmptyMode: return 0.0;
    case LevelKind::FilledMode: return 1.0;
  }
  return 0.0;
}

double sector_ground_energy(const ChainParams& params, FermionParity parity) {
  validate(params, 2);
  const int half = params.N / 2;
  double sum = 0.0;
  if (parity == FermionParity::Even) {
    for (const auto& l : detail::build_levels(params, MomentumGrid::Antiperiodic, 1, half)) {
      sum += l.eps1;
    }
    return params.J * kBlockEnergyScale * sum;
  }
  for (const auto& l : detail::build_levels(params, MomentumGrid::Periodic, 1, half - 1)) {
    sum += l.eps1;
  }
  // the N h0 constant, the paired -h0 shifts and the filled pi mode net to -2J
  return params.J * (kBlockEnergyScale * sum - 2.0);
}

RingGround ring_ground_state(const ChainParams& params, std::optional<FermionParity> sector) {
  validate(params, 2);
  RingGround g;
  g.params = params;
  g.even_energy = sector_ground_energy(params, FermionParity::Even);
  g.odd_energy = sector_ground_energy(params, FermionParity::Odd);
  const double scale = std::max(1.0, std::abs(g.even_energy));
  g.near_degenerate = std::abs(g.even_energy - g.odd_energy) < 1e-10 * scale;
  if (sector) {
    g.parity = *sector;
  } else {
    g.parity = (g.near_degenerate || g.even_energy < g.odd_energy) ? FermionParity::Even
                                                                    : FermionParity::Odd;
  }
  g.energy = g.parity == FermionParity::Even ? g.even_energy : g.odd_energy;

  const int half = params.N / 2;
  const double h = params.reduced_field();
  const auto paired = [&](const ModeLevel& m) {
    return GroundLevel{LevelKind::Paired, m, params.J * kBlockEnergyScale * m.quasiparticle()};
  };
  if (g.parity == FermionParity::Even) {
    for (const auto& m : detail::build_levels(params, MomentumGrid::Antiperiodic, 1, half)) {
      g.levels.push_back(paired(m));
    }
    return g;
  }
  // xi(phi) = 2J (cos phi - h) is the bare energy of an unpaired mode
  g.levels.push_back(GroundLevel{LevelKind::EmptyMode, make_mode_level(0, 0.0, params.gamma, h),
                                 2.0 * params.J * (1.0 - h)});
  for (const auto& m : detail::build_levels(params, MomentumGrid::Periodic, 1, half - 1)) {
    g.levels.push_back(paired(m));
  }
  g.levels.push_back(GroundLevel{LevelKind::FilledMode,
                                 make_mode_level(half, std::numbers::pi, params.gamma, h),
                                 2.0 * params.J * (1.0 + h)});
  return g;
}

}  // namespace spinwave
