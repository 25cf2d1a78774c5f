#ifndef SPINWAVE_RING_GROUND_HPP
#define SPINWAVE_RING_GROUND_HPP

#include <optional>
#include <vector>

#include "spinwave/chain_spectrum.hpp"

namespace spinwave {

// Exact free-fermion ground state of the ring. After the Jordan-Wigner map the
// (N,1) bond is antiperiodic in the even-parity sector and periodic in the odd
// one, so the ground state is the lower of two block products:
//   even: N/2 paired blocks on the antiperiodic grid
//   odd:  N/2-1 paired blocks on the periodic grid, an empty phi=0 mode and a
//         filled phi=pi mode

enum class FermionParity { Even, Odd };

enum class LevelKind { Paired, EmptyMode, FilledMode };

struct GroundLevel {
  LevelKind kind = LevelKind::Paired;
  ModeLevel mode;
  double excitation = 0.0;  // physical energy of one quasiparticle in this level

  //! Amplitude left after a creation operator acts on the level's ground state.
  cplx creation_amplitude() const noexcept;
  //! Amplitude left after an annihilation operator acts on it.
  cplx annihilation_amplitude() const noexcept;
};

struct RingGround {
  ChainParams params;
  FermionParity parity = FermionParity::Even;
  double energy = 0.0;
  double even_energy = 0.0;
  double odd_energy = 0.0;
  bool near_degenerate = false;  // sectors within 1e-10 (relative); even is chosen
  std::vector<GroundLevel> levels;
};

double sector_ground_energy(const ChainParams& params, FermionParity parity);

//! Picks the lower sector unless `sector` forces one. Accepts N >= 2.
RingGround ring_ground_state(const ChainParams& params,
                             std::optional<FermionParity> sector = std::nullopt);

}  // namespace spinwave

#endif
