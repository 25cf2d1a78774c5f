#ifndef SPINWAVE_PROPAGATION_HPP
#define SPINWAVE_PROPAGATION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spinwave/response_kernel.hpp"

namespace spinwave {

struct ScanGrid {
  std::vector<int> sites;     // 1..N
  std::vector<double> times;  // strictly increasing
  std::string resolution;     // free-form note, e.g. "dt=0.5"
};

//! Throws ParameterError if times are not strictly increasing or a site is outside 1..N.
void validate(const ScanGrid& grid, int N);

ScanGrid uniform_times(std::vector<int> sites, double t_begin, double t_end, double dt);
std::vector<int> all_sites(int N);

struct Provenance {
  std::string generator;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t kernel_hash = 0;
};

//! Parameter snapshot of a kernel (chain, pulse, ground sector, C switch).
Provenance kernel_provenance(const ResponseKernel& kernel, std::string generator);

struct SpinTrace {
  ScanGrid grid;
  std::vector<double> values;  // row-major: values[site_index * times.size() + time_index]
  Provenance provenance;

  double at(std::size_t site_index, std::size_t time_index) const {
    return values[site_index * grid.times.size() + time_index];
  }
};

//! First-order deviations over the grid, evaluated in parallel.
SpinTrace scan(const ResponseKernel& kernel, const ScanGrid& grid);
SpinTrace profile_at_time(const ResponseKernel& kernel, double t, std::vector<int> sites);
SpinTrace timeseries_at_site(const ResponseKernel& kernel, int site, std::vector<double> times);

// ---- pulse trains -----------------------------------------------------------

//! n_pulses copies of `base`, started at base.t_start + p t0 for p = 0..n_pulses-1.
struct PulseTrain {
  int n_pulses = 1;
  double t0 = 1.0;
  PulseSpec base;
};

void validate(const PulseTrain& train, int N);

//! sin((n+1) x) / sin x with x = omega t0 / 2. Near the poles the exact finite
//! sum of cosines is used instead of the ratio, so the n+1 limit is exact.
double dirichlet_factor(int n, double omega, double t0);

struct TrainOptions {
  //! Use the printed transient decay exp(-(t - p t0)) without 1/tau_H.
  bool unit_rate_decay = false;
};

struct TrainResponse {
  double value = 0.0;      // transient + coherent
  double transient = 0.0;  // relaxation transients of all pulses
  double coherent = 0.0;   // Dirichlet-weighted oscillating part
  int resonant_channels = 0;  // entries with |sin(omega t0 / 2)| < 1e-9
};

//! Response at site m after the whole train has started (t >= last start);
//! throws ParameterError otherwise. The kernel supplies frequencies, weights
//! and amplitudes; the pulse parameters come from train.base.
TrainResponse pulse_train_response(const ResponseKernel& kernel, const PulseTrain& train, int m,
                                   double t, TrainOptions options = {});

// ---- amplitude transport ------------------------------------------------------

struct ScheduledPulse {
  int site = 1;
  double h1 = 0.0;
  double t_start = 0.0;
};

using PulseSchedule = std::vector<ScheduledPulse>;

//! Sum of causal first-order responses of all scheduled pulses. Each pulse
//! uses the kernel's tau_H and is translated to its own site.
double schedule_response(const ResponseKernel& kernel, const PulseSchedule& schedule, int site,
                         double t);

//! Field h1' of a new pulse at `site` starting at t_pulse such that the total
//! response at (site, t_eval) equals `target`. Throws NoSolutionError when the
//! unit response there is below 1e-12 in magnitude (a node of the wave).
double solve_transport_field(const ResponseKernel& kernel, const PulseSchedule& existing,
                             double target, int site, double t_pulse, double t_eval);

struct TransportHop {
  int site = 0;
  double t_pulse = 0.0;
  double t_eval = 0.0;
  double field = 0.0;
  double before = 0.0;    // response at (site, t_eval) without the new pulse
  double achieved = 0.0;  // re-evaluated with the new pulse
};

struct TransportResult {
  double target = 0.0;  // amplitude at the source at t_first
  std::vector<TransportHop> hops;
  PulseSchedule schedule;
  double max_relative_error = 0.0;
};

//! Moves the amplitude at the source site toward lower site indices, one site
//! per hop_dt. Hop j applies its correction at site source-j when hop j-1 is
//! read out and is itself read out hop_dt later.
TransportResult transport_amplitude(const ResponseKernel& kernel, int hops, double t_first,
                                    double hop_dt);

}  // namespace spinwave

#endif
