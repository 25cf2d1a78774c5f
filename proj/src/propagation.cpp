#include "spinwave/propagation.hpp"

#include <cmath>
#include <string>

#include "spinwave/error.hpp"
#include "spinwave/numeric.hpp"

namespace spinwave {

namespace {

constexpr double kSeriesThreshold = 1e-6;
constexpr double kResonanceThreshold = 1e-9;

int fold(int offset, int N) {
  int x = offset % N;
  if (x < 0) x += N;
  return std::min(x, N - x);
}

const char* parity_name(FermionParity p) { return p == FermionParity::Even ? "even" : "odd"; }

}  // namespace

void validate(const ScanGrid& grid, int N) {
  for (int s : grid.sites) {
    if (s < 1 || s > N) {
      throw ParameterError("scan.sites", "site " + std::to_string(s) + " is outside 1.." +
                                             std::to_string(N));
    }
  }
  for (std::size_t i = 0; i < grid.times.size(); ++i) {
    if (!std::isfinite(grid.times[i])) throw ParameterError("scan.times", "times must be finite");
    if (i > 0 && !(grid.times[i] > grid.times[i - 1])) {
      throw ParameterError("scan.times", "times must be strictly increasing");
    }
  }
}

ScanGrid uniform_times(std::vector<int> sites, double t_begin, double t_end, double dt) {
  if (!(dt > 0.0)) throw ParameterError("scan.dt", "time step must be positive");
  if (!(t_end >= t_begin)) throw ParameterError("scan.t_end", "end time precedes start time");
  ScanGrid g;
  g.sites = std::move(sites);
  // index-based so every sample is t_begin + i dt without accumulated drift
  const auto count = static_cast<std::size_t>(std::floor((t_end - t_begin) / dt + 1e-9)) + 1;
  g.times.reserve(count);
  for (std::size_t i = 0; i < count; ++i) g.times.push_back(t_begin + static_cast<double>(i) * dt);
  g.resolution = "dt=" + format_double(dt);
  return g;
}

std::vector<int> all_sites(int N) {
  std::vector<int> s(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  return s;
}

Provenance kernel_provenance(const ResponseKernel& kernel, std::string generator) {
  const auto& p = kernel.ground.params;
  const auto& q = kernel.pulse;
  Provenance prov;
  prov.generator = std::move(generator);
  prov.kernel_hash = kernel.hash;
  prov.parameters = {
      {"chain.N", std::to_string(p.N)},
      {"chain.J", format_double(p.J)},
      {"chain.gamma", format_double(p.gamma)},
      {"chain.h0", format_double(p.h0)},
      {"pulse.h1", format_double(q.h1)},
      {"pulse.tau_H", format_double(q.tau_H)},
      {"pulse.source_site", std::to_string(q.source_site)},
      {"pulse.t_start", format_double(q.t_start)},
      {"kernel.ground_sector", parity_name(kernel.ground.parity)},
      {"kernel.include_c_offset", kernel.include_c_offset ? "true" : "false"},
  };
  return prov;
}

SpinTrace scan(const ResponseKernel& kernel, const ScanGrid& grid) {
  validate(grid, kernel.N());
  SpinTrace trace;
  trace.grid = grid;
  trace.provenance = kernel_provenance(kernel, "first-order");
  const std::size_t nt = grid.times.size();
  trace.values.assign(grid.sites.size() * nt, 0.0);
  parallel_for(trace.values.size(), [&](std::size_t idx) {
    const std::size_t si = idx / nt;
    const std::size_t ti = idx % nt;
    trace.values[idx] = first_order_response(kernel, grid.sites[si], grid.times[ti]);
  });
  return trace;
}

SpinTrace profile_at_time(const ResponseKernel& kernel, double t, std::vector<int> sites) {
  ScanGrid g;
  g.sites = std::move(sites);
  g.times = {t};
  g.resolution = "t=" + format_double(t);
  return scan(kernel, g);
}

SpinTrace timeseries_at_site(const ResponseKernel& kernel, int site, std::vector<double> times) {
  ScanGrid g;
  g.sites = {site};
  g.times = std::move(times);
  g.resolution = "site=" + std::to_string(site);
  return scan(kernel, g);
}

void validate(const PulseTrain& train, int N) {
  validate(train.base, N);
  if (train.n_pulses < 1) throw ParameterError("train.n_pulses", "need at least one pulse");
  if (!(train.t0 > 10.0 * train.base.tau_H) || !std::isfinite(train.t0)) {
    throw ParameterError("train.t0", "pulse spacing must exceed 10 tau_H");
  }
}

double dirichlet_factor(int n, double omega, double t0) {
  const double x = 0.5 * omega * t0;
  const double s = std::sin(x);
  if (std::abs(s) < kSeriesThreshold) {
    // sin((n+1)x)/sin x = sum_{p=0}^{n} cos((n-2p)x), exact at the poles
    double acc = 0.0;
    for (int p = 0; p <= n; ++p) acc += std::cos(static_cast<double>(n - 2 * p) * x);
    return acc;
  }
  return std::sin(static_cast<double>(n + 1) * x) / s;
}

TrainResponse pulse_train_response(const ResponseKernel& kernel, const PulseTrain& train, int m,
                                   double t, TrainOptions options) {
  const int N = kernel.N();
  validate(train, N);
  if (train.base.tau_H != kernel.pulse.tau_H) {
    throw ParameterError("train.base.tau_H", "must equal the kernel's relaxation time");
  }
  if (m < 1 || m > N) throw ParameterError("site", "site outside 1.." + std::to_string(N));
  const int n = train.n_pulses - 1;
  const double last_start = train.base.t_start + n * train.t0;
  if (!(t >= last_start)) {
    throw ParameterError("t", "evaluation time precedes the last pulse of the train (" +
                                  format_double(last_start) + ")");
  }

  const double x = fold(m - train.base.source_site, N);
  const double shifted = t - train.base.t_start - 0.5 * n * train.t0;
  std::vector<double> coherent(kernel.entries.size());
  std::vector<double> at_start(kernel.entries.size());
  TrainResponse r;
  for (std::size_t i = 0; i < kernel.entries.size(); ++i) {
    const auto& e = kernel.entries[i];
    const double spatial = e.weight * std::cos(e.K * x) + e.weight_sum * std::cos(e.K_sum * x);
    if (spatial != 0.0 && std::abs(std::sin(0.5 * e.omega * train.t0)) < kResonanceThreshold) {
      ++r.resonant_channels;
    }
    const double wt = e.omega * shifted;
    const double S = dirichlet_factor(n, e.omega, train.t0);
    coherent[i] = 2.0 * S * (e.A * std::sin(wt) + e.B * std::cos(wt)) * spatial;
    at_start[i] = 2.0 * e.B * spatial;
  }
  r.coherent = train.base.h1 * pairwise_sum(coherent);

  if (kernel.include_c_offset) {
    const double rate = options.unit_rate_decay ? 1.0 : 1.0 / train.base.tau_H;
    const double base = pairwise_sum(at_start);
    double decay = 0.0;
    for (int p = 0; p <= n; ++p) {
      const double elapsed = t - train.base.t_start - p * train.t0;
      if (elapsed > 0.0) decay += std::exp(-elapsed * rate);
    }
    r.transient = -train.base.h1 * decay * base;
  }
  r.value = r.coherent + r.transient;
  return r;
}

double schedule_response(const ResponseKernel& kernel, const PulseSchedule& schedule, int site,
                         double t) {
  std::vector<double> parts;
  parts.reserve(schedule.size());
  for (const auto& p : schedule) {
    parts.push_back(p.h1 * unit_response(kernel, site - p.site, t - p.t_start));
  }
  return pairwise_sum(parts);
}

double solve_transport_field(const ResponseKernel& kernel, const PulseSchedule& existing,
                             double target, int site, double t_pulse, double t_eval) {
  const double unit = unit_response(kernel, 0, t_eval - t_pulse);
  if (!(std::abs(unit) >= 1e-12)) {
    throw NoSolutionError("unit-field response at site " + std::to_string(site) + " and t=" +
                          format_double(t_eval) + " is " + format_double(unit) +
                          "; the wave has a node there, try a different application time");
  }
  return (target - schedule_response(kernel, existing, site, t_eval)) / unit;
}

TransportResult transport_amplitude(const ResponseKernel& kernel, int hops, double t_first,
                                    double hop_dt) {
  if (hops < 0) throw ParameterError("transport.hops", "hop count must be nonnegative");
  if (!(hop_dt > 0.0)) throw ParameterError("transport.hop_dt", "hop interval must be positive");
  const int N = kernel.N();
  TransportResult res;
  res.schedule.push_back({kernel.pulse.source_site, kernel.pulse.h1, kernel.pulse.t_start});
  res.target = schedule_response(kernel, res.schedule, kernel.pulse.source_site, t_first);

  double t_prev = t_first;
  for (int j = 1; j <= hops; ++j) {
    TransportHop hop;
    hop.site = ((kernel.pulse.source_site - 1 - j) % N + N) % N + 1;
    hop.t_pulse = t_prev;
    hop.t_eval = t_prev + hop_dt;
    hop.before = schedule_response(kernel, res.schedule, hop.site, hop.t_eval);
    hop.field = solve_transport_field(kernel, res.schedule, res.target, hop.site, hop.t_pulse,
                                      hop.t_eval);
    res.schedule.push_back({hop.site, hop.field, hop.t_pulse});
    hop.achieved = schedule_response(kernel, res.schedule, hop.site, hop.t_eval);
    const double scale = std::max(std::abs(res.target), 1e-300);
    res.max_relative_error =
        std::max(res.max_relative_error, std::abs(hop.achieved - res.target) / scale);
    res.hops.push_back(hop);
    t_prev = hop.t_eval;
  }
  return res;
}

}  // namespace spinwave
