#include "spinwave/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <map>

#include "spinwave/error.hpp"
#include "spinwave/exact_oracle.hpp"
#include "spinwave/numeric.hpp"
#include "spinwave/propagation.hpp"
#include "spinwave/velocity.hpp"

namespace spinwave::io {

namespace {

std::vector<int> sites_or_all(const RunConfig& c) {
  return c.scan.sites.empty() ? all_sites(c.chain.N) : c.scan.sites;
}

ResponseKernel make_kernel(const RunConfig& c) {
  return build_kernel(c.chain, c.pulse, KernelOptions{c.include_c_offset});
}

PlotSpec profile_plot(const SpinTrace& tr, const std::string& title) {
  PlotSeries s{"deviation", {}, {}};
  for (std::size_t i = 0; i < tr.grid.sites.size(); ++i) {
    s.x.push_back(tr.grid.sites[i]);
    s.y.push_back(tr.at(i, 0));
  }
  return {title, "site n", "<S^z_n(t)> - <S^z_n>_0", {s}};
}

PlotSpec series_plot(const SpinTrace& tr, const std::string& title) {
  PlotSeries s{"deviation", tr.grid.times, {}};
  for (std::size_t i = 0; i < tr.grid.times.size(); ++i) s.y.push_back(tr.at(0, i));
  return {title, "time t", "<S^z_n(t)> - <S^z_n>_0", {s}};
}

struct VelocityData {
  DispersionTable table;
  GroupVelocityCurve curve;
};

VelocityData velocity_data(const RunConfig& c) {
  const auto spectrum = build_spectrum(c.chain);
  VelocityData d{build_dispersion(spectrum), {}};
  d.curve = group_velocities(d.table);
  return d;
}

CsvTable velocity_table(const VelocityData& d, bool max_branch, const Snapshot& params) {
  CsvTable t;
  t.comments = params;
  t.comments.emplace_back("derivative", d.curve.scheme);
  t.comments.emplace_back(max_branch ? "peak_abs_v_max" : "peak_abs_v_avg",
                          format_double(max_branch ? d.curve.peak_v_max() : d.curve.peak_v_avg()));
  t.columns = {"kappa", "K", max_branch ? "omega_max" : "omega_avg",
               max_branch ? "v_max" : "v_avg", "pairs"};
  for (std::size_t i = 0; i < d.curve.kappa.size(); ++i) {
    t.rows.push_back({static_cast<double>(d.curve.kappa[i]), d.curve.K[i],
                      max_branch ? d.table.omega_max[i] : d.table.omega_avg[i],
                      max_branch ? d.curve.v_max[i] : d.curve.v_avg[i],
                      static_cast<double>(d.table.counts[i])});
  }
  return t;
}

PlotSpec velocity_plot(const VelocityData& d, int branches) {
  PlotSpec p{"Group velocity", "wavenumber K", "v = d omega / dK", {}};
  if (branches & 1) p.series.push_back({"v_max", d.curve.K, d.curve.v_max});
  if (branches & 2) p.series.push_back({"v_avg", d.curve.K, d.curve.v_avg});
  if (branches == 1) p.title = "Group velocity, maximal branch";
  if (branches == 2) p.title = "Group velocity, averaged branch";
  return p;
}

void cmd_profile(const RunConfig& c, ArtifactWriter& w, CommandResult& r) {
  const auto kernel = make_kernel(c);
  const auto tr = profile_at_time(kernel, c.scan.time, sites_or_all(c));
  w.add("profile.csv", trace_to_csv(tr));
  w.add("profile.svg", render_svg(profile_plot(tr, "Spin profile at t = " + format_double(c.scan.time))));
  r.summary.push_back("profile at t=" + format_double(c.scan.time) + " over " +
                      std::to_string(tr.grid.sites.size()) + " sites");
}

void cmd_timeseries(const RunConfig& c, ArtifactWriter& w, CommandResult& r) {
  const auto kernel = make_kernel(c);
  const auto g = uniform_times({c.scan.site}, c.scan.t_begin, c.scan.t_end, c.scan.dt);
  const auto tr = timeseries_at_site(kernel, c.scan.site, g.times);
  w.add("timeseries.csv", trace_to_csv(tr));
  w.add("timeseries.svg",
        render_svg(series_plot(tr, "Spin at site " + std::to_string(c.scan.site))));
  r.summary.push_back("timeseries at site " + std::to_string(c.scan.site) + ", " +
                      std::to_string(g.times.size()) + " samples");
}

void cmd_velocities(const RunConfig& c, ArtifactWriter& w, CommandResult& r) {
  const auto d = velocity_data(c);
  const auto params = snapshot(c);
  w.add("vmax.csv", to_csv(velocity_table(d, true, params)));
  w.add("vavg.csv", to_csv(velocity_table(d, false, params)));
  w.add("velocities.svg", render_svg(velocity_plot(d, 3)));
  r.summary.push_back("max |v_max| = " + format_double(d.curve.peak_v_max()));
  r.summary.push_back("max |v_avg| = " + format_double(d.curve.peak_v_avg()));
}

void cmd_lr_bound(const RunConfig& c, ArtifactWriter& w, CommandResult& r) {
  const double norm = hamiltonian_norm(c.chain, c.lr.strategy, c.lr.norm);
  const auto lr = lr_bound(norm, c.chain.N, c.lr.strategy, c.lr.samples);
  CsvTable curve;
  curve.comments = snapshot(c);
  curve.comments.emplace_back("norm_H", format_double(norm));
  curve.comments.emplace_back("v_LR", format_double(lr.v_LR));
  curve.comments.emplace_back("a_star", format_double(lr.a_star));
  curve.comments.emplace_back("one_over_N", format_double(1.0 / c.chain.N));
  curve.comments.emplace_back("grid_ratio", format_double(lr.grid_ratio));
  curve.columns = {"a", "v_a"};
  for (std::size_t i = 0; i < lr.a.size(); ++i) curve.rows.push_back({lr.a[i], lr.v_a[i]});
  w.add("lr_curve.csv", to_csv(curve));
  r.summary.push_back(std::string("norm (") + to_string(c.lr.strategy) + ") = " + format_double(norm));
  r.summary.push_back("v_LR = " + format_double(lr.v_LR));

  if (c.chain.N >= 4) {
    const auto d = velocity_data(c);
    const auto cmp = compare_velocities(d.curve, lr);
    CsvTable t;
    t.comments = snapshot(c);
    t.comments.emplace_back("bound_holds", cmp.bound_holds ? "true" : "false");
    t.columns = {"v_group_max", "v_group_avg", "v_LR", "ratio_max", "ratio_avg", "transit_max",
                 "transit_avg"};
    t.rows.push_back({cmp.v_group_max, cmp.v_group_avg, cmp.v_LR, cmp.ratio_max, cmp.ratio_avg,
                      cmp.transit_max, cmp.transit_avg});
    w.add("lr_compare.csv", to_csv(t));
    r.summary.push_back("v_LR / max |v_max| = " + format_double(cmp.ratio_max));
  }
}

void cmd_pulse_train(const RunConfig& c, ArtifactWriter& w, CommandResult& r) {
  const auto kernel = make_kernel(c);
  const PulseTrain train{c.train.n_pulses, c.train.t0, c.pulse};
  const double first = c.pulse.t_start + (c.train.n_pulses - 1) * c.train.t0;
  if (first > c.scan.t_end) {
    throw ConfigError("scan.t_end", 0, "must not precede the last pulse start " + format_double(first));
  }
  const auto g = uniform_times({c.train.site}, first, c.scan.t_end, c.scan.dt);
  CsvTable t;
  t.comments = snapshot(c);
  t.comments.emplace_back("kernel_hash", hex64(kernel.hash));
  t.columns = {"time", "value", "transient", "coherent", "resonant_channels"};
  PlotSeries s{"train", {}, {}};
  int resonant = 0;
  for (double time : g.times) {
    const auto v = pulse_train_response(kernel, train, c.train.site, time,
                                        TrainOptions{c.train.unit_rate_decay});
    resonant = std::max(resonant, v.resonant_channels);
    t.rows.push_back({time, v.value, v.transient, v.coherent, static_cast<double>(v.resonant_channels)});
    s.x.push_back(time);
    s.y.push_back(v.value);
  }
  w.add("pulse_train.csv", to_csv(t));
  w.add("pulse_train.svg",
        render_svg({"Pulse train response at site " + std::to_string(c.train.site), "time t",
                    "<S^z_m(t)> - <S^z_m>_0", {s}}));
  r.summary.push_back(std::to_string(c.train.n_pulses) + " pulses, t0=" + format_double(c.train.t0) +
                      ", " + std::to_string(g.times.size()) + " samples");
  if (resonant > 0) r.summary.push_back("warning: " + std::to_string(resonant) + " resonant channels");
}

void cmd_transport(const RunConfig& c, ArtifactWriter& w, CommandResult& r) {
  const auto kernel = make_kernel(c);
  const auto res = transport_amplitude(kernel, c.transport.hops, c.transport.t_first, c.transport.hop_dt);
  CsvTable t;
  t.comments = snapshot(c);
  t.comments.emplace_back("target", format_double(res.target));
  t.comments.emplace_back("max_relative_error", format_double(res.max_relative_error));
  t.columns = {"hop", "site", "t_pulse", "t_eval", "field", "before", "achieved"};
  for (std::size_t i = 0; i < res.hops.size(); ++i) {
    const auto& h = res.hops[i];
    t.rows.push_back({static_cast<double>(i + 1), static_cast<double>(h.site), h.t_pulse, h.t_eval,
                      h.field, h.before, h.achieved});
  }
  w.add("transport.csv", to_csv(t));
  r.summary.push_back("target amplitude " + format_double(res.target) + ", " +
                      std::to_string(res.hops.size()) + " hops, max relative error " +
                      format_double(res.max_relative_error));
}

void cmd_oracle_compare(const RunConfig& c, ArtifactWriter& w, CommandResult& r) {
  const auto grid = uniform_times(all_sites(c.chain.N), 0.0, c.oracle.t_end, c.oracle.dt);
  const auto cmp = oracle::compare_first_order(c.chain, c.pulse, grid);
  w.add("oracle_exact.csv", trace_to_csv(cmp.exact));
  w.add("oracle_first_order.csv", trace_to_csv(cmp.first_order));
  const bool ok = cmp.relative <= c.oracle.bound;
  std::string report;
  report += "max_relative_deviation = " + format_double(cmp.relative) + "\n";
  report += "max_abs_difference = " + format_double(cmp.max_abs_difference) + "\n";
  report += "exact_peak = " + format_double(cmp.exact_peak) + "\n";
  report += "bound = " + format_double(c.oracle.bound) + "\n";
  report += std::string("within_bound = ") + (ok ? "true" : "false") + "\n";
  w.add("oracle_report.txt", report);
  r.summary.push_back("max relative deviation " + format_double(cmp.relative) +
                      (ok ? " (within " : " (OUTSIDE ") + format_double(c.oracle.bound) + ")");
  if (!ok) r.exit_code = kExitCheckFailed;
}

void cmd_reproduce(const RunConfig& c, ArtifactWriter& w, CommandResult& r) {
  const auto kernel = make_kernel(c);
  std::vector<int> half;
  for (int n = 1; n <= c.chain.N / 2; ++n) half.push_back(n);
  const int late_site = std::min(40, c.chain.N);
  const auto times = uniform_times({1}, c.scan.t_begin, c.scan.t_end, c.scan.dt).times;

  const auto p1 = profile_at_time(kernel, 1.0, half);
  const auto p2 = profile_at_time(kernel, 200.0, half);
  const auto s1 = timeseries_at_site(kernel, 1, times);
  const auto s2 = timeseries_at_site(kernel, late_site, times);
  w.add("fig1_profile_t1.csv", trace_to_csv(p1));
  w.add("fig1_profile_t1.svg", render_svg(profile_plot(p1, "Spin z-components at t = 1")));
  w.add("fig2_profile_t200.csv", trace_to_csv(p2));
  w.add("fig2_profile_t200.svg", render_svg(profile_plot(p2, "Spin z-components at t = 200")));
  w.add("fig3_series_n1.csv", trace_to_csv(s1));
  w.add("fig3_series_n1.svg", render_svg(series_plot(s1, "Time dependence at site n = 1")));
  const std::string n2 = std::to_string(late_site);
  w.add("fig4_series_n" + n2 + ".csv", trace_to_csv(s2));
  w.add("fig4_series_n" + n2 + ".svg",
        render_svg(series_plot(s2, "Time dependence at site n = " + n2)));

  const auto d = velocity_data(c);
  const auto params = snapshot(c);
  w.add("fig5_vmax.csv", to_csv(velocity_table(d, true, params)));
  w.add("fig5_vmax.svg", render_svg(velocity_plot(d, 1)));
  w.add("fig6_vavg.csv", to_csv(velocity_table(d, false, params)));
  w.add("fig6_vavg.svg", render_svg(velocity_plot(d, 2)));
  r.summary.push_back("six figures written");
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {
      "profile",   "timeseries",     "velocities",       "lr-bound",
      "pulse-train", "transport", "oracle-compare", "reproduce-figures",
  };
  return names;
}

CommandResult run_subcommand(const std::string& name, const RunConfig& config) {
  using Fn = void (*)(const RunConfig&, ArtifactWriter&, CommandResult&);
  static const std::map<std::string, Fn> table = {
      {"profile", cmd_profile},
      {"timeseries", cmd_timeseries},
      {"velocities", cmd_velocities},
      {"lr-bound", cmd_lr_bound},
      {"pulse-train", cmd_pulse_train},
      {"transport", cmd_transport},
      {"oracle-compare", cmd_oracle_compare},
      {"reproduce-figures", cmd_reproduce},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw UnknownCommandError("unknown subcommand '" + name + "'");
  ArtifactWriter writer(config.out_dir, name, snapshot(config));
  CommandResult result;
  it->second(config, writer, result);
  result.manifest = writer.commit();
  return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local pulse propagation on a periodic anisotropic XY chain"};
  app.name("spinwave");
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::string n_alias;
  bool seedless = false;
  app.add_option("command", command, "subcommand")->required();
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--N", n_alias, "alias of --chain.N");
  app.add_flag("--seedless", seedless, "reserved; rejected (nothing here uses an RNG)");
  std::map<std::string, std::string> overrides;
  for (const auto& key : config_keys()) app.add_option("--" + key, overrides[key]);
  std::string names;
  for (const auto& n : subcommand_names()) names += (names.empty() ? "" : ", ") + n;
  app.footer("subcommands: " + names);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::RequiredError&) {
    err << "spinwave: missing subcommand (" << names << ")\n";
    return kExitUnknownCommand;
  } catch (const CLI::ParseError& e) {
    err << "spinwave: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  if (std::find(subcommand_names().begin(), subcommand_names().end(), command) ==
      subcommand_names().end()) {
    err << "spinwave: unknown subcommand '" << command << "' (" << names << ")\n";
    return kExitUnknownCommand;
  }
  if (seedless) {
    err << "spinwave: --seedless is reserved and rejected; every computation is already "
           "deterministic\n";
    return kExitInvalidConfig;
  }

  RunConfig config;
  try {
    ConfigMap values;
    if (!config_path.empty()) values = read_config_file(config_path);
    if (!n_alias.empty()) values["chain.N"] = {n_alias, 0};
    for (const auto& [key, value] : overrides) {
      if (app.count("--" + key) > 0) values[key] = {value, 0};
    }
    if (!out_dir.empty()) values["output.dir"] = {out_dir, 0};
    config = build_config(values);
  } catch (const ConfigError& e) {
    err << "spinwave: invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  try {
    const auto result = run_subcommand(command, config);
    for (const auto& line : result.summary) out << line << "\n";
    out << "wrote " << result.manifest.files.size() << " files to " << config.out_dir.string()
        << "\n";
    return result.exit_code;
  } catch (const OutputError& e) {
    err << "spinwave: " << e.what() << "\n";
    return kExitUnwritable;
  } catch (const ConfigError& e) {
    err << "spinwave: invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const ParameterError& e) {
    err << "spinwave: invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const StateSpaceError& e) {
    err << "spinwave: invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const NoSolutionError& e) {
    err << "spinwave: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
}

}  // namespace spinwave::io
