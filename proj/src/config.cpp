#include "spinwave/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "spinwave/error.hpp"
#include "spinwave/numeric.hpp"
#include "spinwave/propagation.hpp"

namespace spinwave::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool known_key(const std::string& key) {
  for (const auto& k : config_keys()) {
    if (k == key) return true;
  }
  return false;
}

class Reader {
 public:
  explicit Reader(const ConfigMap& m) : m_(m) {}

  int line(const std::string& key) const {
    const auto it = m_.find(key);
    return it == m_.end() ? 0 : it->second.line;
  }

  void get(const std::string& key, double& out) const {
    const auto* e = find(key);
    if (!e) return;
    const auto& v = e->value;
    double x = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
      throw ConfigError(key, e->line, "expected a number, got '" + v + "'");
    }
    out = x;
  }

  void get(const std::string& key, int& out) const {
    const auto* e = find(key);
    if (!e) return;
    out = parse_int(key, e->value, e->line);
  }

  void get(const std::string& key, bool& out) const {
    const auto* e = find(key);
    if (!e) return;
    const auto& v = e->value;
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
      out = true;
    } else if (v == "false" || v == "0" || v == "no" || v == "off") {
      out = false;
    } else {
      throw ConfigError(key, e->line, "expected true or false, got '" + v + "'");
    }
  }

  void get(const std::string& key, std::string& out) const {
    if (const auto* e = find(key)) out = e->value;
  }

  void get_sites(const std::string& key, std::vector<int>& out) const {
    const auto* e = find(key);
    if (!e || e->value == "all") return;
    out.clear();
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item), e->line));
  }

 private:
  const ConfigEntry* find(const std::string& key) const {
    const auto it = m_.find(key);
    return it == m_.end() ? nullptr : &it->second;
  }

  static int parse_int(const std::string& key, const std::string& v, int line) {
    int x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
      throw ConfigError(key, line, "expected an integer, got '" + v + "'");
    }
    return x;
  }

  const ConfigMap& m_;
};

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         field + ": " + message),
      field_(std::move(field)),
      line_(line) {}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "chain.N",          "chain.J",          "chain.gamma",
      "chain.h0",         "pulse.h1",         "pulse.tau_H",
      "pulse.source_site", "pulse.t_start",   "kernel.include_c_offset",
      "scan.t_begin",     "scan.t_end",       "scan.dt",
      "scan.time",        "scan.site",        "scan.sites",
      "train.n_pulses",   "train.t0",         "train.site",
      "train.unit_rate_decay", "lr.norm_strategy", "lr.norm",
      "lr.samples",       "transport.hops",   "transport.t_first",
      "transport.hop_dt", "oracle.t_end",     "oracle.dt",
      "oracle.bound",     "output.dir",
  };
  return keys;
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap m;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(s, line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!known_key(key)) throw ConfigError(key, line, "unknown key");
    if (value.empty()) throw ConfigError(key, line, "missing value");
    if (m.count(key)) {
      throw ConfigError(key, line, "duplicate key (first set on line " +
                                       std::to_string(m[key].line) + ")");
    }
    m[key] = {value, line};
  }
  return m;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", 0, "cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig build_config(const ConfigMap& values) {
  for (const auto& [key, entry] : values) {
    if (!known_key(key)) throw ConfigError(key, entry.line, "unknown key");
  }
  const Reader r(values);
  RunConfig c;
  r.get("chain.N", c.chain.N);
  r.get("chain.J", c.chain.J);
  r.get("chain.gamma", c.chain.gamma);
  r.get("chain.h0", c.chain.h0);
  r.get("pulse.h1", c.pulse.h1);
  r.get("pulse.tau_H", c.pulse.tau_H);
  c.pulse.source_site = c.chain.N;
  r.get("pulse.source_site", c.pulse.source_site);
  r.get("pulse.t_start", c.pulse.t_start);
  r.get("kernel.include_c_offset", c.include_c_offset);
  r.get("scan.t_begin", c.scan.t_begin);
  r.get("scan.t_end", c.scan.t_end);
  r.get("scan.dt", c.scan.dt);
  r.get("scan.time", c.scan.time);
  r.get("scan.site", c.scan.site);
  r.get_sites("scan.sites", c.scan.sites);
  r.get("train.n_pulses", c.train.n_pulses);
  r.get("train.t0", c.train.t0);
  r.get("train.site", c.train.site);
  r.get("train.unit_rate_decay", c.train.unit_rate_decay);
  std::string strategy = to_string(c.lr.strategy);
  r.get("lr.norm_strategy", strategy);
  r.get("lr.norm", c.lr.norm);
  r.get("lr.samples", c.lr.samples);
  r.get("transport.hops", c.transport.hops);
  r.get("transport.t_first", c.transport.t_first);
  r.get("transport.hop_dt", c.transport.hop_dt);
  r.get("oracle.t_end", c.oracle.t_end);
  r.get("oracle.dt", c.oracle.dt);
  r.get("oracle.bound", c.oracle.bound);
  std::string dir = c.out_dir.string();
  r.get("output.dir", dir);
  c.out_dir = dir;

  // translate library validation into field diagnostics
  try {
    c.lr.strategy = parse_norm_strategy(strategy);
    validate(c.chain, 2);
    validate(c.pulse, c.chain.N);
    ScanGrid g;
    g.sites = c.scan.sites;
    validate(g, c.chain.N);
    if (c.scan.site < 1 || c.scan.site > c.chain.N) {
      throw ParameterError("scan.site", "site outside 1.." + std::to_string(c.chain.N));
    }
    if (c.train.site < 1 || c.train.site > c.chain.N) {
      throw ParameterError("train.site", "site outside 1.." + std::to_string(c.chain.N));
    }
    if (!(c.scan.dt > 0.0)) throw ParameterError("scan.dt", "time step must be positive");
    if (!(c.scan.t_end >= c.scan.t_begin)) {
      throw ParameterError("scan.t_end", "end time precedes scan.t_begin");
    }
    validate(PulseTrain{c.train.n_pulses, c.train.t0, c.pulse}, c.chain.N);
    if (c.lr.samples < 3) throw ParameterError("lr.samples", "need at least 3 samples");
    if (c.lr.strategy == NormStrategy::UserSupplied && !(c.lr.norm >= 0.0)) {
      throw ParameterError("lr.norm", "norm must be nonnegative");
    }
    if (c.transport.hops < 0) throw ParameterError("transport.hops", "must be nonnegative");
    if (!(c.transport.hop_dt > 0.0)) throw ParameterError("transport.hop_dt", "must be positive");
    if (!(c.oracle.dt > 0.0)) throw ParameterError("oracle.dt", "must be positive");
    if (!(c.oracle.t_end >= 0.0)) throw ParameterError("oracle.t_end", "must be nonnegative");
    if (!(c.oracle.bound > 0.0)) throw ParameterError("oracle.bound", "must be positive");
  } catch (const ParameterError& e) {
    std::string field = e.field();
    if (field == "train.base.tau_H") field = "pulse.tau_H";
    std::string msg = e.what();
    if (msg.rfind(e.field() + ": ", 0) == 0) msg.erase(0, e.field().size() + 2);
    throw ConfigError(field, r.line(field), msg);
  }
  return c;
}

std::vector<std::pair<std::string, std::string>> snapshot(const RunConfig& c) {
  std::string sites = "all";
  if (!c.scan.sites.empty()) {
    sites.clear();
    for (std::size_t i = 0; i < c.scan.sites.size(); ++i) {
      if (i) sites += ",";
      sites += std::to_string(c.scan.sites[i]);
    }
  }
  const auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"chain.N", std::to_string(c.chain.N)},
      {"chain.J", format_double(c.chain.J)},
      {"chain.gamma", format_double(c.chain.gamma)},
      {"chain.h0", format_double(c.chain.h0)},
      {"pulse.h1", format_double(c.pulse.h1)},
      {"pulse.tau_H", format_double(c.pulse.tau_H)},
      {"pulse.source_site", std::to_string(c.pulse.source_site)},
      {"pulse.t_start", format_double(c.pulse.t_start)},
      {"kernel.include_c_offset", b(c.include_c_offset)},
      {"scan.t_begin", format_double(c.scan.t_begin)},
      {"scan.t_end", format_double(c.scan.t_end)},
      {"scan.dt", format_double(c.scan.dt)},
      {"scan.time", format_double(c.scan.time)},
      {"scan.site", std::to_string(c.scan.site)},
      {"scan.sites", sites},
      {"train.n_pulses", std::to_string(c.train.n_pulses)},
      {"train.t0", format_double(c.train.t0)},
      {"train.site", std::to_string(c.train.site)},
      {"train.unit_rate_decay", b(c.train.unit_rate_decay)},
      {"lr.norm_strategy", to_string(c.lr.strategy)},
      {"lr.norm", format_double(c.lr.norm)},
      {"lr.samples", std::to_string(c.lr.samples)},
      {"transport.hops", std::to_string(c.transport.hops)},
      {"transport.t_first", format_double(c.transport.t_first)},
      {"transport.hop_dt", format_double(c.transport.hop_dt)},
      {"oracle.t_end", format_double(c.oracle.t_end)},
      {"oracle.dt", format_double(c.oracle.dt)},
      {"oracle.bound", format_double(c.oracle.bound)},
  };
}

}  // namespace spinwave::io
