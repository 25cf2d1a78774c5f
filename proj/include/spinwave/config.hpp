#ifndef SPINWAVE_CONFIG_HPP
#define SPINWAVE_CONFIG_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinwave/chain_spectrum.hpp"
#include "spinwave/response_kernel.hpp"
#include "spinwave/velocity.hpp"

namespace spinwave::io {

//! Bad configuration text or value. `line` is 0 for command-line overrides.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_ = 0;
};

struct ScanSpec {
  double t_begin = 1.0;
  double t_end = 200.0;
  double dt = 0.5;
  double time = 1.0;  // profile snapshot
  int site = 1;       // timeseries site
  std::vector<int> sites;  // empty = every site
};

struct TrainSpec {
  int n_pulses = 3;
  double t0 = 1.0;
  int site = 1;
  bool unit_rate_decay = false;
};

struct LrSpec {
  NormStrategy strategy = NormStrategy::QuasiparticleSum;
  double norm = 75.0;  // read only for user-supplied
  int samples = 4001;
};

struct TransportSpec {
  int hops = 5;
  double t_first = 1.0;
  double hop_dt = 0.5;
};

struct OracleSpec {
  double t_end = 50.0;
  double dt = 0.5;
  double bound = 0.01;  // relative to the exact peak
};

struct RunConfig {
  ChainParams chain;
  PulseSpec pulse;
  ScanSpec scan;
  TrainSpec train;
  LrSpec lr;
  TransportSpec transport;
  OracleSpec oracle;
  bool include_c_offset = true;
  std::filesystem::path out_dir = "out";
};

//! Key/value pairs with the line they came from (0 = command line).
struct ConfigEntry {
  std::string value;
  int line = 0;
};
using ConfigMap = std::map<std::string, ConfigEntry>;

//! All recognised dotted keys, in a stable order.
const std::vector<std::string>& config_keys();

//! Parses "key = value" lines; '#' starts a comment. Unknown keys, missing '='
//! and duplicates are reported with their line number.
ConfigMap parse_config_text(const std::string& text);
ConfigMap read_config_file(const std::filesystem::path& path);

//! Applies defaults, then the map, then validates everything.
RunConfig build_config(const ConfigMap& values);

//! Resolved configuration as key/value text pairs (the parameter snapshot).
std::vector<std::pair<std::string, std::string>> snapshot(const RunConfig& config);

}  // namespace spinwave::io

#endif
