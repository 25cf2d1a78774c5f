#ifndef SPINWAVE_COMMANDS_HPP
#define SPINWAVE_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "spinwave/config.hpp"
#include "spinwave/io.hpp"

namespace spinwave::io {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // oracle-compare outside its bound
  kExitUnknownCommand = 2,
  kExitInvalidConfig = 3,
  kExitUnwritable = 4,
};

class UnknownCommandError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& subcommand_names();

struct CommandResult {
  ArtifactManifest manifest;
  int exit_code = kExitOk;
  std::vector<std::string> summary;  // short human-readable lines
};

//! Runs one subcommand and writes its artifacts into config.out_dir.
CommandResult run_subcommand(const std::string& name, const RunConfig& config);

//! Full front end: argument parsing, config merge, dispatch and exit code.
//! args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinwave::io

#endif
