#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "primebounds/real.hpp"
#include "primebounds/report.hpp"

namespace primebounds {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,    // an inequality or comparison genuinely fails
  kExitUsage = 2,   // precondition or configuration error
  kExitIo = 3,
};

// Settings shared by all subcommands. Flags override the config file
// (key = value lines with the long option names); PRIMEBOUNDS_CACHE_DIR
// overrides the cache directory when no flag is given.
struct RunConfig {
  unsigned precision_bits = 192;
  Real T{"3e12"};
  std::string cache_dir;
  OutputFormat output_format = OutputFormat::text;
  unsigned grid_density = 16;  // interior samples per gap in prime scans
  std::uint64_t sieve_limit = 1000000;
  std::string zeros_file;

  // ParameterError unless precision_bits >= 100 and sieve_limit >= 10^4.
  void validate() const;
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace primebounds
