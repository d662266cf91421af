#ifndef SCARCE_CLI_HPP
#define SCARCE_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace scarce {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // malformed arguments, files or numbers
  kExitNoSolution = 2,  // no solution form exists for the parameters
  kExitFailed = 3       // a verification or numerical check failed
};

struct Config {
  unsigned precision_bits = 113;
  int N = 24;
  double residual_tol = 1e-25;
  int quadrature_nodes = 4096;
  std::string format = "json";  // json | csv | text
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on a non-positive tolerance, precision
  // below 53 bits or an unknown format.
  void validate() const;
};

inline constexpr const char* kConfigEnv = "SCARCE_CONFIG";

// Reads a JSON object whose keys are a subset of the Config fields.
Config load_config(const std::string& path);
// load_config($SCARCE_CONFIG) when the variable is set, defaults otherwise.
Config default_config();

// Runs one command line. Reports go to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scarce

#endif  // SCARCE_CLI_HPP
