#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "invscheme/schemes.hpp"

namespace invscheme::cli {

/// Invalid flags or config file; the tool exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command {
  solve,
  exact,
  verify_integrals,
  symmetry_table,
  backlund_check,
  convergence,
  singular
};

std::string to_string(Command c);
Command parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::exact;
  std::string scheme = "ode2";  // exact: ode2 | winternitz

  double c = 2.0;
  double eps = 0.01;
  std::optional<ThetaSpec> theta;  // per-command default when unset
  std::optional<double> k;

  double a = 1.0;
  double b = 2.0;
  std::optional<double> rho;
  WinternitzExactParams w{1.0, 0.0, 0.0, 2.0, 1.0, 0.5};

  std::optional<long> n_start;
  std::optional<long> n_end;
  std::optional<double> tol;

  std::string out = ".";
  std::string in;
  std::uint64_t seed = 20240607;

  double s = 0.3;   // symmetry-table group parameter
  int trials = 0;   // symmetry-table: extra random s values
  std::vector<double> eps_list{0.1, 0.05, 0.025, 0.0125};
  std::optional<double> x_start;
  std::optional<double> x_end;
  double min_order = 1.0;
  double x0 = 0.3;  // singular: first abscissa
};

/// Applies the keys of a JSON object (same names as the flags, without the
/// leading dashes and with '-' written as '_') on top of `cfg`.
void apply_layer(const nlohmann::json& layer, RunConfig& cfg);

/// Defaults, then the --config file, then flags. Throws ConfigError.
/// Returns nullopt when help was requested (after printing it).
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv);

ThetaSpec parse_theta(const nlohmann::json& v);
std::pair<long, long> parse_range(const std::string& text);

}  // namespace invscheme::cli
