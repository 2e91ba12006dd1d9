#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "magskin/convergence.hpp"
#include "magskin/em_params.hpp"
#include "magskin/errors.hpp"
#include "magskin/profiles.hpp"
#include "magskin/reference_solver.hpp"
#include "magskin/surface_geometry.hpp"

namespace magskin::cli
{

// Malformed command line or config; the message starts with the offending field path.
class UsageError : public Error
{
public:
  using Error::Error;
};

enum class Command
{
  Params,
  SkinDepth,
  ProfileTable,
  IbcFactors,
  IbcSweep,
  ExpansionError,
  Convergence
};

enum class Format
{
  Csv,
  Json
};

const char *to_string(Command c);
Command parse_command(const std::string &name);
Format parse_format(const std::string &name);

struct Sweep
{
  std::string variable;  // mu_r, eps, sigma_minus or omega
  std::vector<double> values;
};

// Applies one sweep value to a config.
PhysicalConfig apply_sweep(const PhysicalConfig &cfg, const std::string &variable, double value);

struct ProfileSpec
{
  ProfileSpec() { trace.E0 = {0.0, 1.0}; }

  TraceData trace;  // unit axial E0 unless configured
  SurfacePoint point{0.0, 0.0};
  int points = 51;
  double max_depth = 0.0;  // 0: five leading-order skin depths
  double h0 = 0.0;         // 0: half the tubular radius (no cut-off on the plane)
};

struct RunConfig
{
  Command command = Command::Params;
  PhysicalConfig physical;
  Surface surface = Surface::plane();
  std::optional<CylinderBenchmark> benchmark;
  std::optional<Sweep> sweep;
  ProfileSpec profile;
  std::optional<int> k;
  std::vector<int> modes{0, 1, 2};
  std::vector<double> eps_list = log_space(1e-3, 1e-1, 5);
  StudyKind study = StudyKind::Ibc;
  int jobs = 1;
  std::string output_path;  // empty: stdout
  std::optional<Format> format;

  // Throws UsageError.
  void validate() const;
  Format output_format() const;
};

// Config file contents (JSON, SI units in key names) for the given command.
RunConfig parse_config(const std::string &json_text, Command command);

using Cell = std::variant<double, long long, std::string, bool>;

struct Table
{
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Emit a single row as a JSON object instead of an array.
  bool single_record = false;
};

// %.17g; nan and inf spelled out.
std::string format_double(double v);
std::string to_csv(const Table &t);
std::string to_json(const Table &t);

// Runs the command and returns the artifact text. Module errors propagate.
std::string run(const RunConfig &config);

// Parses argv, runs, writes the artifact. Exit codes: 0 success, 1 physics-domain
// error, 2 usage error, 3 failed internal check.
int main_entry(int argc, char **argv);

}  // namespace magskin::cli
