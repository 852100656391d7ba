#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "awscheme/errors.hpp"
#include "awscheme/qcore.hpp"
#include "awscheme/report.hpp"

namespace awscheme {

enum class Command { eval, eigencheck, orthocheck, roundtrip, limitcheck, dualcheck };

const char* to_string(Command c) noexcept;

// Environment variable naming the directory reports go to when no output
// path is given. Without either, reports go to standard output.
inline constexpr const char* output_dir_env = "AWSCHEME_OUTPUT_DIR";

struct RunConfig {
  Command command = Command::eval;
  // Family for eval/eigencheck/orthocheck, level for roundtrip, transition
  // or duality name (or "all") for limitcheck/dualcheck.
  std::string selector;
  std::map<std::string, double> params;  // q, a, b, c, d, t, z, y
  std::optional<cplx> gamma;
  std::optional<cplx> x;
  std::optional<long> lo;
  std::optional<long> hi;
  std::optional<double> tolerance;
  std::optional<std::filesystem::path> param_file;
  int samples = 20;
  unsigned seed = 1;
  bool draw = false;    // random admissible parameters for every sample
  bool timing = false;  // off by default so identical runs give identical bytes
  Format format = Format::csv;
  std::optional<std::filesystem::path> output;
};

// One parameter cell after merging defaults, file values and flags.
struct Cell {
  std::map<std::string, double> params;
  std::optional<cplx> gamma;
  std::optional<cplx> x;
};

// Cells of the run: one unless the parameter file lists several.
std::vector<Cell> resolve_cells(const RunConfig& cfg);

VerificationReport run_checks(const RunConfig& cfg);

// Prints the function value for eval.
std::string eval_value(const RunConfig& cfg);

int exit_code(ErrorKind kind) noexcept;

// Executes cfg; the report (or value) goes to out unless an output path is
// configured, diagnostics go to err. Returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses arguments and runs. argv[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace awscheme
