#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qibound/report.hpp"

namespace qibound::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Subcommand { bound, limit, verify, decompose, energy, sweep };

struct RunConfig {
  Subcommand subcommand = Subcommand::limit;

  std::string probe = "gaussian";  // lorentzian | gaussian | table:PATH
  double t0 = 1.0;

  std::string sensitivity = "rect_band";  // rect_band | gaussian_band | sharp_line
  double omega0 = 1.0;
  double bandwidth = 0.01;

  std::string field_kind = "electromagnetic";  // electromagnetic | scalar

  int modes = 3;
  double mode_delta = 0.05;
  int nmax = 6;

  std::string decomposition_kind = "electromagnetic";  // + scalar_A | scalar_A_tilde

  std::vector<double> taus;
  int states_per_family = 50;
  std::uint64_t seed = 1;
  double t_offset = 0.0;

  std::string format = "table";
  std::string out_path;

  double quadrature_rel_tol = 1e-8;
  double operator_residual_tol = 1e-8;
  double grid_density = 1.0;
};

// Two-phase parse: an optional --config JSON document supplies the base
// values, then every flag overrides its field. Throws ValidationError (with
// exit code 2) before any computation on a malformed invocation.
RunConfig parse_command_line(const std::vector<std::string>& args);

// Builds every referenced object (probe, sensitivity, mode layout) so a
// config that cannot resolve fails before numeric work starts.
void validate(const RunConfig& config);

// Executes the subcommand and emits its artifact. Returns the process exit
// status: 0 success, 2 validation, 3 accuracy/io, 4 inequality or identity
// violation.
int run(const RunConfig& config);

// Worker count for sweep evaluation: hardware concurrency capped by the
// QIBOUND_THREADS environment variable.
unsigned worker_count();

}  // namespace qibound::cli
