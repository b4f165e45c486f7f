#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kinkfield::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDomainError = 1,      // invalid parameters or usage
  kNumericalFailure = 2, // quadrature or fit did not converge
  kInternalError = 3,    // an invariant of the implementation was violated
};

struct RunConfig {
  double kappa = 1.0;
  double lambda = 1.0;
  double C = 1.0;
  double x1 = 0.0;
  std::optional<double> x_min;  // defaults to x1 - 10/b
  std::optional<double> x_max;  // defaults to x1 + 10/b
  int n = 4001;
  int fd_order = 8;
  double tol = 1e-8;
  double t_span = 20.0;
  double dt = 1e-3;
  double epsilon = 1e-6;
  std::vector<double> probes{0.0};
  std::string format;  // empty: subcommand default
};

/// Runs one subcommand. args excludes the program name. Output goes to out
/// (or to --out, written via a temporary file and rename); diagnostics go
/// to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kinkfield::cli
