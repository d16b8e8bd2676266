#pragma once

// Subcommand implementations behind the polydist binary. Each command
// builds a machine-readable report, writes it to the chosen output (stdout
// when no path is given), and returns the process exit code. Argument
// parsing and exception-to-exit-code mapping live in the binary's main.

#include <cstdint>
#include <optional>
#include <string>

namespace polydist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalidParameter = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitIterationLimit = 4;
inline constexpr int kExitVerificationFailed = 5;

struct DistanceOptions {
  std::string input;
  double epsilon = 1e-6;
  std::optional<std::int64_t> max_iterations;
  std::string output;  // empty: stdout
};
int cmd_distance(const DistanceOptions& options);

struct AdversarialOptions {
  int theorem = 2;
  double theta = 0.0;
  /// When set, read <input_base>.csv / <input_base>.json and verify that
  /// instance instead of constructing one.
  std::string input_base;
  /// When set, write <output_base>.csv, <output_base>.json and
  /// <output_base>.report.json alongside the stdout report.
  std::string output_base;
};
int cmd_adversarial(const AdversarialOptions& options);

struct StreamOptions {
  std::string input;
  std::int64_t batch_size = 1;
  std::string strategy = "full";
  double epsilon = 1e-6;
  /// A-priori angular bound handed to min-norm merging.
  double theta_bound = 1.5707963267948966;
  std::optional<std::int64_t> max_iterations;
  std::string output;
  std::string format = "csv";  // csv | json
};
int cmd_stream(const StreamOptions& options);

struct MarginOptions {
  std::string input;
  double epsilon = 1e-6;
  std::optional<double> lift;
  std::optional<std::int64_t> max_iterations;
  std::string output;
};
int cmd_margin(const MarginOptions& options);

struct GenerateOptions {
  std::string kind;  // points | labeled
  std::int64_t num = 8;
  std::int64_t dim = 2;
  double margin = 0.25;
  std::uint64_t seed = 0;
  std::string output;
};
int cmd_generate(const GenerateOptions& options);

}  // namespace polydist::cli
