// polydist: polytope-distance coresets from the command line.
//
// Subcommands: distance (solve a point CSV), adversarial (construct or
// verify a merge-hardness instance), stream (merge-and-reduce over batches),
// margin (max-margin separation via the polytope-distance reduction),
// generate (deterministic synthetic data).
//
// Exit codes: 0 success / all clauses verified, 1 usage, 2 invalid
// parameter or malformed input, 3 infeasible geometry (origin inside the
// hull, not separable), 4 iteration limit without convergence, 5 instance
// verification failed.

#include "commands.hpp"
#include "formats.hpp"
#include "polydist/polydist.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr double kHalfPi = 1.5707963267948966;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polytope-distance coresets: solver, merging, hardness instances"};
  app.require_subcommand(1);

  polydist::cli::DistanceOptions distance;
  auto* distance_cmd =
      app.add_subcommand("distance", "approximate the polytope distance of a point CSV");
  distance_cmd->add_option("input", distance.input, "point CSV file")->required();
  distance_cmd->add_option("--epsilon", distance.epsilon,
                           "certificate target in (0,1)");
  distance_cmd->add_option("--max-iterations", distance.max_iterations,
                           "override the solver step cap");
  distance_cmd->add_option("--output", distance.output,
                           "write the JSON report here instead of stdout");

  polydist::cli::AdversarialOptions adversarial;
  auto* adversarial_cmd = app.add_subcommand(
      "adversarial", "construct and verify a merge-hardness instance");
  adversarial_cmd->add_option("--theorem", adversarial.theorem,
                              "construction family, 2 or 3");
  adversarial_cmd->add_option("--theta", adversarial.theta,
                              "angular diameter in (0, pi/2]");
  adversarial_cmd->add_option("--input", adversarial.input_base,
                              "verify <base>.csv + <base>.json instead of constructing");
  adversarial_cmd->add_option("--output", adversarial.output_base,
                              "also write <base>.csv, <base>.json, <base>.report.json");

  polydist::cli::StreamOptions stream;
  auto* stream_cmd =
      app.add_subcommand("stream", "merge-and-reduce over batches of a point CSV");
  stream_cmd->add_option("input", stream.input, "point CSV file")->required();
  stream_cmd->add_option("--batch-size", stream.batch_size, "points per batch")
      ->check(CLI::PositiveNumber);
  stream_cmd
      ->add_option("--strategy", stream.strategy, "min-norm | rerun | full")
      ->check(CLI::IsMember({"min-norm", "rerun", "full"}));
  stream_cmd->add_option("--epsilon", stream.epsilon, "solver target in (0,1)");
  stream_cmd->add_option("--theta", stream.theta_bound,
                         "a-priori angular bound for min-norm merging");
  stream_cmd->add_option("--max-iterations", stream.max_iterations,
                         "override the solver step cap");
  stream_cmd->add_option("--output", stream.output, "report path (default stdout)");
  stream_cmd->add_option("--format", stream.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  polydist::cli::MarginOptions margin;
  auto* margin_cmd = app.add_subcommand(
      "margin", "max-margin separator for a labeled CSV (homogeneous)");
  margin_cmd->add_option("input", margin.input, "labeled CSV file")->required();
  margin_cmd->add_option("--epsilon", margin.epsilon, "solver target in (0,1)");
  margin_cmd->add_option("--lift", margin.lift,
                         "append a constant coordinate rho before solving");
  margin_cmd->add_option("--max-iterations", margin.max_iterations,
                         "override the solver step cap");
  margin_cmd->add_option("--output", margin.output, "report path (default stdout)");

  polydist::cli::GenerateOptions generate;
  auto* generate_cmd =
      app.add_subcommand("generate", "deterministic synthetic data sets");
  generate_cmd->add_option("kind", generate.kind, "points | labeled")->required();
  generate_cmd->add_option("--num", generate.num, "number of points");
  generate_cmd->add_option("--dim", generate.dim, "dimension");
  generate_cmd->add_option("--margin", generate.margin,
                           "separation margin for labeled data");
  generate_cmd->add_option("--seed", generate.seed, "RNG seed (default 0)");
  generate_cmd->add_option("--output", generate.output, "CSV path (default stdout)");

  bool theta_given = false;
  adversarial_cmd->parse_complete_callback(
      [&] { theta_given = adversarial_cmd->count("--theta") > 0; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? polydist::cli::kExitOk : polydist::cli::kExitUsage;
  }

  try {
    if (app.got_subcommand(distance_cmd)) return polydist::cli::cmd_distance(distance);
    if (app.got_subcommand(adversarial_cmd)) {
      if (adversarial.input_base.empty() && !theta_given) {
        std::cerr << "error: adversarial needs --theta (or --input)\n";
        return polydist::cli::kExitUsage;
      }
      return polydist::cli::cmd_adversarial(adversarial);
    }
    if (app.got_subcommand(stream_cmd)) {
      if (stream.theta_bound > kHalfPi &&
          stream.strategy == std::string("min-norm")) {
        throw polydist::WideAngle("--theta exceeds pi/2");
      }
      return polydist::cli::cmd_stream(stream);
    }
    if (app.got_subcommand(margin_cmd)) return polydist::cli::cmd_margin(margin);
    if (app.got_subcommand(generate_cmd)) return polydist::cli::cmd_generate(generate);
  } catch (const polydist::OriginInsideHull& e) {
    std::cerr << "error: " << e.what() << "\n";
    return polydist::cli::kExitInfeasible;
  } catch (const polydist::NotSeparable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return polydist::cli::kExitInfeasible;
  } catch (const polydist::Error& e) {
    // BadTheta, WideAngle, parse and data errors: invalid parameters/input
    std::cerr << "error: " << e.what() << "\n";
    return polydist::cli::kExitInvalidParameter;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return polydist::cli::kExitInvalidParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return polydist::cli::kExitUsage;
  }
  return polydist::cli::kExitUsage;
}
