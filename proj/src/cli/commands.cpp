#include "commands.hpp"

#include "formats.hpp"
#include "polydist/polydist.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace polydist::cli {

using nlohmann::json;

namespace {

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw ParseError(output_path + ": cannot open for writing");
  out << content;
}

json vector_to_json(const Vector<double>& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

SolverConfigd solver_config(double epsilon,
                            std::optional<std::int64_t> max_iterations) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  return SolverConfigd{epsilon, max_iterations};
}

}  // namespace

int cmd_distance(const DistanceOptions& options) {
  const SolverConfigd config = solver_config(options.epsilon, options.max_iterations);
  const PointSetd points = read_point_csv(options.input);
  const SolveResultd result = frank_wolfe(points, config);

  // Size-bound check with the returned norm as optimum-norm proxy; the true
  // optimum norm is at most the returned one, so the proxy understates the
  // excentricity by at most the approximation factor.
  const double norm = result.certificate.witness_norm;
  const double excentricity_estimate =
      squared_diameter(points) / (norm * norm);
  const double bound =
      2.0 * std::ceil(2.0 * excentricity_estimate / options.epsilon);
  const auto size = static_cast<double>(result.coreset_indices.size());

  const json report{
      {"command", "distance"},
      {"input", options.input},
      {"epsilon_target", options.epsilon},
      {"converged", result.converged},
      {"iterations", result.iterations},
      {"dimension", points.dim()},
      {"num_points", points.size()},
      {"witness", vector_to_json(witness_point(result.witness, points))},
      {"norm", norm},
      {"epsilon_hat", result.certificate.epsilon_hat},
      {"worst_index", result.certificate.worst_index},
      {"coreset_indices", result.coreset_indices},
      {"coreset_weights", result.witness.weights()},
      {"size_bound",
       {{"excentricity_estimate", excentricity_estimate},
        {"bound", bound},
        {"satisfied", size <= bound}}}};
  emit(options.output, report.dump(2) + "\n");
  return result.converged ? kExitOk : kExitIterationLimit;
}

int cmd_adversarial(const AdversarialOptions& options) {
  const AdversarialInstanced instance = [&] {
    if (!options.input_base.empty()) {
      return read_instance(options.input_base + ".csv",
                           options.input_base + ".json");
    }
    if (options.theorem == 2) return theorem2_instance(options.theta);
    if (options.theorem == 3) return theorem3_instance(options.theta);
    throw std::invalid_argument("theorem must be 2 or 3");
  }();

  const ClauseReportd report = verify_instance(instance);
  const std::string report_json = clause_report_json(instance, report);
  if (!options.output_base.empty()) {
    write_point_csv_file(options.output_base + ".csv", instance.points);
    std::ofstream sidecar(options.output_base + ".json");
    if (!sidecar) {
      throw ParseError(options.output_base + ".json: cannot open for writing");
    }
    sidecar << instance_sidecar_json(instance);
    std::ofstream report_file(options.output_base + ".report.json");
    if (!report_file) {
      throw ParseError(options.output_base +
                       ".report.json: cannot open for writing");
    }
    report_file << report_json;
  }
  std::cout << report_json;
  return report.all_pass() ? kExitOk : kExitVerificationFailed;
}

int cmd_stream(const StreamOptions& options) {
  if (options.batch_size < 1) {
    throw std::invalid_argument("batch size must be >= 1");
  }
  if (options.format != "csv" && options.format != "json") {
    throw std::invalid_argument("stream format must be csv or json");
  }
  const SolverConfigd config = solver_config(options.epsilon, options.max_iterations);
  const MergeStrategy strategy = strategy_from_name(options.strategy);
  const PointSetd points = read_point_csv(options.input);

  std::vector<PointSetd> batches;
  for (Index from = 0; from < points.size(); from += options.batch_size) {
    std::vector<Index> indices;
    const Index to = std::min<Index>(from + options.batch_size, points.size());
    for (Index i = from; i < to; ++i) indices.push_back(i);
    batches.push_back(subset(points, indices));
  }

  const StreamReportd report =
      stream_process(batches, strategy, config, options.theta_bound);
  emit(options.output, options.format == "csv" ? stream_report_csv(report)
                                               : stream_report_json(report));

  // For the re-solving strategies the claim is the achieved certificate, so
  // a claim above target means some solve hit its iteration cap.
  if (strategy != MergeStrategy::min_norm) {
    for (const auto& rec : report.records) {
      if (rec.claimed_epsilon > config.epsilon_target) return kExitIterationLimit;
    }
  }
  return kExitOk;
}

int cmd_margin(const MarginOptions& options) {
  const SolverConfigd config = solver_config(options.epsilon, options.max_iterations);
  const LabeledPointSetd raw = read_labeled_csv(options.input);
  if (options.lift && !(*options.lift > 0.0)) {
    throw std::invalid_argument("lift coordinate must be positive");
  }
  const LabeledPointSetd labeled =
      options.lift ? lift_labeled(raw, *options.lift) : raw;
  if (labeled.single_class()) {
    std::cerr << "warning: all labels agree; separating a single class from "
                 "the origin\n";
  }
  const MarginResultd result = solve_margin(labeled, config);
  const Certificated certificate = margin_certificate(result, labeled);

  json report{{"command", "margin"},
              {"input", options.input},
              {"epsilon_target", options.epsilon},
              {"lift", options.lift ? json(*options.lift) : json(nullptr)},
              {"converged", result.converged},
              {"normal", vector_to_json(result.normal)},
              {"margin", result.margin},
              {"epsilon_hat", certificate.epsilon_hat},
              {"support_indices", result.support_indices},
              {"single_class", labeled.single_class()}};
  emit(options.output, report.dump(2) + "\n");
  return result.converged ? kExitOk : kExitIterationLimit;
}

int cmd_generate(const GenerateOptions& options) {
  if (options.num < 1 || options.dim < 1) {
    throw std::invalid_argument("--num and --dim must be >= 1");
  }
  std::mt19937_64 rng(options.seed);
  std::ostringstream out;
  if (options.kind == "points") {
    // positive box keeps the origin outside the hull and the angular
    // diameter under pi/2, so the output feeds every subcommand
    std::uniform_real_distribution<double> coord(0.25, 1.25);
    for (std::int64_t j = 0; j < options.num; ++j) {
      for (std::int64_t i = 0; i < options.dim; ++i) {
        if (i > 0) out << ',';
        out << format_double(coord(rng));
      }
      out << '\n';
    }
  } else if (options.kind == "labeled") {
    if (!(options.margin > 0.0)) {
      throw std::invalid_argument("--margin must be positive");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> along(0.0, 1.0);
    std::bernoulli_distribution flip(0.5);
    Vector<double> direction(options.dim);
    double norm = 0.0;
    while (norm < 1e-3) {
      for (std::int64_t i = 0; i < options.dim; ++i) direction[i] = gauss(rng);
      norm = direction.norm();
    }
    direction /= norm;
    for (std::int64_t j = 0; j < options.num; ++j) {
      Vector<double> spread(options.dim);
      for (std::int64_t i = 0; i < options.dim; ++i) spread[i] = 0.5 * gauss(rng);
      spread -= spread.dot(direction) * direction;
      const Vector<double> reduced =
          (options.margin + along(rng)) * direction + spread;
      const int label = flip(rng) ? 1 : -1;
      for (std::int64_t i = 0; i < options.dim; ++i) {
        out << format_double(label * reduced[i]) << ',';
      }
      out << label << '\n';
    }
  } else {
    throw std::invalid_argument("generate kind must be 'points' or 'labeled'");
  }
  emit(options.output, out.str());
  return kExitOk;
}

}  // namespace polydist::cli
