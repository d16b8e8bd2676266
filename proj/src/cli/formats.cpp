#include "formats.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace polydist::cli {

using nlohmann::json;

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

// Full-consume double parse; rejects trailing garbage and empty fields.
bool parse_double(const std::string& token, double& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

struct CsvTable {
  std::vector<std::vector<double>> rows;
  std::vector<int> line_numbers;
};

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  CsvTable table;
  std::string line;
  int line_number = 0;
  bool first_content_line = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto fields = split_fields(content);
    if (first_content_line) {
      // header detection: a non-numeric first token means a header row
      double probe;
      first_content_line = false;
      if (!parse_double(fields.front(), probe)) continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t k = 0; k < fields.size(); ++k) {
      double value;
      if (!parse_double(fields[k], value)) {
        throw ParseError(path + ":" + std::to_string(line_number) +
                         ": field " + std::to_string(k + 1) +
                         " is not a number: '" + fields[k] + "'");
      }
      row.push_back(value);
    }
    if (width == 0) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError(path + ":" + std::to_string(line_number) + ": expected " +
                       std::to_string(width) + " fields, found " +
                       std::to_string(row.size()));
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line_number);
  }
  if (table.rows.empty()) throw ParseError(path + ": no data rows");
  return table;
}

PointSetd points_from_rows(const std::vector<std::vector<double>>& rows) {
  const Index dim = static_cast<Index>(rows.front().size());
  Matrix<double> m(dim, static_cast<Index>(rows.size()));
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < dim; ++i) {
      m(i, j) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
  }
  return PointSetd(std::move(m));
}

}  // namespace

PointSetd read_point_csv(const std::string& path) {
  return points_from_rows(read_csv_table(path).rows);
}

LabeledPointSetd read_labeled_csv(const std::string& path) {
  const CsvTable table = read_csv_table(path);
  if (table.rows.front().size() < 2) {
    throw ParseError(path + ": labeled rows need at least one coordinate and a label");
  }
  std::vector<std::vector<double>> coords;
  std::vector<int> labels;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<double> row = table.rows[r];
    const double label = row.back();
    row.pop_back();
    if (label != 1.0 && label != -1.0) {
      throw ParseError(path + ":" + std::to_string(table.line_numbers[r]) +
                       ": label must be -1 or 1, found " + format_double(label));
    }
    labels.push_back(static_cast<int>(label));
    coords.push_back(std::move(row));
  }
  return LabeledPointSetd(points_from_rows(coords), std::move(labels));
}

void write_point_csv(std::ostream& out, const PointSetd& points) {
  for (Index j = 0; j < points.size(); ++j) {
    for (Index i = 0; i < points.dim(); ++i) {
      if (i > 0) out << ',';
      out << format_double(points.point(j)[i]);
    }
    out << '\n';
  }
}

void write_point_csv_file(const std::string& path, const PointSetd& points) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  write_point_csv(out, points);
}

std::string strategy_name(MergeStrategy strategy) {
  switch (strategy) {
    case MergeStrategy::min_norm:
      return "min-norm";
    case MergeStrategy::rerun:
      return "rerun";
    case MergeStrategy::full_recompute:
      return "full";
  }
  return "unknown";
}

MergeStrategy strategy_from_name(const std::string& name) {
  if (name == "min-norm") return MergeStrategy::min_norm;
  if (name == "rerun") return MergeStrategy::rerun;
  if (name == "full") return MergeStrategy::full_recompute;
  throw std::invalid_argument("unknown strategy: " + name);
}

std::string stream_report_csv(const StreamReportd& report) {
  std::ostringstream out;
  out << "batch,strategy,retained_size,claimed_epsilon,measured_epsilon,"
         "theta_prefix,min_norm_bound\n";
  for (const auto& rec : report.records) {
    out << rec.batch << ',' << strategy_name(rec.strategy) << ','
        << rec.retained_size << ',' << format_double(rec.claimed_epsilon) << ','
        << format_double(rec.measured_epsilon) << ','
        << format_double(rec.theta_prefix) << ','
        << format_double(rec.min_norm_bound) << '\n';
  }
  return out.str();
}

namespace {

json record_to_json(const StreamRecord<double>& rec) {
  return json{{"batch", rec.batch},
              {"strategy", strategy_name(rec.strategy)},
              {"retained_size", rec.retained_size},
              {"claimed_epsilon", rec.claimed_epsilon},
              {"measured_epsilon", rec.measured_epsilon},
              {"theta_prefix", rec.theta_prefix},
              {"min_norm_bound", rec.min_norm_bound}};
}

json points_to_json(const PointSetd& points) {
  json rows = json::array();
  for (Index j = 0; j < points.size(); ++j) {
    json row = json::array();
    for (Index i = 0; i < points.dim(); ++i) row.push_back(points.point(j)[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

json clause_to_json(const ClauseMeasurement<double>& clause) {
  return json{{"pass", clause.pass},
              {"measured_epsilon", clause.measured_epsilon},
              {"bound", clause.bound}};
}

}  // namespace

std::string stream_report_json(const StreamReportd& report) {
  json records = json::array();
  for (const auto& rec : report.records) records.push_back(record_to_json(rec));
  const json j{{"command", "stream"},
               {"strategy", strategy_name(report.strategy)},
               {"records", std::move(records)}};
  return j.dump(2) + "\n";
}

std::string instance_sidecar_json(const AdversarialInstanced& instance) {
  const json j{
      {"theorem", instance.theorem == Theorem::t2 ? 2 : 3},
      {"theta", instance.theta},
      {"partition", {{"p1", instance.partition_p1}, {"p2", instance.partition_p2}}},
      {"s1", instance.s1},
      {"s2", instance.s2},
      {"s", instance.s},
      {"expected_small_eps", instance.expected_small_eps},
      {"expected_final_eps_lower_bound", instance.expected_final_eps_lower_bound}};
  return j.dump(2) + "\n";
}

AdversarialInstanced read_instance(const std::string& points_csv_path,
                                   const std::string& sidecar_json_path) {
  PointSetd points = read_point_csv(points_csv_path);
  std::ifstream in(sidecar_json_path);
  if (!in) throw ParseError(sidecar_json_path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(sidecar_json_path + ": " + e.what());
  }
  try {
    const int theorem = j.at("theorem").get<int>();
    if (theorem != 2 && theorem != 3) {
      throw ParseError(sidecar_json_path + ": theorem must be 2 or 3");
    }
    AdversarialInstanced instance{
        std::move(points),
        j.at("partition").at("p1").get<std::vector<Index>>(),
        j.at("partition").at("p2").get<std::vector<Index>>(),
        j.at("s1").get<std::vector<Index>>(),
        j.at("s2").get<std::vector<Index>>(),
        j.at("s").get<std::vector<Index>>(),
        theorem == 2 ? Theorem::t2 : Theorem::t3,
        j.at("theta").get<double>(),
        j.at("expected_small_eps").get<double>(),
        j.at("expected_final_eps_lower_bound").get<double>()};
    return instance;
  } catch (const json::exception& e) {
    throw ParseError(sidecar_json_path + ": " + e.what());
  }
}

std::string clause_report_json(const AdversarialInstanced& instance,
                               const ClauseReportd& report) {
  const json j{
      {"command", "adversarial"},
      {"theorem", instance.theorem == Theorem::t2 ? 2 : 3},
      {"theta", instance.theta},
      {"instance",
       {{"points", points_to_json(instance.points)},
        {"partition",
         {{"p1", instance.partition_p1}, {"p2", instance.partition_p2}}},
        {"s1", instance.s1},
        {"s2", instance.s2},
        {"s", instance.s},
        {"expected_small_eps", instance.expected_small_eps},
        {"expected_final_eps_lower_bound",
         instance.expected_final_eps_lower_bound}}},
      {"clauses",
       {{"clause1", clause_to_json(report.clause1)},
        {"clause2", clause_to_json(report.clause2)},
        {"clause3", clause_to_json(report.clause3)},
        {"clause4", clause_to_json(report.clause4)}}},
      {"bound_attained", report.bound_attained},
      {"degenerate_certificate", report.degenerate_certificate},
      {"all_clauses_pass", report.all_pass()}};
  return j.dump(2) + "\n";
}

}  // namespace polydist::cli
