#pragma once

// File formats for the command-line tools: point CSV (one point per row,
// comma-separated decimals, optional header), labeled CSV (trailing +-1
// column), the JSON sidecar describing hardness instances, and stream
// report serialization. Doubles are written with 17 significant digits so a
// written set re-reads bit-identically.

#include "polydist/adversarial.hpp"
#include "polydist/core.hpp"
#include "polydist/maxmargin.hpp"
#include "polydist/merge.hpp"

#include <iosfwd>
#include <string>

namespace polydist::cli {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// 17-significant-digit decimal rendering; round-trips any finite double.
std::string format_double(double value);

PointSetd read_point_csv(const std::string& path);
LabeledPointSetd read_labeled_csv(const std::string& path);

void write_point_csv(std::ostream& out, const PointSetd& points);
void write_point_csv_file(const std::string& path, const PointSetd& points);

std::string strategy_name(MergeStrategy strategy);
MergeStrategy strategy_from_name(const std::string& name);

std::string stream_report_csv(const StreamReportd& report);
std::string stream_report_json(const StreamReportd& report);

/// Sidecar JSON carrying partition, selections, and expected error values.
std::string instance_sidecar_json(const AdversarialInstanced& instance);
/// Rebuilds an instance from its points CSV and sidecar JSON files.
AdversarialInstanced read_instance(const std::string& points_csv_path,
                                   const std::string& sidecar_json_path);

std::string clause_report_json(const AdversarialInstanced& instance,
                               const ClauseReportd& report);

}  // namespace polydist::cli
