// report.hpp
// Report emission: canonical JSON (versioned schema, stable field order),
// CSV with one row per metric, and a human-readable table with the same
// columns as the schemes' headline comparison.

#pragma once

#include <string>
#include <vector>

#include "ceqss/experiment.hpp"

namespace ceqss {

enum class ReportFormat { Json, Csv, Table };

std::string format_name(ReportFormat format);
ReportFormat format_from_name(const std::string& name);

std::string emit_report(const ExperimentReport& report, ReportFormat format);

// One table row per report, so schemes can be rendered side by side.
std::string emit_table(const std::vector<ExperimentReport>& reports);

ExperimentReport report_from_json(const std::string& text);

} // namespace ceqss
