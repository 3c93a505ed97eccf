#pragma once

#include <filesystem>
#include <string>

#include "groma/runner.hpp"

namespace groma {

/// Fixed formatting used by every output: 17 significant
/// digits, so each double round-trips and identical runs give identical bytes.
std::string format_real(double v);

/// Canonical report document: JSON with sorted keys, fixed float formatting,
/// two-space indentation and a trailing newline. Timing is excluded.
std::string to_canonical_json(const PGCRReport& report);

/// label,pgcr,error_probability,n_used,n_skipped,normality_rejects
std::string to_csv(const PGCRReport& report);

/// label,pgcr,error_probability (bar-chart data: one pair per category)
std::string to_chart_csv(const PGCRReport& report);

/// Per-label wall time; kept apart from the canonical report.
std::string to_timing_json(const PGCRReport& report);

struct OutputBundle {
  std::filesystem::path report_path;
  std::filesystem::path csv_path;
  std::filesystem::path chart_path;
  std::filesystem::path timing_path;
};

/// Writes report.json, pgcr.csv, chart.csv and timing.json under out_dir,
/// creating it if needed. Throws IoError when a file cannot be written.
OutputBundle emit_report(const PGCRReport& report, const std::filesystem::path& out_dir);

}  // namespace groma
