#pragma once

// Report persistence and the human/machine output formats: run reports as
// JSON, comparison reports as markdown tables, lossless CSV, and JSON lines.

#include <filesystem>
#include <string>

#include "fraudlens/evaluation.hpp"

namespace fraudlens {

enum class ReportFormat { Markdown, Csv, JsonLines };

ReportFormat report_format_from_string(const std::string& name);  // throws ConfigError

std::string run_report_to_json(const RunReport& report);
RunReport run_report_from_json(const std::string& text);
void save_run_report(const RunReport& report, const std::filesystem::path& path);
RunReport load_run_report(const std::filesystem::path& path);

// Per-label summary table; ratios to two decimals.
std::string run_report_to_markdown(const RunReport& report);

std::string decisions_to_jsonl(const std::vector<DecisionRecord>& decisions);

std::string comparison_to_markdown(const ComparisonReport& report);
std::string comparison_to_csv(const ComparisonReport& report);
std::string comparison_to_jsonl(const ComparisonReport& report);
ComparisonReport comparison_from_csv(const std::string& text);

std::string emit_comparison(const ComparisonReport& report, ReportFormat format);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace fraudlens
