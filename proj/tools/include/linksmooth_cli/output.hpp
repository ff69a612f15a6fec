#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include <linksmooth/estimator.hpp>
#include <linksmooth/histogram.hpp>

#include "linksmooth_cli/options.hpp"

namespace linksmooth::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1.0";
std::string_view tool_version() noexcept;

/// 17 significant digits, enough to round-trip any double.
std::string csv_real(double value);

/// Writes bytes verbatim (LF stays LF) and creates parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);
void write_json(const std::filesystem::path& path, const Json& doc);

/// Header shared by every JSON output: schema, tool version, command, seed and
/// the resolved configuration. Thread count and output directory are left out
/// because they do not affect results.
Json document_header(const RunOptions& options);
Json config_echo(const RunOptions& options);

Json to_json(const ConditionAudit& audit);
Json to_json(const Histogram& histogram);

/// design,bin,lower,upper,count rows.
void append_histogram_rows(std::string& csv, std::string_view design, const Histogram& histogram);
inline constexpr std::string_view kHistogramHeader = "design,bin,lower,upper,count\n";

}  // namespace linksmooth::cli
