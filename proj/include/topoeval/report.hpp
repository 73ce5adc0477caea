#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace topoeval {

inline constexpr std::string_view kReportSchema = "topoeval.report/1";
inline constexpr std::string_view kToolVersion = "0.3.0";

enum class ReportFormat { json, csv };

/// json for ".json", csv otherwise.
[[nodiscard]] ReportFormat format_for(const std::filesystem::path& path);

/// Throws std::invalid_argument unless `name` is an allowed metric key.
/// Connectivity-dependent metrics (B<k>, BM<k>, VOI, ARE, ARI, RI) must
/// carry an explicit _A or _D suffix; DICE and CLDICE carry none. Betti
/// and Betti-matching keys name exactly one dimension, so cross-dimension
/// sums such as "B0+B1" or a bare "BM_A" are rejected.
void validate_metric_name(std::string_view name);

struct FileError {
  std::string path;
  std::string message;
};

/// Per-image metric table. Missing (undefined) values are std::nullopt.
struct MetricReport {
  std::map<std::string, std::string> metadata;
  std::vector<std::string> metrics;  // column order
  struct Row {
    std::string image;
    std::map<std::string, std::optional<double>> values;
  };
  std::vector<Row> rows;
  std::vector<FileError> errors;

  /// Validates and appends a metric column name.
  void add_metric(const std::string& name);

  /// Mean of the defined values of one metric, or nullopt if none.
  [[nodiscard]] std::optional<double> mean(const std::string& metric) const;
};

[[nodiscard]] std::string format_number(double v);

[[nodiscard]] std::string to_json(const MetricReport& report);
[[nodiscard]] std::string to_csv(const MetricReport& report);

/// Re-validates every metric name before writing.
void write_report(const MetricReport& report, const std::filesystem::path& path,
                  ReportFormat format);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace topoeval
