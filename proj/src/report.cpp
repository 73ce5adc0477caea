#include "topoeval/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <stdexcept>

#include <json.hpp>

#include "topoeval/error.hpp"

namespace topoeval {

ReportFormat format_for(const std::filesystem::path& path) {
  return path.extension() == ".json" ? ReportFormat::json : ReportFormat::csv;
}

void validate_metric_name(std::string_view name) {
  static const std::regex plain("DICE|CLDICE");
  static const std::regex topological("(B|BM)[0-2]_[AD]|(VOI|ARE|ARI|RI)_[AD]");
  static const std::regex aggregated("(B|BM)(_[AD])?|.*[+].*|(B|BM)_?(SUM|TOTAL|ALL).*");
  const std::string s(name);
  if (std::regex_match(s, plain) || std::regex_match(s, topological)) return;
  if (std::regex_match(s, aggregated)) {
    throw std::invalid_argument(
        "metric '" + s +
        "' aggregates topological errors across dimensions; report each dimension "
        "separately (e.g. B0_A, B1_A)");
  }
  throw std::invalid_argument("metric '" + s +
                              "' is not a recognised metric key; topological metrics need an "
                              "explicit connectivity suffix (_A or _D)");
}

void MetricReport::add_metric(const std::string& name) {
  validate_metric_name(name);
  metrics.push_back(name);
}

std::optional<double> MetricReport::mean(const std::string& metric) const {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& row : rows) {
    const auto it = row.values.find(metric);
    if (it != row.values.end() && it->second) {
      sum += *it->second;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string to_json(const MetricReport& report) {
  for (const auto& m : report.metrics) validate_metric_name(m);
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["metrics"] = report.metrics;

  auto value_of = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json images = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (const auto& m : report.metrics) {
      const auto it = row.values.find(m);
      values[m] = it == row.values.end() ? nlohmann::ordered_json(nullptr) : value_of(it->second);
    }
    images.push_back({{"image", row.image}, {"values", values}});
  }
  j["images"] = images;

  nlohmann::ordered_json mean = nlohmann::ordered_json::object();
  for (const auto& m : report.metrics) mean[m] = value_of(report.mean(m));
  j["aggregate"] = {{"count", report.rows.size()}, {"mean", mean}};

  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const auto& e : report.errors) errors.push_back({{"path", e.path}, {"message", e.message}});
  j["errors"] = errors;
  return j.dump(2) + "\n";
}

std::string to_csv(const MetricReport& report) {
  for (const auto& m : report.metrics) validate_metric_name(m);
  std::string out = "image";
  for (const auto& m : report.metrics) out += "," + m;
  out += "\n";
  auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; };
  for (const auto& row : report.rows) {
    out += row.image;
    for (const auto& m : report.metrics) {
      const auto it = row.values.find(m);
      out += "," + (it == row.values.end() ? std::string{} : cell(it->second));
    }
    out += "\n";
  }
  out += "mean";
  for (const auto& m : report.metrics) out += "," + cell(report.mean(m));
  out += "\n";
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed: " + path.string());
}

void write_report(const MetricReport& report, const std::filesystem::path& path,
                  ReportFormat format) {
  write_text(format == ReportFormat::json ? to_json(report) : to_csv(report), path);
}

}  // namespace topoeval
