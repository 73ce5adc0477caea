#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "topoeval/io.hpp"
#include "topoeval/labeling.hpp"
#include "topoeval/report.hpp"

namespace topoeval {

/// Component size distribution per phase: size -> number of components.
struct ComponentHistogram {
  std::map<std::size_t, std::size_t> fg;
  std::map<std::size_t, std::size_t> bg;
  std::size_t fg_total = 0;
  std::size_t bg_total = 0;
};

[[nodiscard]] ComponentHistogram size_histogram(const ComponentLabeling& labeling);

/// simultaneous: victims of both phases are found on the original labeling
/// and flipped at once. sequential: small FG components are flipped, the
/// mask is relabeled, then small BG components are flipped.
enum class RemovalMode { simultaneous, sequential };

struct PhaseSelection {
  bool fg = true;
  bool bg = true;
};

[[nodiscard]] RemovalMode parse_removal_mode(std::string_view text);
/// "fg", "bg" or "both".
[[nodiscard]] PhaseSelection parse_phase_selection(std::string_view text);

/// Flips every component of a selected phase with at most `max_size` pixels
/// to the opposite phase. Throws std::invalid_argument when max_size == 0.
[[nodiscard]] BinaryMask remove_small_components(const BinaryMask& mask, ConnectivityPair conn,
                                                 std::size_t max_size,
                                                 PhaseSelection phases = {},
                                                 RemovalMode mode = RemovalMode::simultaneous);

struct PhaseCounts {
  std::size_t fg = 0;
  std::size_t bg = 0;
};

/// Smaller over larger, in percent; 100 when both are zero.
[[nodiscard]] double min_max_ratio(std::size_t a, std::size_t b);

/// Component totals of a dataset under A and under D.
struct ConnectivityCountTable {
  std::string dataset;
  std::size_t image_count = 0;
  PhaseCounts a;
  PhaseCounts d;
  std::vector<FileError> errors;

  [[nodiscard]] double fg_ratio() const { return min_max_ratio(a.fg, d.fg); }
  [[nodiscard]] double bg_ratio() const { return min_max_ratio(a.bg, d.bg); }
};

[[nodiscard]] ConnectivityCountTable connectivity_count_report(
    const std::vector<BinaryMask>& labels);
[[nodiscard]] ConnectivityCountTable connectivity_count_report(const DatasetManifest& manifest,
                                                               std::uint8_t threshold = 0,
                                                               std::size_t workers = 1);

/// Component totals after removing components up to each threshold. Each
/// threshold is applied to the original masks; row 0 is "no removal".
struct RemovalReport {
  std::string dataset;
  ConnectivityPair connectivity;
  RemovalMode mode = RemovalMode::simultaneous;
  std::vector<std::size_t> thresholds;  // thresholds.size() + 1 == rows.size()
  std::vector<PhaseCounts> rows;
  std::size_t image_count = 0;
  std::vector<FileError> errors;

  [[nodiscard]] double fg_ratio() const;
  [[nodiscard]] double bg_ratio() const;
};

/// Throws std::invalid_argument unless thresholds are strictly ascending
/// and >= 1.
[[nodiscard]] RemovalReport removal_effect_report(const std::vector<BinaryMask>& labels,
                                                  ConnectivityPair conn,
                                                  const std::vector<std::size_t>& thresholds,
                                                  RemovalMode mode = RemovalMode::simultaneous);
[[nodiscard]] RemovalReport removal_effect_report(const DatasetManifest& manifest,
                                                  ConnectivityPair conn,
                                                  const std::vector<std::size_t>& thresholds,
                                                  RemovalMode mode = RemovalMode::simultaneous,
                                                  std::uint8_t threshold = 0,
                                                  std::size_t workers = 1);

[[nodiscard]] std::string count_table_csv(const ConnectivityCountTable& t);
[[nodiscard]] std::string removal_table_csv(const RemovalReport& r);
[[nodiscard]] std::string audit_json(const ConnectivityCountTable& t, const RemovalReport& r);

}  // namespace topoeval
