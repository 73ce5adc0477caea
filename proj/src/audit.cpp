#include "topoeval/audit.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "topoeval/parallel.hpp"

namespace topoeval {

ComponentHistogram size_histogram(const ComponentLabeling& labeling) {
  ComponentHistogram h;
  for (const auto& c : labeling.components) {
    if (c.phase == Phase::foreground) {
      ++h.fg[c.size];
      ++h.fg_total;
    } else {
      ++h.bg[c.size];
      ++h.bg_total;
    }
  }
  return h;
}

RemovalMode parse_removal_mode(std::string_view text) {
  if (text == "simultaneous") return RemovalMode::simultaneous;
  if (text == "sequential") return RemovalMode::sequential;
  throw std::invalid_argument("mode must be simultaneous or sequential, got '" +
                              std::string(text) + "'");
}

PhaseSelection parse_phase_selection(std::string_view text) {
  if (text == "fg") return {true, false};
  if (text == "bg") return {false, true};
  if (text == "both") return {true, true};
  throw std::invalid_argument("phase must be fg, bg or both, got '" + std::string(text) + "'");
}

namespace {

// Flips components of one or both phases found on a single labeling.
void flip_small(BinaryMask& mask, const ComponentLabeling& labeling, std::size_t max_size,
                bool fg, bool bg) {
  std::vector<bool> victim(labeling.components.size(), false);
  for (const auto& c : labeling.components) {
    const bool selected = c.phase == Phase::foreground ? fg : bg;
    victim[c.id] = selected && c.size <= max_size;
  }
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    if (victim[labeling.labels[i]]) mask.set(i, !mask[i]);
  }
}

PhaseCounts counts_of(const BinaryMask& mask, ConnectivityPair conn) {
  const ComponentLabeling l = label_components(mask, conn);
  return {count_components(l, Phase::foreground), count_components(l, Phase::background)};
}

void check_thresholds(const std::vector<std::size_t>& thresholds) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] == 0) throw std::invalid_argument("removal sizes must be >= 1");
    if (i && thresholds[i] <= thresholds[i - 1]) {
      throw std::invalid_argument("removal sizes must be strictly ascending");
    }
  }
}

std::vector<PhaseCounts> removal_rows(const BinaryMask& mask, ConnectivityPair conn,
                                      const std::vector<std::size_t>& thresholds,
                                      RemovalMode mode) {
  std::vector<PhaseCounts> rows;
  rows.push_back(counts_of(mask, conn));
  for (std::size_t t : thresholds) {
    rows.push_back(counts_of(remove_small_components(mask, conn, t, {}, mode), conn));
  }
  return rows;
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

template <typename Result, typename Compute>
std::vector<FileError> load_all(const DatasetManifest& manifest, std::uint8_t threshold,
                                std::size_t workers, Compute compute,
                                std::vector<Result>& results) {
  const std::size_t n = manifest.labels.size();
  std::vector<std::optional<Result>> slots(n);
  std::vector<std::string> failures(n);
  parallel_for(n, workers, [&](std::size_t i) {
    try {
      slots[i] = compute(load_mask(manifest.labels[i], threshold));
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  std::vector<FileError> errors;
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i]) {
      results.push_back(std::move(*slots[i]));
    } else {
      errors.push_back({manifest.labels[i].string(), failures[i]});
    }
  }
  return errors;
}

}  // namespace

BinaryMask remove_small_components(const BinaryMask& mask, ConnectivityPair conn,
                                   std::size_t max_size, PhaseSelection phases, RemovalMode mode) {
  if (max_size == 0) throw std::invalid_argument("max_size must be >= 1");
  BinaryMask out = mask;
  if (mode == RemovalMode::simultaneous) {
    flip_small(out, label_components(mask, conn), max_size, phases.fg, phases.bg);
    return out;
  }
  if (phases.fg) flip_small(out, label_components(out, conn), max_size, true, false);
  if (phases.bg) flip_small(out, label_components(out, conn), max_size, false, true);
  return out;
}

double min_max_ratio(std::size_t a, std::size_t b) {
  const std::size_t hi = std::max(a, b);
  if (hi == 0) return 100.0;
  return 100.0 * static_cast<double>(std::min(a, b)) / static_cast<double>(hi);
}

ConnectivityCountTable connectivity_count_report(const std::vector<BinaryMask>& labels) {
  ConnectivityCountTable t;
  for (const auto& m : labels) {
    const PhaseCounts a = counts_of(m, ConnectivityPair{Connectivity::A});
    const PhaseCounts d = counts_of(m, ConnectivityPair{Connectivity::D});
    t.a.fg += a.fg;
    t.a.bg += a.bg;
    t.d.fg += d.fg;
    t.d.bg += d.bg;
  }
  t.image_count = labels.size();
  return t;
}

ConnectivityCountTable connectivity_count_report(const DatasetManifest& manifest,
                                                 std::uint8_t threshold, std::size_t workers) {
  using Pair = std::pair<PhaseCounts, PhaseCounts>;
  std::vector<Pair> per_image;
  ConnectivityCountTable t;
  t.errors = load_all<Pair>(
      manifest, threshold, workers,
      [](const BinaryMask& m) {
        return Pair{counts_of(m, ConnectivityPair{Connectivity::A}),
                    counts_of(m, ConnectivityPair{Connectivity::D})};
      },
      per_image);
  for (const auto& [a, d] : per_image) {
    t.a.fg += a.fg;
    t.a.bg += a.bg;
    t.d.fg += d.fg;
    t.d.bg += d.bg;
  }
  t.dataset = manifest.name;
  t.image_count = per_image.size();
  return t;
}

double RemovalReport::fg_ratio() const {
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.fg);
    hi = std::max(hi, r.fg);
  }
  return rows.empty() ? 100.0 : min_max_ratio(lo, hi);
}

double RemovalReport::bg_ratio() const {
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.bg);
    hi = std::max(hi, r.bg);
  }
  return rows.empty() ? 100.0 : min_max_ratio(lo, hi);
}

RemovalReport removal_effect_report(const std::vector<BinaryMask>& labels, ConnectivityPair conn,
                                    const std::vector<std::size_t>& thresholds, RemovalMode mode) {
  check_thresholds(thresholds);
  RemovalReport r;
  r.connectivity = conn;
  r.mode = mode;
  r.thresholds = thresholds;
  r.rows.assign(thresholds.size() + 1, {});
  for (const auto& m : labels) {
    const auto rows = removal_rows(m, conn, thresholds, mode);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      r.rows[i].fg += rows[i].fg;
      r.rows[i].bg += rows[i].bg;
    }
  }
  r.image_count = labels.size();
  return r;
}

RemovalReport removal_effect_report(const DatasetManifest& manifest, ConnectivityPair conn,
                                    const std::vector<std::size_t>& thresholds, RemovalMode mode,
                                    std::uint8_t threshold, std::size_t workers) {
  check_thresholds(thresholds);
  std::vector<std::vector<PhaseCounts>> per_image;
  RemovalReport r;
  r.errors = load_all<std::vector<PhaseCounts>>(
      manifest, threshold, workers,
      [&](const BinaryMask& m) { return removal_rows(m, conn, thresholds, mode); }, per_image);
  r.dataset = manifest.name;
  r.connectivity = conn;
  r.mode = mode;
  r.thresholds = thresholds;
  r.rows.assign(thresholds.size() + 1, {});
  for (const auto& rows : per_image) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      r.rows[i].fg += rows[i].fg;
      r.rows[i].bg += rows[i].bg;
    }
  }
  r.image_count = per_image.size();
  return r;
}

std::string count_table_csv(const ConnectivityCountTable& t) {
  std::string out = "setting,FG,BG\n";
  out += "A," + std::to_string(t.a.fg) + "," + std::to_string(t.a.bg) + "\n";
  out += "D," + std::to_string(t.d.fg) + "," + std::to_string(t.d.bg) + "\n";
  out += "Ratio," + percent(t.fg_ratio()) + "%," + percent(t.bg_ratio()) + "%\n";
  return out;
}

std::string removal_table_csv(const RemovalReport& r) {
  const std::string sub(to_string(r.connectivity.setting()));
  std::string out = "components,FG_" + sub + ",BG_" + sub + "\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const std::string label =
        i == 0 ? "No Removal" : std::to_string(r.thresholds[i - 1]) + " Pix. Removal";
    out += label + "," + std::to_string(r.rows[i].fg) + "," + std::to_string(r.rows[i].bg) + "\n";
  }
  out += "Min/Max Ratio," + percent(r.fg_ratio()) + "%," + percent(r.bg_ratio()) + "%\n";
  return out;
}

std::string audit_json(const ConnectivityCountTable& t, const RemovalReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "topoeval.audit/1";
  j["dataset"] = t.dataset;
  j["image_count"] = t.image_count;
  j["metadata"] = {{"connectivity", std::string(to_string(r.connectivity.setting()))},
                   {"removal_mode", r.mode == RemovalMode::simultaneous ? "simultaneous" : "sequential"},
                   {"tool_version", kToolVersion}};
  j["connectivity_counts"] = {
      {"A", {{"FG", t.a.fg}, {"BG", t.a.bg}}},
      {"D", {{"FG", t.d.fg}, {"BG", t.d.bg}}},
      {"ratio_percent", {{"FG", t.fg_ratio()}, {"BG", t.bg_ratio()}}}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    rows.push_back({{"max_size", i == 0 ? 0 : r.thresholds[i - 1]},
                    {"FG", r.rows[i].fg},
                    {"BG", r.rows[i].bg}});
  }
  j["removal"] = {{"rows", rows},
                  {"min_max_ratio_percent", {{"FG", r.fg_ratio()}, {"BG", r.bg_ratio()}}}};
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const auto& e : t.errors) errors.push_back({{"path", e.path}, {"message", e.message}});
  j["errors"] = errors;
  return j.dump(2) + "\n";
}

}  // namespace topoeval
