#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topoeval/connectivity.hpp"
#include "topoeval/mask.hpp"
#include "topoeval/partition.hpp"
#include "topoeval/report.hpp"

namespace topoeval {

enum class MetricKind { dice, cldice, b0, b1, b2, bm0, bm1, bm2, voi, are, ari, ri };

/// Parses a comma-separated list such as "dice,b0,b1,bm0,bm1,voi,are".
/// Aggregated requests ("b", "bm", "b0+b1") are rejected: each Betti
/// dimension is its own metric.
[[nodiscard]] std::vector<MetricKind> parse_metric_list(std::string_view text);

/// Report key with connectivity subscript where relevant, e.g. "BM1_D".
[[nodiscard]] std::string metric_key(MetricKind kind, Connectivity conn);

struct EvalOptions {
  ConnectivityPair connectivity;
  std::vector<MetricKind> metrics;
  LogBase log_base = LogBase::e;
  Scope scope = Scope::full;
  std::uint8_t threshold = 0;
  std::size_t workers = 1;
};

struct PairEvaluation {
  std::map<std::string, std::optional<double>> values;
  std::vector<std::string> undefined;  // messages for metrics left empty
};

/// Throws DimensionMismatch when the masks differ in shape.
[[nodiscard]] PairEvaluation evaluate_pair(const BinaryMask& pred, const BinaryMask& gt,
                                           const EvalOptions& options);

using PathPair = std::pair<std::filesystem::path, std::filesystem::path>;  // (pred, gt)

/// Pairs files of two directories by file name. Names present in only one
/// directory become error entries.
[[nodiscard]] std::vector<PathPair> pair_directories(const std::filesystem::path& pred_dir,
                                                     const std::filesystem::path& gt_dir,
                                                     std::vector<FileError>& errors);

/// Evaluates every pair, fanning out over options.workers threads; rows
/// keep input order and failures become error entries.
[[nodiscard]] MetricReport evaluate_dataset(const std::vector<PathPair>& pairs,
                                            const EvalOptions& options);

}  // namespace topoeval
