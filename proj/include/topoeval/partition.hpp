#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "topoeval/labeling.hpp"

namespace topoeval {

enum class Scope {
  full,     // every pixel, foreground and background components alike
  fg_only,  // pixels that are foreground in both labelings
};

enum class LogBase { e, two };

[[nodiscard]] Scope parse_scope(std::string_view text);
[[nodiscard]] LogBase parse_log_base(std::string_view text);

/// Sparse contingency table between partitions X (rows) and Y (columns).
struct ContingencyTable {
  struct Cell {
    std::size_t row;
    std::size_t col;
    std::size_t count;
  };
  std::vector<Cell> cells;         // sorted by (row, col), no zero entries
  std::vector<std::size_t> rows;   // a_i
  std::vector<std::size_t> cols;   // b_j
  std::size_t total = 0;           // N
};

/// Table over arbitrary cluster ids; pixels where either id equals
/// kUnlabeled are skipped.
[[nodiscard]] ContingencyTable contingency_from_labels(std::span<const std::uint32_t> x,
                                                       std::span<const std::uint32_t> y);

/// Throws DimensionMismatch on shape mismatch and UndefinedMetric when the
/// selected scope is empty.
[[nodiscard]] ContingencyTable build_contingency(const ComponentLabeling& x,
                                                 const ComponentLabeling& y,
                                                 Scope scope = Scope::full);

/// H(X|Y) + H(Y|X).
[[nodiscard]] double variation_of_information(const ContingencyTable& t,
                                              LogBase base = LogBase::e);

struct RandScores {
  double ri = 0.0;   // pair-counting Rand index
  double ari = 0.0;  // adjusted for chance
  double are = 0.0;  // 1 - Rand F-score (alpha = 1/2) on squared proportions
};

/// Throws UndefinedMetric when N < 2.
/// Throws UndefinedMetric below two pixels.
[[nodiscard]] RandScores rand_scores(const ContingencyTable& t);
/// Defined for any nonempty table; a single pixel gives 0.
[[nodiscard]] double adapted_rand_error(const ContingencyTable& t);

}  // namespace topoeval
