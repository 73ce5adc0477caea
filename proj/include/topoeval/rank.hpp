#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace topoeval {

enum class Direction { higher_better, lower_better };

/// average: tied values share the mean of their ranks.
/// ordinal: ties are broken by method order (first listed ranks first).
enum class TieMethod { average, ordinal };

[[nodiscard]] TieMethod parse_tie_method(std::string_view text);

/// One metric column: a score per method.
struct ScoreVector {
  std::string metric;
  Direction direction = Direction::higher_better;
  std::vector<std::string> methods;
  std::vector<double> values;

  /// Throws std::invalid_argument on duplicate names, length mismatch or
  /// non-finite values.
  void validate() const;
};

/// Conventional direction of a metric column by name: DICE, CLDICE, RI and
/// ARI (with any connectivity suffix) are higher-better, everything else
/// lower-better.
[[nodiscard]] Direction default_direction(std::string_view metric);

/// Ranks 1..n, rank 1 being the best method. Throws std::invalid_argument
/// for fewer than two entries.
[[nodiscard]] std::vector<double> rank(const ScoreVector& v, TieMethod ties = TieMethod::average);

/// Correlations between two columns over the same method set (b is aligned
/// to a's method order). All three are computed on direction-oriented
/// data, so flipping one column's direction negates the result.
/// Throws std::invalid_argument on mismatched method sets and
/// UndefinedMetric on zero variance.
[[nodiscard]] double spearman(const ScoreVector& a, const ScoreVector& b,
                              TieMethod ties = TieMethod::average);
/// Kendall tau-b.
[[nodiscard]] double kendall(const ScoreVector& a, const ScoreVector& b,
                             TieMethod ties = TieMethod::average);
/// Pearson r on the raw scores.
[[nodiscard]] double pearson(const ScoreVector& a, const ScoreVector& b);

/// mean(corrected - original).
[[nodiscard]] double avg_difference(const ScoreVector& corrected, const ScoreVector& original);

struct RelativeChange {
  double value = 0.0;    // fraction; 0.5 means +50%
  std::size_t skipped = 0;  // methods with original == 0
};

/// mean((corrected - original) / original) over methods with a nonzero
/// original. Throws UndefinedMetric when every original is zero.
[[nodiscard]] RelativeChange avg_rel_change(const ScoreVector& corrected,
                                            const ScoreVector& original);

/// Score table as CSV: a header "method,<metric>,..." then one row per
/// method. Column directions come from default_direction. Empty cells
/// become NaN and fail ScoreVector::validate.
[[nodiscard]] std::vector<ScoreVector> parse_score_table(const std::string& csv_text);
[[nodiscard]] std::vector<ScoreVector> load_score_table(const std::filesystem::path& path);

}  // namespace topoeval
