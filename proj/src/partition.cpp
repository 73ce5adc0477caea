#include "topoeval/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "topoeval/error.hpp"

namespace topoeval {

Scope parse_scope(std::string_view text) {
  if (text == "full") return Scope::full;
  if (text == "fg" || text == "fg_only") return Scope::fg_only;
  throw std::invalid_argument("scope must be full or fg, got '" + std::string(text) + "'");
}

LogBase parse_log_base(std::string_view text) {
  if (text == "e") return LogBase::e;
  if (text == "2") return LogBase::two;
  throw std::invalid_argument("log base must be e or 2, got '" + std::string(text) + "'");
}

ContingencyTable contingency_from_labels(std::span<const std::uint32_t> x,
                                         std::span<const std::uint32_t> y) {
  if (x.size() != y.size()) throw DimensionMismatch("partition sizes differ");

  std::unordered_map<std::uint64_t, std::size_t> joint;
  std::unordered_map<std::uint32_t, std::size_t> row_of;
  std::unordered_map<std::uint32_t, std::size_t> col_of;
  std::vector<std::uint32_t> row_ids;
  std::vector<std::uint32_t> col_ids;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == kUnlabeled || y[i] == kUnlabeled) continue;
    ++joint[(static_cast<std::uint64_t>(x[i]) << 32) | y[i]];
    if (row_of.emplace(x[i], 0).second) row_ids.push_back(x[i]);
    if (col_of.emplace(y[i], 0).second) col_ids.push_back(y[i]);
  }
  std::sort(row_ids.begin(), row_ids.end());
  std::sort(col_ids.begin(), col_ids.end());
  for (std::size_t i = 0; i < row_ids.size(); ++i) row_of[row_ids[i]] = i;
  for (std::size_t j = 0; j < col_ids.size(); ++j) col_of[col_ids[j]] = j;

  ContingencyTable t;
  t.rows.assign(row_ids.size(), 0);
  t.cols.assign(col_ids.size(), 0);
  t.cells.reserve(joint.size());
  for (const auto& [key, count] : joint) {
    const std::size_t r = row_of[static_cast<std::uint32_t>(key >> 32)];
    const std::size_t c = col_of[static_cast<std::uint32_t>(key & 0xffffffffu)];
    t.cells.push_back({r, c, count});
    t.rows[r] += count;
    t.cols[c] += count;
    t.total += count;
  }
  std::sort(t.cells.begin(), t.cells.end(),
            [](const auto& a, const auto& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  return t;
}

ContingencyTable build_contingency(const ComponentLabeling& x, const ComponentLabeling& y,
                                   Scope scope) {
  if (x.dims != y.dims) throw DimensionMismatch("labelings have different dims");
  ContingencyTable t;
  if (scope == Scope::full) {
    t = contingency_from_labels(x.labels, y.labels);
  } else {
    std::vector<std::uint32_t> xs(x.labels.size(), kUnlabeled);
    std::vector<std::uint32_t> ys(y.labels.size(), kUnlabeled);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (x.phase_at(i) == Phase::foreground && y.phase_at(i) == Phase::foreground) {
        xs[i] = x.labels[i];
        ys[i] = y.labels[i];
      }
    }
    t = contingency_from_labels(xs, ys);
  }
  if (t.total == 0) throw UndefinedMetric("contingency scope contains no pixels");
  return t;
}

double variation_of_information(const ContingencyTable& t, LogBase base) {
  if (t.total == 0) throw UndefinedMetric("variation of information of an empty table");
  const double n = static_cast<double>(t.total);
  // sum_ij p_ij * (log(a_i / n_ij) + log(b_j / n_ij)); every term is >= 0.
  double acc = 0.0;
  for (const auto& c : t.cells) {
    const double nij = static_cast<double>(c.count);
    acc += nij * (std::log(static_cast<double>(t.rows[c.row]) / nij) +
                  std::log(static_cast<double>(t.cols[c.col]) / nij));
  }
  acc /= n;
  return base == LogBase::two ? acc / std::log(2.0) : acc;
}

double adapted_rand_error(const ContingencyTable& t) {
  if (t.total == 0) throw UndefinedMetric("adapted Rand error of an empty partition");
  long double sq_joint = 0, sq_x = 0, sq_y = 0;
  for (const auto& c : t.cells) sq_joint += static_cast<long double>(c.count) * c.count;
  for (std::size_t a : t.rows) sq_x += static_cast<long double>(a) * a;
  for (std::size_t b : t.cols) sq_y += static_cast<long double>(b) * b;
  // Proportions cancel: 2 sum p_ij^2 / (sum s_i^2 + sum t_j^2).
  return static_cast<double>(1 - 2 * sq_joint / (sq_x + sq_y));
}

RandScores rand_scores(const ContingencyTable& t) {
  if (t.total < 2) throw UndefinedMetric("Rand scores need at least two pixels");
  auto pairs = [](std::size_t k) {
    const auto v = static_cast<long double>(k);
    return v * (v - 1) / 2;
  };
  long double same_both = 0, same_x = 0, same_y = 0;
  for (const auto& c : t.cells) same_both += pairs(c.count);
  for (std::size_t a : t.rows) same_x += pairs(a);
  for (std::size_t b : t.cols) same_y += pairs(b);
  const long double all = pairs(t.total);

  RandScores s;
  s.ri = static_cast<double>((all - same_x - same_y + 2 * same_both) / all);

  const long double expected = same_x * same_y / all;
  const long double max_index = (same_x + same_y) / 2;
  // Zero denominator only when both partitions are identical and trivial.
  s.ari = max_index == expected ? 1.0
                                : static_cast<double>((same_both - expected) / (max_index - expected));
  s.are = adapted_rand_error(t);
  return s;
}

}  // namespace topoeval
