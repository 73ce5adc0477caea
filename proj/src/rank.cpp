#include "topoeval/rank.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "topoeval/error.hpp"

namespace topoeval {

TieMethod parse_tie_method(std::string_view text) {
  if (text == "average") return TieMethod::average;
  if (text == "ordinal") return TieMethod::ordinal;
  throw std::invalid_argument("tie method must be average or ordinal, got '" + std::string(text) +
                              "'");
}

void ScoreVector::validate() const {
  if (methods.size() != values.size()) {
    throw std::invalid_argument("column " + metric + ": method and value counts differ");
  }
  std::set<std::string> seen;
  for (const auto& m : methods) {
    if (!seen.insert(m).second) throw std::invalid_argument("duplicate method name: " + m);
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("column " + metric + " has a missing value");
  }
}

Direction default_direction(std::string_view metric) {
  std::string base;
  for (char ch : metric.substr(0, metric.find('_'))) {
    base += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  if (base == "DICE" || base == "CLDICE" || base == "RI" || base == "ARI") {
    return Direction::higher_better;
  }
  return Direction::lower_better;
}

namespace {

std::vector<double> oriented(const ScoreVector& v) {
  std::vector<double> out = v.values;
  if (v.direction == Direction::lower_better) {
    for (auto& x : out) x = -x;
  }
  return out;
}

// b's values permuted into a's method order.
ScoreVector align(const ScoreVector& a, const ScoreVector& b) {
  a.validate();
  b.validate();
  if (a.methods.size() != b.methods.size()) {
    throw std::invalid_argument("method sets differ between " + a.metric + " and " + b.metric);
  }
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < b.methods.size(); ++i) pos.emplace(b.methods[i], i);
  ScoreVector out{b.metric, b.direction, a.methods, {}};
  out.values.reserve(a.methods.size());
  for (const auto& m : a.methods) {
    const auto it = pos.find(m);
    if (it == pos.end()) {
      throw std::invalid_argument("method " + m + " missing from column " + b.metric);
    }
    out.values.push_back(b.values[it->second]);
  }
  return out;
}

double pearson_raw(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw UndefinedMetric("correlation undefined for a constant column");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

std::vector<double> rank(const ScoreVector& v, TieMethod ties) {
  v.validate();
  const std::size_t n = v.values.size();
  if (n < 2) throw std::invalid_argument("ranking needs at least two methods");
  const std::vector<double> score = oriented(v);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Best first; stable so ordinal ties follow method order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && score[order[j + 1]] == score[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) {
      ranks[order[k]] = ties == TieMethod::average ? (static_cast<double>(i + j) / 2.0 + 1.0)
                                                   : static_cast<double>(k + 1);
    }
    i = j + 1;
  }
  return ranks;
}

double spearman(const ScoreVector& a, const ScoreVector& b, TieMethod ties) {
  const ScoreVector bb = align(a, b);
  return pearson_raw(rank(a, ties), rank(bb, ties));
}

double kendall(const ScoreVector& a, const ScoreVector& b, TieMethod ties) {
  const ScoreVector bb = align(a, b);
  // Average ranks keep value ties as ties.
  const std::vector<double> x = rank(a, ties);
  const std::vector<double> y = rank(bb, ties);
  long long concordant = 0, discordant = 0, tied_x = 0, tied_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) {
        ++tied_x;
      } else if (dy == 0) {
        ++tied_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double n1 = static_cast<double>(concordant + discordant + tied_x);
  const double n2 = static_cast<double>(concordant + discordant + tied_y);
  if (n1 == 0 || n2 == 0) throw UndefinedMetric("Kendall tau undefined for a constant column");
  return static_cast<double>(concordant - discordant) / std::sqrt(n1 * n2);
}

double pearson(const ScoreVector& a, const ScoreVector& b) {
  const ScoreVector bb = align(a, b);
  return pearson_raw(oriented(a), oriented(bb));
}

double avg_difference(const ScoreVector& corrected, const ScoreVector& original) {
  const ScoreVector o = align(corrected, original);
  if (o.values.empty()) throw UndefinedMetric("average difference of empty columns");
  double sum = 0;
  for (std::size_t i = 0; i < o.values.size(); ++i) sum += corrected.values[i] - o.values[i];
  return sum / static_cast<double>(o.values.size());
}

RelativeChange avg_rel_change(const ScoreVector& corrected, const ScoreVector& original) {
  const ScoreVector o = align(corrected, original);
  RelativeChange out;
  double sum = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < o.values.size(); ++i) {
    if (o.values[i] == 0) {
      ++out.skipped;
      continue;
    }
    sum += (corrected.values[i] - o.values[i]) / o.values[i];
    ++used;
  }
  if (used == 0) throw UndefinedMetric("relative change undefined: every original score is zero");
  out.value = sum / static_cast<double>(used);
  return out;
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::vector<ScoreVector> parse_score_table(const std::string& csv_text) {
  std::stringstream in(csv_text);
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    if (!trim(line).empty()) header = split_row(line);
  }
  if (header.size() < 2) throw std::invalid_argument("score table needs a method column and at least one metric");
  std::vector<ScoreVector> columns(header.size() - 1);
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty()) throw std::invalid_argument("score table has an unnamed column");
    columns[c - 1].metric = header[c];
    columns[c - 1].direction = default_direction(header[c]);
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("score table line " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));
    }
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!cells[c].empty()) {
        std::size_t used = 0;
        try {
          v = std::stod(cells[c], &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != cells[c].size()) {
          throw std::invalid_argument("score table line " + std::to_string(line_no) +
                                      ": not a number: '" + cells[c] + "'");
        }
      }
      columns[c - 1].methods.push_back(cells[0]);
      columns[c - 1].values.push_back(v);
    }
  }
  return columns;
}

std::vector<ScoreVector> load_score_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open score table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_score_table(buf.str());
}

}  // namespace topoeval
