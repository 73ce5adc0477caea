#include "topoeval/evaluate.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "topoeval/error.hpp"
#include "topoeval/io.hpp"
#include "topoeval/labeling.hpp"
#include "topoeval/matching.hpp"
#include "topoeval/overlap.hpp"
#include "topoeval/parallel.hpp"
#include "topoeval/topology.hpp"

namespace topoeval {

namespace fs = std::filesystem;

namespace {

const std::map<std::string, MetricKind>& metric_names() {
  static const std::map<std::string, MetricKind> names{
      {"dice", MetricKind::dice}, {"cldice", MetricKind::cldice}, {"b0", MetricKind::b0},
      {"b1", MetricKind::b1},     {"b2", MetricKind::b2},         {"bm0", MetricKind::bm0},
      {"bm1", MetricKind::bm1},   {"bm2", MetricKind::bm2},       {"voi", MetricKind::voi},
      {"are", MetricKind::are},   {"ari", MetricKind::ari},       {"ri", MetricKind::ri}};
  return names;
}

}  // namespace

std::vector<MetricKind> parse_metric_list(std::string_view text) {
  std::vector<MetricKind> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string token(text.substr(start, comma - start));
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    start = comma + 1;
    if (token.empty()) continue;
    if (token == "b" || token == "bm" || token.find('+') != std::string::npos) {
      throw std::invalid_argument("metric '" + token +
                                  "' would aggregate topological errors across dimensions; "
                                  "request each dimension separately (e.g. b0,b1 or bm0,bm1)");
    }
    const auto it = metric_names().find(token);
    if (it == metric_names().end()) throw std::invalid_argument("unknown metric '" + token + "'");
    if (std::find(out.begin(), out.end(), it->second) == out.end()) out.push_back(it->second);
  }
  if (out.empty()) throw std::invalid_argument("no metrics requested");
  return out;
}

std::string metric_key(MetricKind kind, Connectivity conn) {
  const std::string sub = "_" + std::string(to_string(conn));
  switch (kind) {
    case MetricKind::dice: return "DICE";
    case MetricKind::cldice: return "CLDICE";
    case MetricKind::b0: return "B0" + sub;
    case MetricKind::b1: return "B1" + sub;
    case MetricKind::b2: return "B2" + sub;
    case MetricKind::bm0: return "BM0" + sub;
    case MetricKind::bm1: return "BM1" + sub;
    case MetricKind::bm2: return "BM2" + sub;
    case MetricKind::voi: return "VOI" + sub;
    case MetricKind::are: return "ARE" + sub;
    case MetricKind::ari: return "ARI" + sub;
    case MetricKind::ri: return "RI" + sub;
  }
  throw std::logic_error("unhandled metric kind");
}

PairEvaluation evaluate_pair(const BinaryMask& pred, const BinaryMask& gt,
                             const EvalOptions& options) {
  require_same_dims(pred, gt);
  const ConnectivityPair conn = options.connectivity;
  const std::size_t nd = pred.ndim();
  PairEvaluation out;

  std::optional<TopologySummary> tp, tg;
  auto betti = [&](std::size_t dim) -> double {
    if (!tp) {
      tp = betti_numbers(pred, conn);
      tg = betti_numbers(gt, conn);
    }
    const std::size_t a = tp->betti[dim], b = tg->betti[dim];
    return static_cast<double>(a > b ? a - b : b - a);
  };
  std::optional<RandScores> rand;
  std::optional<ContingencyTable> table;
  auto partitions = [&]() -> const ContingencyTable& {
    if (!table) {
      table = build_contingency(label_components(pred, conn), label_components(gt, conn),
                                options.scope);
    }
    return *table;
  };

  for (MetricKind k : options.metrics) {
    const std::string key = metric_key(k, conn.setting());
    auto undefined = [&](const std::string& why) {
      out.values[key] = std::nullopt;
      out.undefined.push_back(key + " undefined: " + why);
    };
    try {
      switch (k) {
        case MetricKind::dice:
          out.values[key] = dice(pred, gt);
          break;
        case MetricKind::cldice:
          if (nd != 2) {
            undefined("clDice is only defined for 2D masks");
          } else {
            out.values[key] = cldice(pred, gt);
          }
          break;
        case MetricKind::b0:
        case MetricKind::b1:
        case MetricKind::b2: {
          const auto dim = static_cast<std::size_t>(k) - static_cast<std::size_t>(MetricKind::b0);
          if (dim >= nd) {
            undefined("no Betti number of that dimension for " + std::to_string(nd) + "D masks");
          } else {
            out.values[key] = betti(dim);
          }
          break;
        }
        case MetricKind::bm0:
        case MetricKind::bm1:
        case MetricKind::bm2: {
          const auto dim = static_cast<std::size_t>(k) - static_cast<std::size_t>(MetricKind::bm0);
          const bool supported = dim == 0 || (dim == 1 && nd == 2) || (dim == 2 && nd == 3);
          if (!supported) {
            undefined("Betti matching not available in that dimension for " + std::to_string(nd) +
                      "D masks");
          } else {
            out.values[key] = static_cast<double>(betti_matching(pred, gt, conn, dim).bm_error);
          }
          break;
        }
        case MetricKind::voi:
          out.values[key] = variation_of_information(partitions(), options.log_base);
          break;
        case MetricKind::are:
          out.values[key] = adapted_rand_error(partitions());
          break;
        case MetricKind::ari:
        case MetricKind::ri: {
          if (!rand) rand = rand_scores(partitions());
          out.values[key] = k == MetricKind::ari ? rand->ari : rand->ri;
          break;
        }
      }
    } catch (const UndefinedMetric& e) {
      undefined(e.what());
    }
  }
  return out;
}

std::vector<PathPair> pair_directories(const fs::path& pred_dir, const fs::path& gt_dir,
                                       std::vector<FileError>& errors) {
  const auto preds = list_mask_files(pred_dir);
  const auto gts = list_mask_files(gt_dir);
  std::map<std::string, fs::path> by_name;
  for (const auto& p : preds) by_name.emplace(p.filename().string(), p);
  std::set<std::string> used;
  std::vector<PathPair> out;
  for (const auto& g : gts) {
    const auto it = by_name.find(g.filename().string());
    if (it == by_name.end()) {
      errors.push_back({g.string(), "no prediction with this file name"});
      continue;
    }
    used.insert(it->first);
    out.emplace_back(it->second, g);
  }
  for (const auto& p : preds) {
    if (!used.count(p.filename().string())) {
      errors.push_back({p.string(), "no ground truth with this file name"});
    }
  }
  return out;
}

MetricReport evaluate_dataset(const std::vector<PathPair>& pairs, const EvalOptions& options) {
  MetricReport report;
  const Connectivity setting = options.connectivity.setting();
  for (MetricKind k : options.metrics) report.add_metric(metric_key(k, setting));
  report.metadata = {
      {"connectivity", std::string(to_string(setting))},
      {"voi_base", options.log_base == LogBase::e ? "e" : "2"},
      {"scope", options.scope == Scope::full ? "full" : "fg"},
      {"binarize_threshold", std::to_string(options.threshold)},
      {"tool_version", std::string(kToolVersion)},
  };

  const std::size_t n = pairs.size();
  std::vector<std::optional<PairEvaluation>> results(n);
  std::vector<std::string> failures(n);
  parallel_for(n, options.workers, [&](std::size_t i) {
    try {
      const BinaryMask pred = load_mask(pairs[i].first, options.threshold);
      const BinaryMask gt = load_mask(pairs[i].second, options.threshold);
      results[i] = evaluate_pair(pred, gt, options);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < n; ++i) {
    const std::string image = pairs[i].second.filename().string();
    if (!results[i]) {
      report.errors.push_back({pairs[i].first.string() + " | " + pairs[i].second.string(), failures[i]});
      continue;
    }
    report.rows.push_back({image, results[i]->values});
    for (const auto& msg : results[i]->undefined) report.errors.push_back({image, msg});
  }
  return report;
}

}  // namespace topoeval
