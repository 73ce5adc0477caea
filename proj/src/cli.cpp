#include "topoeval/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topoeval/audit.hpp"
#include "topoeval/error.hpp"
#include "topoeval/evaluate.hpp"
#include "topoeval/io.hpp"
#include "topoeval/parallel.hpp"
#include "topoeval/rank.hpp"
#include "topoeval/report.hpp"
#include "topoeval/susceptibility.hpp"

namespace topoeval {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string token = text.substr(start, comma - start);
    token.erase(0, token.find_first_not_of(' '));
    token.erase(token.find_last_not_of(' ') + 1);
    if (!token.empty()) out.push_back(token);
    start = comma + 1;
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& t : split_list(text)) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || v < 1) throw std::invalid_argument("bad removal size '" + t + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// Picks the output format: explicit flag, else file extension, else csv.
ReportFormat resolve_format(const std::string& flag, const std::string& out_path) {
  if (flag == "json") return ReportFormat::json;
  if (flag == "csv") return ReportFormat::csv;
  if (out_path.empty() || out_path == "-") return ReportFormat::csv;
  return format_for(out_path);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(text, path);
  }
}

int report_errors(const std::vector<FileError>& errors, std::ostream& err) {
  for (const auto& e : errors) err << "error: " << e.path << ": " << e.message << "\n";
  return errors.empty() ? kExitOk : kExitPartial;
}

struct Common {
  int threshold = 0;
  std::size_t workers = worker_count();
  std::string out_path;
  std::string format;
};

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("--out,-o", c.out_path, "Output file (.json or .csv); stdout when omitted");
  cmd->add_option("--format", c.format, "Force output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

void add_common(CLI::App* cmd, Common& c) {
  add_output(cmd, c);
  cmd->add_option("--threshold", c.threshold, "Pixels above this value are foreground")
      ->check(CLI::Range(0, 254));
  cmd->add_option("--workers,-j", c.workers, "Worker threads (default TOPOEVAL_WORKERS or cores)")
      ->check(CLI::PositiveNumber);
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  Common common;
  std::string pred, gt, data, connectivity, metrics, voi_base = "e", scope = "full";
};

std::vector<MetricKind> default_metrics(std::size_t ndim) {
  if (ndim == 3) return parse_metric_list("dice,b0,b1,b2,bm0,bm2,voi,are");
  return parse_metric_list("dice,cldice,b0,b1,bm0,bm1,voi,are");
}

int run_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  EvalOptions opt;
  opt.connectivity = ConnectivityPair{parse_connectivity(a.connectivity)};
  opt.log_base = parse_log_base(a.voi_base);
  opt.scope = parse_scope(a.scope);
  opt.threshold = static_cast<std::uint8_t>(a.common.threshold);
  opt.workers = a.common.workers;

  std::vector<FileError> pairing_errors;
  std::vector<PathPair> pairs;
  if (!a.data.empty()) {
    const DatasetManifest m = load_manifest(a.data);
    if (m.predictions.empty()) throw std::invalid_argument("manifest " + a.data + " lists no predictions");
    for (std::size_t i = 0; i < m.labels.size(); ++i) pairs.emplace_back(m.predictions[i], m.labels[i]);
  } else {
    if (a.pred.empty() || a.gt.empty()) throw std::invalid_argument("eval needs --pred and --gt, or --data");
    if (fs::is_directory(a.pred) != fs::is_directory(a.gt)) {
      throw std::invalid_argument("--pred and --gt must both be files or both be directories");
    }
    if (fs::is_directory(a.pred)) {
      pairs = pair_directories(a.pred, a.gt, pairing_errors);
    } else {
      pairs.emplace_back(a.pred, a.gt);
    }
  }
  if (pairs.empty()) throw std::invalid_argument("no prediction/ground-truth pairs to evaluate");

  if (a.metrics.empty()) {
    // Default set follows the dimensionality of the first readable label.
    std::size_t ndim = 2;
    for (const auto& p : pairs) {
      try {
        ndim = load_mask(p.second, opt.threshold).ndim();
        break;
      } catch (const Error&) {
      }
    }
    opt.metrics = default_metrics(ndim);
  } else {
    opt.metrics = parse_metric_list(a.metrics);
  }

  MetricReport report = evaluate_dataset(pairs, opt);
  report.errors.insert(report.errors.begin(), pairing_errors.begin(), pairing_errors.end());
  const ReportFormat fmt = resolve_format(a.common.format, a.common.out_path);
  emit(fmt == ReportFormat::json ? to_json(report) : to_csv(report), a.common.out_path, out);
  return report_errors(report.errors, err);
}

// --- audit ------------------------------------------------------------------

struct AuditArgs {
  Common common;
  std::string data, removal_sizes = "1,2,5", mode = "simultaneous", connectivity, table = "both";
};

int run_audit(const AuditArgs& a, std::ostream& out, std::ostream& err) {
  const DatasetManifest m = load_manifest(a.data);
  if (m.labels.empty()) throw std::invalid_argument("manifest " + a.data + " lists no labels");
  const ConnectivityPair conn{a.connectivity.empty() ? m.connectivity
                                                     : parse_connectivity(a.connectivity)};
  const auto sizes = parse_sizes(a.removal_sizes);
  const RemovalMode mode = parse_removal_mode(a.mode);
  const auto threshold = static_cast<std::uint8_t>(a.common.threshold);

  const ConnectivityCountTable counts = connectivity_count_report(m, threshold, a.common.workers);
  const RemovalReport removal =
      removal_effect_report(m, conn, sizes, mode, threshold, a.common.workers);

  const ReportFormat fmt = resolve_format(a.common.format, a.common.out_path);
  std::string text;
  if (fmt == ReportFormat::json) {
    text = audit_json(counts, removal);
  } else {
    if (a.table != "removal") text += count_table_csv(counts);
    if (a.table == "both") text += "\n";
    if (a.table != "counts") text += removal_table_csv(removal);
  }
  emit(text, a.common.out_path, out);
  return report_errors(counts.errors, err);
}

// --- susceptibility -----------------------------------------------------------

struct SuscArgs {
  Common common;
  std::string data, metrics = "b0,b1,voi,are", voi_base = "e", scope = "full";
};

int run_susceptibility(const SuscArgs& a, std::ostream& out, std::ostream& err) {
  SusceptibilityOptions opt;
  opt.beta0 = opt.beta1 = opt.voi = opt.are = false;
  for (const auto& t : split_list(a.metrics)) {
    if (t == "b0") {
      opt.beta0 = true;
    } else if (t == "b1") {
      opt.beta1 = true;
    } else if (t == "voi") {
      opt.voi = true;
    } else if (t == "are") {
      opt.are = true;
    } else {
      throw std::invalid_argument("susceptibility metric must be b0, b1, voi or are, got '" + t + "'");
    }
  }
  if (!(opt.beta0 || opt.beta1 || opt.voi || opt.are)) throw std::invalid_argument("no metrics requested");
  opt.scope = parse_scope(a.scope);
  opt.log_base = parse_log_base(a.voi_base);
  opt.threshold = static_cast<std::uint8_t>(a.common.threshold);
  opt.workers = a.common.workers;

  const SusceptibilityReport r = dataset_susceptibility(load_manifest(a.data), opt);
  const ReportFormat fmt = resolve_format(a.common.format, a.common.out_path);
  emit(fmt == ReportFormat::json ? susceptibility_json(r, opt) : susceptibility_csv(r, opt),
       a.common.out_path, out);
  return report_errors(r.errors, err);
}

// --- rankcmp ------------------------------------------------------------------

struct RankArgs {
  Common common;
  std::string scores_a, scores_b, ties = "average";
  std::vector<std::string> pairs;
  std::string higher_better, lower_better;
};

std::string base_name(const std::string& metric) {
  if (metric.size() > 2 && metric[metric.size() - 2] == '_' &&
      (metric.back() == 'A' || metric.back() == 'D')) {
    return metric.substr(0, metric.size() - 2);
  }
  return metric;
}

const ScoreVector& find_column(const std::vector<ScoreVector>& table, const std::string& name,
                               const std::string& which) {
  for (const auto& c : table) {
    if (c.metric == name) return c;
  }
  throw std::invalid_argument("column '" + name + "' not found in " + which);
}

int run_rankcmp(const RankArgs& a, std::ostream& out, std::ostream& err) {
  const TieMethod ties = parse_tie_method(a.ties);
  std::vector<ScoreVector> ta = load_score_table(a.scores_a);
  std::vector<ScoreVector> tb = load_score_table(a.scores_b);
  const auto hb = split_list(a.higher_better);
  const auto lb = split_list(a.lower_better);
  for (auto* table : {&ta, &tb}) {
    for (auto& c : *table) {
      const std::set<std::string> names{c.metric, base_name(c.metric)};
      for (const auto& n : hb) {
        if (names.count(n)) c.direction = Direction::higher_better;
      }
      for (const auto& n : lb) {
        if (names.count(n)) c.direction = Direction::lower_better;
      }
    }
  }

  std::vector<std::pair<const ScoreVector*, const ScoreVector*>> pairs;
  if (!a.pairs.empty()) {
    for (const auto& p : a.pairs) {
      const auto colon = p.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("--pair expects X:Y, got '" + p + "'");
      pairs.emplace_back(&find_column(ta, p.substr(0, colon), a.scores_a),
                         &find_column(tb, p.substr(colon + 1), a.scores_b));
    }
  } else {
    // Same column name first, else same name once the _A/_D suffix is dropped.
    for (const auto& c : ta) {
      const ScoreVector* match = nullptr;
      for (const auto& d : tb) {
        if (d.metric == c.metric) match = &d;
      }
      if (!match) {
        for (const auto& d : tb) {
          if (!match && base_name(d.metric) == base_name(c.metric)) match = &d;
        }
      }
      if (match) pairs.emplace_back(&c, match);
    }
  }
  if (pairs.empty()) throw std::invalid_argument("no columns to compare");

  std::vector<FileError> problems;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string csv = "metric_a,metric_b,spearman,kendall,pearson,avg_difference,avg_rel_change\n";
  for (const auto& [x, y] : pairs) {
    x->validate();
    y->validate();
    const std::string label = x->metric + " vs " + y->metric;
    auto attempt = [&](const char* what, auto fn) -> std::optional<double> {
      try {
        return fn();
      } catch (const UndefinedMetric& e) {
        problems.push_back({label, std::string(what) + " undefined: " + e.what()});
        return std::nullopt;
      }
    };
    const auto rho = attempt("spearman", [&] { return spearman(*x, *y, ties); });
    const auto tau = attempt("kendall", [&] { return kendall(*x, *y, ties); });
    const auto r = attempt("pearson", [&] { return pearson(*x, *y); });
    const auto diff = attempt("avg_difference", [&] { return avg_difference(*x, *y); });
    const auto rel = attempt("avg_rel_change", [&] { return avg_rel_change(*x, *y).value; });
    auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; };
    auto jv = [](const std::optional<double>& v) {
      return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    csv += x->metric + "," + y->metric + "," + cell(rho) + "," + cell(tau) + "," + cell(r) + "," +
           cell(diff) + "," + cell(rel) + "\n";
    rows.push_back({{"metric_a", x->metric},
                    {"metric_b", y->metric},
                    {"spearman", jv(rho)},
                    {"kendall", jv(tau)},
                    {"pearson", jv(r)},
                    {"avg_difference", jv(diff)},
                    {"avg_rel_change", jv(rel)}});
  }

  const ReportFormat fmt = resolve_format(a.common.format, a.common.out_path);
  if (fmt == ReportFormat::json) {
    nlohmann::ordered_json j;
    j["schema"] = "topoeval.rankcmp/1";
    j["metadata"] = {{"ties", a.ties}, {"tool_version", kToolVersion}};
    j["comparisons"] = rows;
    nlohmann::ordered_json errors = nlohmann::ordered_json::array();
    for (const auto& e : problems) errors.push_back({{"path", e.path}, {"message", e.message}});
    j["errors"] = errors;
    emit(j.dump(2) + "\n", a.common.out_path, out);
  } else {
    emit(csv, a.common.out_path, out);
  }
  return report_errors(problems, err);
}

// --- clean --------------------------------------------------------------------

struct CleanArgs {
  Common common;
  std::string in, out, phase = "both", connectivity, mode = "simultaneous";
  std::size_t min_size = 0;
};

int run_clean(const CleanArgs& a, std::ostream& out, std::ostream& err) {
  const ConnectivityPair conn{parse_connectivity(a.connectivity)};
  const PhaseSelection phases = parse_phase_selection(a.phase);
  const RemovalMode mode = parse_removal_mode(a.mode);
  if (a.min_size == 0) throw std::invalid_argument("--min-size must be >= 1");
  const auto threshold = static_cast<std::uint8_t>(a.common.threshold);

  std::vector<std::pair<fs::path, fs::path>> jobs;
  if (fs::is_directory(a.in)) {
    fs::create_directories(a.out);
    for (const auto& f : list_mask_files(a.in)) jobs.emplace_back(f, fs::path(a.out) / f.filename());
  } else {
    jobs.emplace_back(a.in, a.out);
  }
  if (jobs.empty()) throw std::invalid_argument("no mask files in " + a.in);

  std::vector<std::string> failures(jobs.size());
  parallel_for(jobs.size(), a.common.workers, [&](std::size_t i) {
    try {
      const BinaryMask m = load_mask(jobs[i].first, threshold);
      save_mask(remove_small_components(m, conn, a.min_size, phases, mode), jobs[i].second);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  std::vector<FileError> errors;
  std::size_t written = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (failures[i].empty()) {
      ++written;
    } else {
      errors.push_back({jobs[i].first.string(), failures[i]});
    }
  }
  out << "cleaned " << written << " of " << jobs.size() << " masks\n";
  return report_errors(errors, err);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topology-aware segmentation evaluation", "topoeval"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Score predictions against ground truth");
  eval->add_option("--pred", ea.pred, "Prediction mask or directory");
  eval->add_option("--gt", ea.gt, "Ground-truth mask or directory");
  eval->add_option("--data", ea.data, "Dataset manifest with labels and predictions");
  eval->add_option("--connectivity,-c", ea.connectivity, "A or D")
      ->required()
      ->check(CLI::IsMember({"A", "D"}));
  eval->add_option("--metrics,-m", ea.metrics,
                   "Comma list of dice,cldice,b0,b1,b2,bm0,bm1,bm2,voi,are,ari,ri");
  eval->add_option("--voi-base", ea.voi_base, "Logarithm base for VOI")->check(CLI::IsMember({"e", "2"}));
  eval->add_option("--scope", ea.scope, "Pixels entering VOI/ARE/ARI/RI")
      ->check(CLI::IsMember({"full", "fg"}));
  add_common(eval, ea.common);

  AuditArgs aa;
  auto* audit = app.add_subcommand("audit", "Connectivity and small-component audit of labels");
  audit->add_option("--data", aa.data, "Dataset manifest")->required();
  audit->add_option("--removal-sizes", aa.removal_sizes, "Ascending comma list of sizes");
  audit->add_option("--mode", aa.mode, "Removal order")
      ->check(CLI::IsMember({"simultaneous", "sequential"}));
  audit->add_option("--connectivity,-c", aa.connectivity, "Override the manifest setting")
      ->check(CLI::IsMember({"A", "D"}));
  audit->add_option("--table", aa.table, "CSV tables to print")
      ->check(CLI::IsMember({"counts", "removal", "both"}));
  add_common(audit, aa.common);

  SuscArgs sa;
  auto* susc = app.add_subcommand("susceptibility", "How much label metrics move between D and A");
  susc->add_option("--data", sa.data, "Dataset manifest")->required();
  susc->add_option("--metrics,-m", sa.metrics, "Comma list of b0,b1,voi,are");
  susc->add_option("--voi-base", sa.voi_base, "Logarithm base for VOI")->check(CLI::IsMember({"e", "2"}));
  susc->add_option("--scope", sa.scope, "Pixels entering VOI/ARE")->check(CLI::IsMember({"full", "fg"}));
  add_common(susc, sa.common);

  RankArgs ra;
  auto* rankcmp = app.add_subcommand("rankcmp", "Compare method rankings of two score tables");
  rankcmp->add_option("--scores-a", ra.scores_a, "CSV: method,<metric>,...")->required();
  rankcmp->add_option("--scores-b", ra.scores_b, "CSV: method,<metric>,...")->required();
  rankcmp->add_option("--pair", ra.pairs, "Explicit column pair X:Y (repeatable)");
  rankcmp->add_option("--ties", ra.ties, "Rank tie handling")
      ->check(CLI::IsMember({"average", "ordinal"}));
  rankcmp->add_option("--higher-better", ra.higher_better, "Comma list of higher-is-better columns");
  rankcmp->add_option("--lower-better", ra.lower_better, "Comma list of lower-is-better columns");
  add_output(rankcmp, ra.common);

  CleanArgs ca;
  auto* clean = app.add_subcommand("clean", "Remove small components from masks");
  clean->add_option("--in", ca.in, "Input mask or directory")->required();
  clean->add_option("--out", ca.out, "Output mask or directory")->required();
  clean->add_option("--min-size", ca.min_size, "Components with at most this many pixels are removed")
      ->required();
  clean->add_option("--phase", ca.phase, "Phases to clean")->check(CLI::IsMember({"fg", "bg", "both"}));
  clean->add_option("--connectivity,-c", ca.connectivity, "A or D")
      ->required()
      ->check(CLI::IsMember({"A", "D"}));
  clean->add_option("--mode", ca.mode, "Removal order")
      ->check(CLI::IsMember({"simultaneous", "sequential"}));
  clean->add_option("--threshold", ca.common.threshold, "Pixels above this value are foreground")
      ->check(CLI::Range(0, 254));
  clean->add_option("--workers,-j", ca.common.workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return run_eval(ea, out, err);
    if (*audit) return run_audit(aa, out, err);
    if (*susc) return run_susceptibility(sa, out, err);
    if (*rankcmp) return run_rankcmp(ra, out, err);
    if (*clean) return run_clean(ca, out, err);
  } catch (const std::exception& e) {
    err << "topoeval: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace topoeval
