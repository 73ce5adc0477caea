#include "topoeval/susceptibility.hpp"

#include <stdexcept>

#include <json.hpp>

#include "topoeval/labeling.hpp"
#include "topoeval/parallel.hpp"
#include "topoeval/topology.hpp"

namespace topoeval {

namespace {

constexpr ConnectivityPair kD{Connectivity::D};
constexpr ConnectivityPair kA{Connectivity::A};

std::optional<double> mean_of(const std::vector<ImageSusceptibility>& images,
                              std::optional<double> ImageSusceptibility::*field) {
  if (images.empty() || !(images.front().*field)) return std::nullopt;
  double sum = 0;
  for (const auto& img : images) sum += *(img.*field);
  return sum / static_cast<double>(images.size());
}

ImageSusceptibility evaluate(const BinaryMask& label, const SusceptibilityOptions& o) {
  ImageSusceptibility out;
  if (o.beta0 || o.beta1) {
    const TopologySummary d = betti_numbers(label, kD);
    const TopologySummary a = betti_numbers(label, kA);
    auto diff = [](std::size_t x, std::size_t y) { return static_cast<double>(x > y ? x - y : y - x); };
    if (o.beta0) out.beta0 = diff(d.betti[0], a.betti[0]);
    if (o.beta1) out.beta1 = diff(d.betti[1], a.betti[1]);
  }
  if (o.voi || o.are) {
    const ContingencyTable t =
        build_contingency(label_components(label, kD), label_components(label, kA), o.scope);
    if (o.voi) out.voi = variation_of_information(t, o.log_base);
    if (o.are) out.are = adapted_rand_error(t);
  }
  return out;
}

void finalize(SusceptibilityReport& r) {
  r.beta0 = mean_of(r.images, &ImageSusceptibility::beta0);
  r.beta1 = mean_of(r.images, &ImageSusceptibility::beta1);
  r.voi = mean_of(r.images, &ImageSusceptibility::voi);
  r.are = mean_of(r.images, &ImageSusceptibility::are);
}

std::vector<std::pair<std::string, std::optional<double> ImageSusceptibility::*>> columns(
    const SusceptibilityOptions& o) {
  std::vector<std::pair<std::string, std::optional<double> ImageSusceptibility::*>> out;
  if (o.beta0) out.emplace_back("B0_DvsA", &ImageSusceptibility::beta0);
  if (o.beta1) out.emplace_back("B1_DvsA", &ImageSusceptibility::beta1);
  if (o.voi) out.emplace_back("VOI_DvsA", &ImageSusceptibility::voi);
  if (o.are) out.emplace_back("ARE_DvsA", &ImageSusceptibility::are);
  return out;
}

}  // namespace

std::size_t susceptibility_beta(const BinaryMask& label, std::size_t dim) {
  if (dim >= label.ndim()) throw std::invalid_argument("Betti dimension out of range");
  const std::size_t d = betti_numbers(label, kD).betti[dim];
  const std::size_t a = betti_numbers(label, kA).betti[dim];
  return d > a ? d - a : a - d;
}

double susceptibility_partition(const BinaryMask& label, PartitionMetric metric, Scope scope,
                                LogBase base) {
  const ContingencyTable t =
      build_contingency(label_components(label, kD), label_components(label, kA), scope);
  return metric == PartitionMetric::voi ? variation_of_information(t, base) : adapted_rand_error(t);
}

SusceptibilityReport susceptibility_of(const std::vector<BinaryMask>& labels,
                                       const SusceptibilityOptions& options) {
  SusceptibilityReport r;
  r.images.resize(labels.size());
  parallel_for(labels.size(), options.workers,
               [&](std::size_t i) { r.images[i] = evaluate(labels[i], options); });
  finalize(r);
  return r;
}

SusceptibilityReport dataset_susceptibility(const DatasetManifest& manifest,
                                            const SusceptibilityOptions& options) {
  if (manifest.labels.empty()) throw std::invalid_argument("manifest lists no labels");
  const std::size_t n = manifest.labels.size();
  std::vector<std::optional<ImageSusceptibility>> results(n);
  std::vector<std::string> failures(n);
  parallel_for(n, options.workers, [&](std::size_t i) {
    try {
      ImageSusceptibility img = evaluate(load_mask(manifest.labels[i], options.threshold), options);
      img.path = manifest.labels[i].string();
      results[i] = std::move(img);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  SusceptibilityReport r;
  r.dataset = manifest.name;
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i]) {
      r.images.push_back(std::move(*results[i]));
    } else {
      r.errors.push_back({manifest.labels[i].string(), failures[i]});
    }
  }
  finalize(r);
  return r;
}

std::string susceptibility_csv(const SusceptibilityReport& report,
                               const SusceptibilityOptions& options) {
  const auto cols = columns(options);
  std::string out = "dataset,image";
  for (const auto& [name, field] : cols) out += "," + name;
  out += "\n";
  auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; };
  for (const auto& img : report.images) {
    out += report.dataset + "," + img.path;
    for (const auto& [name, field] : cols) out += "," + cell(img.*field);
    out += "\n";
  }
  out += report.dataset + ",mean";
  const ImageSusceptibility mean_row{"", report.beta0, report.beta1, report.voi, report.are};
  for (const auto& [name, field] : cols) out += "," + cell(mean_row.*field);
  out += "\n";
  return out;
}

std::string susceptibility_json(const SusceptibilityReport& report,
                                const SusceptibilityOptions& options) {
  const auto cols = columns(options);
  auto value_of = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["schema"] = "topoeval.susceptibility/1";
  j["dataset"] = report.dataset;
  j["metadata"] = {{"scope", options.scope == Scope::full ? "full" : "fg"},
                   {"voi_base", options.log_base == LogBase::e ? "e" : "2"},
                   {"tool_version", kToolVersion}};
  j["image_count"] = report.image_count();
  const ImageSusceptibility mean_row{"", report.beta0, report.beta1, report.voi, report.are};
  nlohmann::ordered_json mean = nlohmann::ordered_json::object();
  for (const auto& [name, field] : cols) mean[name] = value_of(mean_row.*field);
  j["mean"] = mean;
  nlohmann::ordered_json images = nlohmann::ordered_json::array();
  for (const auto& img : report.images) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (const auto& [name, field] : cols) values[name] = value_of(img.*field);
    images.push_back({{"image", img.path}, {"values", values}});
  }
  j["images"] = images;
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const auto& e : report.errors) errors.push_back({{"path", e.path}, {"message", e.message}});
  j["errors"] = errors;
  return j.dump(2) + "\n";
}

}  // namespace topoeval
