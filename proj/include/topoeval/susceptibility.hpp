#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topoeval/io.hpp"
#include "topoeval/mask.hpp"
#include "topoeval/partition.hpp"
#include "topoeval/report.hpp"

namespace topoeval {

// Connectivity susceptibility: how much a metric computed on one label
// changes between the D and A partitions of that label. Large values mean
// the dataset's topology depends strongly on the connectivity choice.

/// |beta_dim under D - beta_dim under A| for a single label.
[[nodiscard]] std::size_t susceptibility_beta(const BinaryMask& label, std::size_t dim);

enum class PartitionMetric { voi, are };

/// VOI or ARE between label_components(label, D) and label_components(label, A).
[[nodiscard]] double susceptibility_partition(const BinaryMask& label, PartitionMetric metric,
                                              Scope scope = Scope::full,
                                              LogBase base = LogBase::e);

struct SusceptibilityOptions {
  bool beta0 = true;
  bool beta1 = true;
  bool voi = true;
  bool are = true;
  Scope scope = Scope::full;
  LogBase log_base = LogBase::e;
  std::uint8_t threshold = 0;
  std::size_t workers = 1;
};

struct ImageSusceptibility {
  std::string path;
  std::optional<double> beta0, beta1, voi, are;
};

struct SusceptibilityReport {
  std::string dataset;
  std::vector<ImageSusceptibility> images;  // successfully processed, manifest order
  std::vector<FileError> errors;
  std::optional<double> beta0, beta1, voi, are;  // per-image means

  [[nodiscard]] std::size_t image_count() const noexcept { return images.size(); }
};

/// Per-image values for an in-memory label set.
[[nodiscard]] SusceptibilityReport susceptibility_of(const std::vector<BinaryMask>& labels,
                                                     const SusceptibilityOptions& options);

/// Loads every label of the manifest; unreadable files become error
/// entries. Throws std::invalid_argument for an empty manifest.
[[nodiscard]] SusceptibilityReport dataset_susceptibility(const DatasetManifest& manifest,
                                                          const SusceptibilityOptions& options);

/// Table-3-shaped output: one dataset row plus per-image rows.
[[nodiscard]] std::string susceptibility_csv(const SusceptibilityReport& report,
                                             const SusceptibilityOptions& options);
[[nodiscard]] std::string susceptibility_json(const SusceptibilityReport& report,
                                              const SusceptibilityOptions& options);

}  // namespace topoeval
