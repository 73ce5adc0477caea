#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "topoeval/connectivity.hpp"
#include "topoeval/mask.hpp"

namespace topoeval {

/// Reads a 2D grayscale PNG (bit depth <= 8) or a 2D/3D uint8 NRRD
/// (raw or gzip encoding, attached data). Pixels strictly greater than
/// `threshold` are foreground. Throws FormatError on unsupported or
/// corrupt input.
[[nodiscard]] BinaryMask load_mask(const std::filesystem::path& path, std::uint8_t threshold = 0);

/// Writes an 8-bit PNG (0/255, 2D only) or a gzip NRRD (0/1) depending on
/// the extension. Throws FormatError on I/O failure or unknown extension.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Dataset description read from JSON:
///
///   {"name": "drive", "connectivity": "A", "dimensionality": 2,
///    "labels": ["gt/01.png", ...], "predictions": ["pred/01.png", ...]}
///
/// Relative paths resolve against the manifest's directory. "predictions"
/// is optional; when present it pairs index-wise with "labels".
struct DatasetManifest {
  std::string name;
  std::vector<std::filesystem::path> labels;
  std::vector<std::filesystem::path> predictions;
  std::size_t dimensionality = 2;
  Connectivity connectivity = Connectivity::A;
};

/// Throws FormatError on malformed JSON, missing fields, duplicate paths
/// or unequal label/prediction counts.
[[nodiscard]] DatasetManifest load_manifest(const std::filesystem::path& path);
[[nodiscard]] DatasetManifest parse_manifest(const std::string& json_text,
                                             const std::filesystem::path& base_dir);

/// Mask files (.png, .nrrd) directly inside `dir`, sorted by file name.
[[nodiscard]] std::vector<std::filesystem::path> list_mask_files(const std::filesystem::path& dir);

}  // namespace topoeval
