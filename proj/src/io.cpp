#include "topoeval/io.hpp"

#include <png.h>
#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "topoeval/error.hpp"

namespace topoeval {

namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------- PNG

BinaryMask load_png(const fs::path& path, std::uint8_t threshold) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw FormatError(path.string() + ": " + image.message);
  }
  const auto fmt = image.format;
  if ((fmt & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_ALPHA | PNG_FORMAT_FLAG_LINEAR |
              PNG_FORMAT_FLAG_COLORMAP)) != 0) {
    png_image_free(&image);
    throw FormatError(path.string() + ": only 8-bit grayscale PNG masks are supported");
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    throw FormatError(path.string() + ": " + image.message);
  }
  for (auto& p : pixels) p = p > threshold ? 1 : 0;
  return BinaryMask({image.height, image.width}, std::move(pixels));
}

void save_png(const BinaryMask& mask, const fs::path& path) {
  if (mask.ndim() != 2) throw FormatError("PNG output requires a 2D mask: " + path.string());
  std::vector<std::uint8_t> pixels(mask.size());
  const auto d = mask.data();
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = d[i] ? 255 : 0;
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(mask.dims()[1]);
  image.height = static_cast<png_uint_32>(mask.dims()[0]);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr)) {
    throw FormatError(path.string() + ": " + image.message);
  }
}

// ---------------------------------------------------------------- NRRD

std::string trim(std::string s) {
  auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string gunzip(const std::string& compressed, std::size_t expected, const fs::path& path) {
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, 15 + 32) != Z_OK) throw FormatError(path.string() + ": zlib init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) {
    throw FormatError(path.string() + ": gzip payload is corrupt or has the wrong size");
  }
  return out;
}

std::string gzip(const std::string& raw) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw FormatError("zlib init failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(raw.size())) + 32, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(raw.data()));
  zs.avail_in = static_cast<uInt>(raw.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw FormatError("gzip compression failed");
  return out;
}

BinaryMask load_nrrd(const fs::path& path, std::uint8_t threshold) {
  const std::string content = read_file(path);
  std::size_t pos = 0;
  auto next_line = [&](std::string& line) {
    if (pos >= content.size()) return false;
    const std::size_t end = content.find('\n', pos);
    const std::size_t stop = end == std::string::npos ? content.size() : end;
    line = content.substr(pos, stop - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos = end == std::string::npos ? content.size() : end + 1;
    return true;
  };

  std::string line;
  if (!next_line(line) || line.rfind("NRRD000", 0) != 0) {
    throw FormatError(path.string() + ": missing NRRD magic");
  }
  std::string type, encoding = "raw";
  std::size_t dimension = 0;
  std::vector<std::size_t> sizes;
  bool header_done = false;
  while (next_line(line)) {
    if (line.empty()) {
      header_done = true;
      break;
    }
    if (line[0] == '#') continue;
    if (line.find(":=") != std::string::npos) continue;  // key/value pairs
    const std::size_t colon = line.find(": ");
    if (colon == std::string::npos) throw FormatError(path.string() + ": bad header line '" + line + "'");
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 2));
    if (key == "type") {
      type = value;
    } else if (key == "dimension") {
      dimension = std::stoul(value);
    } else if (key == "sizes") {
      std::istringstream ss(value);
      std::size_t s = 0;
      while (ss >> s) sizes.push_back(s);
    } else if (key == "encoding") {
      encoding = value;
    } else if (key == "data file" || key == "datafile") {
      throw FormatError(path.string() + ": detached NRRD data files are not supported");
    }
  }
  if (!header_done) throw FormatError(path.string() + ": NRRD header not terminated");
  if (type != "uchar" && type != "unsigned char" && type != "uint8" && type != "uint8_t") {
    throw FormatError(path.string() + ": unsupported NRRD type '" + type + "' (need uint8)");
  }
  if ((dimension != 2 && dimension != 3) || sizes.size() != dimension) {
    throw FormatError(path.string() + ": NRRD must be 2D or 3D with matching sizes");
  }
  std::size_t volume = 1;
  for (std::size_t s : sizes) {
    if (s == 0) throw FormatError(path.string() + ": zero NRRD extent");
    volume *= s;
  }

  std::string payload = content.substr(pos);
  if (encoding == "gzip" || encoding == "gz") {
    payload = gunzip(payload, volume, path);
  } else if (encoding != "raw") {
    throw FormatError(path.string() + ": unsupported NRRD encoding '" + encoding + "'");
  }
  if (payload.size() != volume) {
    throw FormatError(path.string() + ": NRRD payload has " + std::to_string(payload.size()) +
                      " bytes, expected " + std::to_string(volume));
  }

  std::vector<std::uint8_t> data(volume);
  for (std::size_t i = 0; i < volume; ++i) {
    data[i] = static_cast<std::uint8_t>(payload[i]) > threshold ? 1 : 0;
  }
  // NRRD lists the fastest axis first.
  std::vector<std::size_t> dims(sizes.rbegin(), sizes.rend());
  return BinaryMask(std::move(dims), std::move(data));
}

void save_nrrd(const BinaryMask& mask, const fs::path& path) {
  std::string raw(mask.size(), '\0');
  const auto d = mask.data();
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = static_cast<char>(d[i]);
  std::ostringstream header;
  header << "NRRD0004\ntype: uint8\ndimension: " << mask.ndim() << "\nsizes:";
  for (auto it = mask.dims().rbegin(); it != mask.dims().rend(); ++it) header << ' ' << *it;
  header << "\nencoding: gzip\n\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << header.str() << gzip(raw);
  if (!out) throw FormatError("write failed: " + path.string());
}

std::vector<fs::path> path_list(const nlohmann::json& j, const char* key, const fs::path& base) {
  std::vector<fs::path> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw FormatError(std::string("manifest field '") + key + "' must be a list");
  for (const auto& item : j.at(key)) {
    fs::path p = item.get<std::string>();
    out.push_back(p.is_absolute() ? p : base / p);
  }
  return out;
}

}  // namespace

BinaryMask load_mask(const fs::path& path, std::uint8_t threshold) {
  if (!fs::exists(path)) throw FormatError("no such file: " + path.string());
  const std::string ext = lower_extension(path);
  if (ext == ".png") return load_png(path, threshold);
  if (ext == ".nrrd") return load_nrrd(path, threshold);
  throw FormatError(path.string() + ": unsupported mask format (expected .png or .nrrd)");
}

void save_mask(const BinaryMask& mask, const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") return save_png(mask, path);
  if (ext == ".nrrd") return save_nrrd(mask, path);
  throw FormatError(path.string() + ": unsupported mask format (expected .png or .nrrd)");
}

DatasetManifest parse_manifest(const std::string& json_text, const fs::path& base_dir) {
  DatasetManifest m;
  try {
    const auto j = nlohmann::json::parse(json_text);
    m.name = j.value("name", std::string{});
    if (!j.contains("connectivity")) throw FormatError("manifest lacks 'connectivity' (A or D)");
    m.connectivity = parse_connectivity(j.at("connectivity").get<std::string>());
    m.dimensionality = j.value("dimensionality", std::size_t{2});
    if (m.dimensionality != 2 && m.dimensionality != 3) {
      throw FormatError("manifest dimensionality must be 2 or 3");
    }
    if (!j.contains("labels")) throw FormatError("manifest lacks 'labels'");
    m.labels = path_list(j, "labels", base_dir);
    m.predictions = path_list(j, "predictions", base_dir);
    if (j.contains("predictions") && m.predictions.size() != m.labels.size()) {
      throw FormatError("manifest has " + std::to_string(m.labels.size()) + " labels but " +
                        std::to_string(m.predictions.size()) + " predictions");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
  std::set<fs::path> seen;
  for (const auto* list : {&m.labels, &m.predictions}) {
    for (const auto& p : *list) {
      if (!seen.insert(p.lexically_normal()).second) {
        throw FormatError("manifest lists " + p.string() + " more than once");
      }
    }
  }
  return m;
}

DatasetManifest load_manifest(const fs::path& path) {
  return parse_manifest(read_file(path), path.parent_path());
}

std::vector<fs::path> list_mask_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FormatError("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower_extension(entry.path());
    if (ext == ".png" || ext == ".nrrd") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace topoeval
