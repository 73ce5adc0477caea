#include "topoeval/mask.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "topoeval/error.hpp"

namespace topoeval {

namespace {

std::size_t checked_volume(const std::vector<std::size_t>& dims) {
  if (dims.size() != 2 && dims.size() != 3) {
    throw std::invalid_argument("mask must be 2D or 3D, got " + std::to_string(dims.size()) +
                                " dimensions");
  }
  std::size_t volume = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("mask extents must be >= 1");
    volume *= d;
  }
  return volume;
}

std::string dims_string(const std::vector<std::size_t>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(dims[i]);
  }
  return out;
}

template <typename Op>
BinaryMask pointwise(const BinaryMask& a, const BinaryMask& b, Op op) {
  require_same_dims(a, b);
  std::vector<std::uint8_t> out(a.size());
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(da[i] != 0, db[i] != 0) ? 1 : 0;
  return BinaryMask(a.dims(), std::move(out));
}

}  // namespace

BinaryMask::BinaryMask(std::vector<std::size_t> dims)
    : dims_(std::move(dims)), data_(checked_volume(dims_), 0) {}

BinaryMask::BinaryMask(std::vector<std::size_t> dims, std::vector<std::uint8_t> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (data_.size() != checked_volume(dims_)) {
    throw std::invalid_argument("mask data length " + std::to_string(data_.size()) +
                                " does not match dims " + dims_string(dims_));
  }
  for (auto& v : data_) v = v ? 1 : 0;
}

BinaryMask BinaryMask::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty mask literal");
  const std::size_t cols = rows.front().size();
  std::vector<std::uint8_t> data;
  data.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw std::invalid_argument("ragged mask literal");
    for (char ch : row) data.push_back(ch == '#' || ch == '1' ? 1 : 0);
  }
  return BinaryMask({rows.size(), cols}, std::move(data));
}

std::size_t BinaryMask::index(std::size_t r, std::size_t c) const {
  if (dims_.size() != 2 || r >= dims_[0] || c >= dims_[1]) throw std::out_of_range("mask index");
  return r * dims_[1] + c;
}

std::size_t BinaryMask::index(std::size_t z, std::size_t r, std::size_t c) const {
  if (dims_.size() != 3 || z >= dims_[0] || r >= dims_[1] || c >= dims_[2]) {
    throw std::out_of_range("mask index");
  }
  return (z * dims_[1] + r) * dims_[2] + c;
}

std::array<std::size_t, 3> BinaryMask::coords(std::size_t flat) const noexcept {
  const std::size_t cols = dims_.back();
  const std::size_t rows = dims_[dims_.size() - 2];
  return {flat / (rows * cols), (flat / cols) % rows, flat % cols};
}

std::size_t BinaryMask::count_foreground() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

void require_same_dims(const BinaryMask& a, const BinaryMask& b) {
  if (a.dims() != b.dims()) {
    throw DimensionMismatch("mask dims differ: " + dims_string(a.dims()) + " vs " +
                            dims_string(b.dims()));
  }
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
  return pointwise(a, b, std::logical_or<>{});
}

BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b) {
  return pointwise(a, b, std::logical_and<>{});
}

BinaryMask mask_complement(const BinaryMask& a) {
  std::vector<std::uint8_t> out(a.size());
  const auto d = a.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = d[i] ? 0 : 1;
  return BinaryMask(a.dims(), std::move(out));
}

BinaryMask pad_with_background(const BinaryMask& a, std::size_t width) {
  std::vector<std::size_t> dims = a.dims();
  for (auto& d : dims) d += 2 * width;
  BinaryMask out(dims);
  const std::size_t nd = a.ndim();
  const std::size_t src_cols = a.dims()[nd - 1];
  const std::size_t src_rows = a.dims()[nd - 2];
  const std::size_t src_slices = nd == 3 ? a.dims()[0] : 1;
  const std::size_t dst_cols = dims[nd - 1];
  const std::size_t dst_rows = dims[nd - 2];
  const std::size_t z_off = nd == 3 ? width : 0;
  for (std::size_t z = 0; z < src_slices; ++z) {
    for (std::size_t r = 0; r < src_rows; ++r) {
      const std::size_t src = (z * src_rows + r) * src_cols;
      const std::size_t dst = ((z + z_off) * dst_rows + r + width) * dst_cols + width;
      for (std::size_t c = 0; c < src_cols; ++c) out.set(dst + c, a[src + c]);
    }
  }
  return out;
}

}  // namespace topoeval
