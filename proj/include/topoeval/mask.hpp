#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace topoeval {

/// Dense 2D or 3D binary grid in row-major order (last axis fastest).
/// 2D dims are {rows, cols}; 3D dims are {slices, rows, cols}.
class BinaryMask {
 public:
  BinaryMask() = default;

  /// All-background mask of the given shape. Throws std::invalid_argument
  /// unless dims has 2 or 3 entries, each >= 1.
  explicit BinaryMask(std::vector<std::size_t> dims);

  /// Takes ownership of `data` (nonzero = foreground).
  BinaryMask(std::vector<std::size_t> dims, std::vector<std::uint8_t> data);

  static BinaryMask from_rows(const std::vector<std::string>& rows);

  [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  [[nodiscard]] std::size_t ndim() const noexcept { return dims_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] std::span<const std::uint8_t> data() const noexcept { return data_; }

  [[nodiscard]] bool operator[](std::size_t flat) const noexcept { return data_[flat] != 0; }
  void set(std::size_t flat, bool value) noexcept { data_[flat] = value ? 1 : 0; }

  [[nodiscard]] bool at(std::size_t r, std::size_t c) const { return data_[index(r, c)] != 0; }
  [[nodiscard]] bool at(std::size_t z, std::size_t r, std::size_t c) const {
    return data_[index(z, r, c)] != 0;
  }
  void set(std::size_t r, std::size_t c, bool value) { data_[index(r, c)] = value ? 1 : 0; }
  void set(std::size_t z, std::size_t r, std::size_t c, bool value) {
    data_[index(z, r, c)] = value ? 1 : 0;
  }

  [[nodiscard]] std::size_t index(std::size_t r, std::size_t c) const;
  [[nodiscard]] std::size_t index(std::size_t z, std::size_t r, std::size_t c) const;

  /// Coordinates of a flat index, padded to three entries ({0, r, c} in 2D).
  [[nodiscard]] std::array<std::size_t, 3> coords(std::size_t flat) const noexcept;

  [[nodiscard]] std::size_t count_foreground() const noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::uint8_t> data_;
};

/// Throws DimensionMismatch unless both masks have identical dims.
void require_same_dims(const BinaryMask& a, const BinaryMask& b);

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_complement(const BinaryMask& a);
BinaryMask pad_with_background(const BinaryMask& a, std::size_t width = 1);

}  // namespace topoeval
