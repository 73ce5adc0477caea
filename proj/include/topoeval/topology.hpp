#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "topoeval/connectivity.hpp"
#include "topoeval/mask.hpp"

namespace topoeval {

/// Cubical complex built from a binary image.
///   V: pixels are vertices; higher cells fill fully-foreground blocks.
///      Matches direct foreground adjacency (setting D).
///   T: pixels are top-dimensional cells closed under faces.
///      Matches all-neighbor foreground adjacency (setting A).
enum class Construction { V, T };

[[nodiscard]] std::string_view to_string(Construction c) noexcept;
[[nodiscard]] constexpr Construction construction_for(Connectivity c) noexcept {
  return c == Connectivity::A ? Construction::T : Construction::V;
}

/// Number of cells of each dimension (vertices, edges, squares, cubes).
struct CellCensus {
  std::array<std::size_t, 4> cells{};

  [[nodiscard]] std::int64_t euler() const noexcept {
    return static_cast<std::int64_t>(cells[0]) - static_cast<std::int64_t>(cells[1]) +
           static_cast<std::int64_t>(cells[2]) - static_cast<std::int64_t>(cells[3]);
  }
};

[[nodiscard]] CellCensus cell_census(const BinaryMask& mask, Construction construction);
[[nodiscard]] std::int64_t euler_characteristic(const BinaryMask& mask, Construction construction);

struct TopologySummary {
  std::vector<std::size_t> betti;  // beta_0 .. beta_{ndim-1}
  std::int64_t euler = 0;
  Construction construction = Construction::T;
  ConnectivityPair connectivity;
};

/// Background components that do not reach the image frame, counted on
/// the one-pixel background-padded mask under the background adjacency.
[[nodiscard]] std::size_t bounded_background_components(const BinaryMask& mask,
                                                        ConnectivityPair conn);

/// beta_0 from foreground labeling. In 2D beta_1 counts bounded background
/// components; in 3D those are beta_2 and beta_1 follows from the Euler
/// characteristic of the matching construction.
[[nodiscard]] TopologySummary betti_numbers(const BinaryMask& mask, ConnectivityPair conn);

/// |beta_dim(pred) - beta_dim(gt)|. Throws DimensionMismatch on shape
/// mismatch and std::invalid_argument when dim >= ndim.
[[nodiscard]] std::size_t betti_number_error(const BinaryMask& pred, const BinaryMask& gt,
                                             ConnectivityPair conn, std::size_t dim);

}  // namespace topoeval
