#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "topoeval/connectivity.hpp"
#include "topoeval/mask.hpp"

namespace topoeval {

/// Per-dimension Betti matching between a prediction and a ground truth.
///
/// Dimension 0 features are foreground components; dimension 1 (2D) and
/// dimension 2 (3D) features are holes/cavities, i.e. bounded background
/// components. Feature ids number the features of one mask from 0 in
/// raster first-visit order.
struct MatchingResult {
  std::size_t dim = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> matched_pairs;  // (pred id, gt id)
  std::size_t betti_pred = 0;
  std::size_t betti_gt = 0;
  std::size_t unmatched_pred = 0;
  std::size_t unmatched_gt = 0;
  std::size_t bm_error = 0;
};

/// Components are matched through the foreground union: every union
/// component that meets both masks yields one pair, represented by the
/// lowest-id component on each side.
[[nodiscard]] MatchingResult match_dim0(const BinaryMask& pred, const BinaryMask& gt,
                                        ConnectivityPair conn);

/// Holes of pred and gt are linked when a bounded background component of
/// the union lies in both; the pair set is a maximum-cardinality matching
/// of that bipartite graph. Throws std::invalid_argument for non-2D input.
[[nodiscard]] MatchingResult match_dim1_2d(const BinaryMask& pred, const BinaryMask& gt,
                                           ConnectivityPair conn);

/// Cavity analogue of match_dim1_2d for 3D masks.
[[nodiscard]] MatchingResult match_dim2_3d(const BinaryMask& pred, const BinaryMask& gt,
                                           ConnectivityPair conn);

/// Dispatches on dim: 0 everywhere, 1 for 2D, 2 for 3D. 3D dimension 1 is
/// not supported and throws std::invalid_argument.
[[nodiscard]] MatchingResult betti_matching(const BinaryMask& pred, const BinaryMask& gt,
                                            ConnectivityPair conn, std::size_t dim);

/// Maximum-cardinality bipartite matching (Hopcroft-Karp). `adjacency[l]`
/// lists right vertices of left vertex l. Returns the matched right vertex
/// per left vertex, or -1.
[[nodiscard]] std::vector<std::ptrdiff_t> maximum_bipartite_matching(
    const std::vector<std::vector<std::size_t>>& adjacency, std::size_t right_count);

}  // namespace topoeval
