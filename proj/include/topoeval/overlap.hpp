#pragma once

#include "topoeval/mask.hpp"

namespace topoeval {

/// 2|P & G| / (|P| + |G|); 1 when both masks are empty.
[[nodiscard]] double dice(const BinaryMask& pred, const BinaryMask& gt);

/// One-pixel-wide subset of a 2D mask.
struct Skeleton {
  BinaryMask mask;
};

/// Zhang-Suen thinning iterated to convergence. A component whose pixels
/// are all deletable in one sub-iteration keeps its first raster pixel, so
/// no component vanishes (plain Zhang-Suen erases 2x2 blocks).
/// Throws std::invalid_argument for non-2D input.
[[nodiscard]] Skeleton skeletonize_2d(const BinaryMask& mask);

/// Harmonic mean of |S(P) & G| / |S(P)| and |S(G) & P| / |S(G)|.
/// Throws UndefinedMetric when either skeleton is empty.
[[nodiscard]] double cldice(const BinaryMask& pred, const BinaryMask& gt);

}  // namespace topoeval
