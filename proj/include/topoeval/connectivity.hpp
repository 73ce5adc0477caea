#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace topoeval {

enum class Phase { foreground, background };

/// A: all-neighbor (8/26) foreground with direct (4/6) background.
/// D: direct foreground with all-neighbor background.
enum class Connectivity { A, D };

enum class Adjacency { direct, all };

using Offset = std::array<int, 3>;  // {dz, dr, dc}

[[nodiscard]] std::string_view to_string(Connectivity c) noexcept;
[[nodiscard]] std::string_view to_string(Phase p) noexcept;
/// Accepts "A"/"D" (case-insensitive); throws std::invalid_argument otherwise.
[[nodiscard]] Connectivity parse_connectivity(std::string_view text);
[[nodiscard]] Connectivity opposite(Connectivity c) noexcept;

/// Neighbor offsets for one adjacency in `ndim` dimensions
/// (2*ndim for direct, 3^ndim - 1 for all). 2D offsets have dz = 0.
[[nodiscard]] std::vector<Offset> neighbor_offsets(Adjacency adj, std::size_t ndim);

/// Foreground/background adjacency policy. The two phases always use
/// opposite adjacencies.
class ConnectivityPair {
 public:
  constexpr explicit ConnectivityPair(Connectivity setting = Connectivity::A) noexcept
      : setting_(setting) {}

  [[nodiscard]] constexpr Connectivity setting() const noexcept { return setting_; }

  [[nodiscard]] constexpr Adjacency adjacency(Phase p) const noexcept {
    const bool fg_all = setting_ == Connectivity::A;
    return (p == Phase::foreground) == fg_all ? Adjacency::all : Adjacency::direct;
  }

  [[nodiscard]] std::vector<Offset> fg_neighbors(std::size_t ndim) const {
    return neighbor_offsets(adjacency(Phase::foreground), ndim);
  }
  [[nodiscard]] std::vector<Offset> bg_neighbors(std::size_t ndim) const {
    return neighbor_offsets(adjacency(Phase::background), ndim);
  }

  /// Neighbor counts as "fg/bg", e.g. "8/4" or "6/26".
  [[nodiscard]] std::string describe(std::size_t ndim) const;

  friend constexpr bool operator==(ConnectivityPair, ConnectivityPair) = default;

 private:
  Connectivity setting_;
};

}  // namespace topoeval
