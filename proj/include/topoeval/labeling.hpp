#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "topoeval/connectivity.hpp"
#include "topoeval/mask.hpp"

namespace topoeval {

struct Component {
  std::uint32_t id = 0;
  Phase phase = Phase::foreground;
  std::size_t size = 0;
  bool touches_border = false;
};

/// Full partition of a mask into foreground and background components.
/// Ids are contiguous from 0 and assigned in order of each component's
/// first pixel in raster order.
struct ComponentLabeling {
  std::vector<std::size_t> dims;
  std::vector<std::uint32_t> labels;
  std::vector<Component> components;
  ConnectivityPair connectivity;

  [[nodiscard]] Phase phase_at(std::size_t flat) const { return components[labels[flat]].phase; }
};

/// Two-pass union-find labeling of both phases, each under its own
/// adjacency from `conn`.
[[nodiscard]] ComponentLabeling label_components(const BinaryMask& mask, ConnectivityPair conn);

inline constexpr std::uint32_t kUnlabeled = UINT32_MAX;

struct PhaseLabeling {
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> sizes;
  std::vector<bool> touches_border;
};
/// Labels only the pixels of one phase; other pixels get `kUnlabeled`.
/// Components are numbered from 0 in raster first-visit order.
[[nodiscard]] PhaseLabeling label_phase(const BinaryMask& mask, Phase phase, Adjacency adjacency);

[[nodiscard]] std::size_t count_components(const ComponentLabeling& labeling, Phase phase);

}  // namespace topoeval
