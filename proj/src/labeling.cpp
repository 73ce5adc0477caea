#include "topoeval/labeling.hpp"

#include <stdexcept>

namespace topoeval {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller index stays root, so every root is the raster-first pixel of its set.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

 private:
  std::vector<std::uint32_t> parent_;
};

struct Grid {
  std::size_t slices, rows, cols;

  explicit Grid(const std::vector<std::size_t>& dims)
      : slices(dims.size() == 3 ? dims[0] : 1),
        rows(dims[dims.size() - 2]),
        cols(dims.back()) {}

  [[nodiscard]] bool on_border(std::size_t z, std::size_t r, std::size_t c, bool is3d) const {
    return r == 0 || c == 0 || r + 1 == rows || c + 1 == cols ||
           (is3d && (z == 0 || z + 1 == slices));
  }
};

// Offsets that point to pixels already visited in a raster scan.
std::vector<Offset> backward(const std::vector<Offset>& offsets) {
  std::vector<Offset> out;
  for (const auto& o : offsets) {
    if (o[0] < 0 || (o[0] == 0 && (o[1] < 0 || (o[1] == 0 && o[2] < 0)))) out.push_back(o);
  }
  return out;
}

void check_offsets(const std::vector<Offset>& offsets, std::size_t ndim) {
  for (const auto& o : offsets) {
    if (ndim == 2 && o[0] != 0) {
      throw std::logic_error("3D neighbor offset used on a 2D mask");
    }
  }
}

// Unites every pixel with its already-visited neighbors of the same phase.
// `offsets_for(phase)` selects the adjacency; a phase with no offsets is skipped.
template <typename OffsetsFor, typename Include>
UnionFind scan(const BinaryMask& mask, OffsetsFor offsets_for, Include include) {
  const Grid g(mask.dims());
  const std::vector<Offset>& fg = offsets_for(true);
  const std::vector<Offset>& bg = offsets_for(false);
  UnionFind uf(mask.size());
  std::size_t flat = 0;
  for (std::size_t z = 0; z < g.slices; ++z) {
    for (std::size_t r = 0; r < g.rows; ++r) {
      for (std::size_t c = 0; c < g.cols; ++c, ++flat) {
        const bool value = mask[flat];
        if (!include(value)) continue;
        for (const auto& o : value ? fg : bg) {
          const auto nz = static_cast<std::ptrdiff_t>(z) + o[0];
          const auto nr = static_cast<std::ptrdiff_t>(r) + o[1];
          const auto nc = static_cast<std::ptrdiff_t>(c) + o[2];
          if (nz < 0 || nr < 0 || nc < 0 || nr >= static_cast<std::ptrdiff_t>(g.rows) ||
              nc >= static_cast<std::ptrdiff_t>(g.cols)) {
            continue;
          }
          const auto n = static_cast<std::size_t>((nz * static_cast<std::ptrdiff_t>(g.rows) + nr) *
                                                      static_cast<std::ptrdiff_t>(g.cols) +
                                                  nc);
          if (mask[n] == value) uf.unite(static_cast<std::uint32_t>(flat), static_cast<std::uint32_t>(n));
        }
      }
    }
  }
  return uf;
}

}  // namespace

ComponentLabeling label_components(const BinaryMask& mask, ConnectivityPair conn) {
  const std::size_t nd = mask.ndim();
  const auto fg = backward(conn.fg_neighbors(nd));
  const auto bg = backward(conn.bg_neighbors(nd));
  check_offsets(fg, nd);
  check_offsets(bg, nd);
  if (mask.size() >= kUnlabeled) throw std::length_error("mask too large to label");

  UnionFind uf = scan(
      mask, [&](bool is_fg) -> const std::vector<Offset>& { return is_fg ? fg : bg; },
      [](bool) { return true; });

  ComponentLabeling out;
  out.dims = mask.dims();
  out.connectivity = conn;
  out.labels.assign(mask.size(), kUnlabeled);

  const Grid g(mask.dims());
  const bool is3d = nd == 3;
  std::size_t flat = 0;
  for (std::size_t z = 0; z < g.slices; ++z) {
    for (std::size_t r = 0; r < g.rows; ++r) {
      for (std::size_t c = 0; c < g.cols; ++c, ++flat) {
        const std::uint32_t root = uf.find(static_cast<std::uint32_t>(flat));
        std::uint32_t id = out.labels[root];
        if (id == kUnlabeled) {
          // root <= flat, and root is visited first, so this is its first pixel.
          id = static_cast<std::uint32_t>(out.components.size());
          out.components.push_back(
              {id, mask[flat] ? Phase::foreground : Phase::background, 0, false});
          out.labels[root] = id;
        }
        out.labels[flat] = id;
        auto& comp = out.components[id];
        ++comp.size;
        if (!comp.touches_border && g.on_border(z, r, c, is3d)) comp.touches_border = true;
      }
    }
  }
  return out;
}

PhaseLabeling label_phase(const BinaryMask& mask, Phase phase, Adjacency adjacency) {
  const std::size_t nd = mask.ndim();
  const auto offsets = backward(neighbor_offsets(adjacency, nd));
  const std::vector<Offset> none;
  const bool want_fg = phase == Phase::foreground;
  if (mask.size() >= kUnlabeled) throw std::length_error("mask too large to label");

  UnionFind uf = scan(
      mask,
      [&](bool is_fg) -> const std::vector<Offset>& { return is_fg == want_fg ? offsets : none; },
      [&](bool is_fg) { return is_fg == want_fg; });

  PhaseLabeling out;
  out.labels.assign(mask.size(), kUnlabeled);
  const Grid g(mask.dims());
  const bool is3d = nd == 3;
  std::size_t flat = 0;
  for (std::size_t z = 0; z < g.slices; ++z) {
    for (std::size_t r = 0; r < g.rows; ++r) {
      for (std::size_t c = 0; c < g.cols; ++c, ++flat) {
        if (mask[flat] != want_fg) continue;
        const std::uint32_t root = uf.find(static_cast<std::uint32_t>(flat));
        std::uint32_t id = out.labels[root];
        if (id == kUnlabeled) {
          id = static_cast<std::uint32_t>(out.sizes.size());
          out.sizes.push_back(0);
          out.touches_border.push_back(false);
          out.labels[root] = id;
        }
        out.labels[flat] = id;
        ++out.sizes[id];
        if (g.on_border(z, r, c, is3d)) out.touches_border[id] = true;
      }
    }
  }
  return out;
}

std::size_t count_components(const ComponentLabeling& labeling, Phase phase) {
  std::size_t n = 0;
  for (const auto& c : labeling.components) n += c.phase == phase ? 1 : 0;
  return n;
}

}  // namespace topoeval
