#include "topoeval/topology.hpp"

#include <stdexcept>
#include <string>

#include "topoeval/labeling.hpp"

namespace topoeval {

std::string_view to_string(Construction c) noexcept { return c == Construction::V ? "V" : "T"; }

namespace {

// Both constructions are enumerated on a doubled lattice where an odd
// coordinate means the cell spans an interval along that axis. A cell's
// dimension is its number of odd coordinates.
//
// V: lattice extent 2n-1 per axis; even x is pixel x/2, odd x spans pixels
//    (x-1)/2 and (x+1)/2. The cell exists iff all spanned pixels are FG.
// T: lattice extent 2n+1 per axis; odd x is pixel (x-1)/2, even x is the
//    grid line between pixels x/2-1 and x/2. The cell exists iff any
//    adjacent pixel is FG.
struct AxisRange {
  std::size_t lo, hi;  // inclusive pixel range
};

AxisRange v_range(std::size_t x) { return x % 2 ? AxisRange{(x - 1) / 2, (x + 1) / 2} : AxisRange{x / 2, x / 2}; }

AxisRange t_range(std::size_t x, std::size_t n) {
  if (x % 2) return {(x - 1) / 2, (x - 1) / 2};
  const std::size_t hi = x / 2 < n ? x / 2 : n - 1;
  const std::size_t lo = x == 0 ? 0 : x / 2 - 1;
  return {lo, hi};
}

}  // namespace

CellCensus cell_census(const BinaryMask& mask, Construction construction) {
  const auto& dims = mask.dims();
  const bool is3d = dims.size() == 3;
  const std::size_t ns = is3d ? dims[0] : 1;
  const std::size_t nr = dims[dims.size() - 2];
  const std::size_t nc = dims.back();
  const bool v = construction == Construction::V;

  auto lattice = [v](std::size_t n) { return v ? 2 * n - 1 : 2 * n + 1; };
  auto range = [v](std::size_t x, std::size_t n) { return v ? v_range(x) : t_range(x, n); };

  CellCensus census;
  const std::size_t lz = is3d ? lattice(ns) : 1;
  const std::size_t lr = lattice(nr);
  const std::size_t lc = lattice(nc);
  for (std::size_t z = 0; z < lz; ++z) {
    const AxisRange rz = is3d ? range(z, ns) : AxisRange{0, 0};
    const std::size_t oz = is3d ? z % 2 : 0;
    for (std::size_t r = 0; r < lr; ++r) {
      const AxisRange rr = range(r, nr);
      for (std::size_t c = 0; c < lc; ++c) {
        const AxisRange rc = range(c, nc);
        bool any = false;
        bool all = true;
        for (std::size_t pz = rz.lo; pz <= rz.hi; ++pz) {
          for (std::size_t pr = rr.lo; pr <= rr.hi; ++pr) {
            for (std::size_t pc = rc.lo; pc <= rc.hi; ++pc) {
              const bool fg = mask[(pz * nr + pr) * nc + pc];
              any = any || fg;
              all = all && fg;
            }
          }
        }
        if (v ? all : any) ++census.cells[oz + r % 2 + c % 2];
      }
    }
  }
  return census;
}

std::int64_t euler_characteristic(const BinaryMask& mask, Construction construction) {
  return cell_census(mask, construction).euler();
}

std::size_t bounded_background_components(const BinaryMask& mask, ConnectivityPair conn) {
  const BinaryMask padded = pad_with_background(mask, 1);
  const PhaseLabeling bg =
      label_phase(padded, Phase::background, conn.adjacency(Phase::background));
  std::size_t bounded = 0;
  for (bool border : bg.touches_border) bounded += border ? 0 : 1;
  return bounded;
}

TopologySummary betti_numbers(const BinaryMask& mask, ConnectivityPair conn) {
  TopologySummary out;
  out.connectivity = conn;
  out.construction = construction_for(conn.setting());
  out.euler = euler_characteristic(mask, out.construction);

  const std::size_t b0 =
      label_phase(mask, Phase::foreground, conn.adjacency(Phase::foreground)).sizes.size();
  const std::size_t bounded = bounded_background_components(mask, conn);

  if (mask.ndim() == 2) {
    out.betti = {b0, bounded};
    return out;
  }
  const std::int64_t b1 =
      static_cast<std::int64_t>(b0) + static_cast<std::int64_t>(bounded) - out.euler;
  if (b1 < 0) throw std::logic_error("negative beta_1 from Euler identity");
  out.betti = {b0, static_cast<std::size_t>(b1), bounded};
  return out;
}

std::size_t betti_number_error(const BinaryMask& pred, const BinaryMask& gt,
                               ConnectivityPair conn, std::size_t dim) {
  require_same_dims(pred, gt);
  if (dim >= pred.ndim()) {
    throw std::invalid_argument("Betti dimension " + std::to_string(dim) + " out of range for " +
                                std::to_string(pred.ndim()) + "D masks");
  }
  const std::size_t a = betti_numbers(pred, conn).betti[dim];
  const std::size_t b = betti_numbers(gt, conn).betti[dim];
  return a > b ? a - b : b - a;
}

}  // namespace topoeval
