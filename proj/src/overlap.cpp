#include "topoeval/overlap.hpp"

#include <array>
#include <stdexcept>
#include <vector>

#include "topoeval/error.hpp"
#include "topoeval/labeling.hpp"

namespace topoeval {

double dice(const BinaryMask& pred, const BinaryMask& gt) {
  require_same_dims(pred, gt);
  std::size_t p = 0, g = 0, both = 0;
  const auto dp = pred.data();
  const auto dg = gt.data();
  for (std::size_t i = 0; i < dp.size(); ++i) {
    p += dp[i];
    g += dg[i];
    both += dp[i] & dg[i];
  }
  if (p + g == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(p + g);
}

namespace {

// Neighbors P2..P9, clockwise from north.
constexpr std::array<std::array<int, 2>, 8> kRing{{
    {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}}};

bool deletable(const BinaryMask& m, std::size_t r, std::size_t c, int step) {
  const auto rows = static_cast<std::ptrdiff_t>(m.dims()[0]);
  const auto cols = static_cast<std::ptrdiff_t>(m.dims()[1]);
  std::array<int, 8> p{};
  for (std::size_t k = 0; k < 8; ++k) {
    const auto rr = static_cast<std::ptrdiff_t>(r) + kRing[k][0];
    const auto cc = static_cast<std::ptrdiff_t>(c) + kRing[k][1];
    p[k] = rr >= 0 && cc >= 0 && rr < rows && cc < cols &&
           m.at(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
  }
  int black = 0, transitions = 0;
  for (std::size_t k = 0; k < 8; ++k) {
    black += p[k];
    transitions += p[k] == 0 && p[(k + 1) % 8] == 1;
  }
  if (black < 2 || black > 6 || transitions != 1) return false;
  const int n = p[0], e = p[2], s = p[4], w = p[6];
  if (step == 0) return n * e * s == 0 && e * s * w == 0;
  return n * e * w == 0 && n * s * w == 0;
}

}  // namespace

Skeleton skeletonize_2d(const BinaryMask& mask) {
  if (mask.ndim() != 2) throw std::invalid_argument("skeletonize_2d requires a 2D mask");
  BinaryMask m = mask;
  const std::size_t rows = m.dims()[0];
  const std::size_t cols = m.dims()[1];
  std::vector<std::size_t> candidates;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int step = 0; step < 2; ++step) {
      candidates.clear();
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          if (m.at(r, c) && deletable(m, r, c, step)) candidates.push_back(r * cols + c);
        }
      }
      if (candidates.empty()) continue;

      const PhaseLabeling comps = label_phase(m, Phase::foreground, Adjacency::all);
      std::vector<std::size_t> doomed(comps.sizes.size(), 0);
      for (std::size_t i : candidates) ++doomed[comps.labels[i]];
      for (std::size_t i : candidates) {
        const std::uint32_t id = comps.labels[i];
        if (doomed[id] == comps.sizes[id]) {
          doomed[id] = 0;  // keep this one: first candidate in raster order
          continue;
        }
        m.set(i, false);
        changed = true;
      }
    }
  }
  return Skeleton{std::move(m)};
}

double cldice(const BinaryMask& pred, const BinaryMask& gt) {
  require_same_dims(pred, gt);
  const Skeleton sp = skeletonize_2d(pred);
  const Skeleton sg = skeletonize_2d(gt);
  const std::size_t np = sp.mask.count_foreground();
  const std::size_t ng = sg.mask.count_foreground();
  if (np == 0 || ng == 0) throw UndefinedMetric("clDice undefined for an empty skeleton");

  const double precision =
      static_cast<double>(mask_intersection(sp.mask, gt).count_foreground()) / static_cast<double>(np);
  const double sensitivity =
      static_cast<double>(mask_intersection(sg.mask, pred).count_foreground()) / static_cast<double>(ng);
  if (precision + sensitivity == 0.0) return 0.0;
  return 2.0 * precision * sensitivity / (precision + sensitivity);
}

}  // namespace topoeval
