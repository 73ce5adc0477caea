#include "topoeval/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

#include "topoeval/labeling.hpp"

namespace topoeval {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

MatchingResult finish(std::size_t dim, std::size_t betti_pred, std::size_t betti_gt,
                      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  MatchingResult out;
  out.dim = dim;
  out.betti_pred = betti_pred;
  out.betti_gt = betti_gt;
  out.unmatched_pred = betti_pred - pairs.size();
  out.unmatched_gt = betti_gt - pairs.size();
  out.bm_error = out.unmatched_pred + out.unmatched_gt;
  out.matched_pairs = std::move(pairs);
  return out;
}

// Bounded background components of the padded mask, renumbered 0.. in
// raster order; unbounded pixels and foreground map to kUnlabeled.
struct Holes {
  std::vector<std::uint32_t> id;  // per padded pixel
  std::size_t count = 0;
};

Holes label_holes(const BinaryMask& padded, Adjacency bg_adjacency) {
  PhaseLabeling bg = label_phase(padded, Phase::background, bg_adjacency);
  std::vector<std::uint32_t> remap(bg.sizes.size(), kUnlabeled);
  Holes out;
  for (std::size_t i = 0; i < remap.size(); ++i) {
    if (!bg.touches_border[i]) remap[i] = static_cast<std::uint32_t>(out.count++);
  }
  for (auto& l : bg.labels) {
    if (l != kUnlabeled) l = remap[l];
  }
  out.id = std::move(bg.labels);
  return out;
}

MatchingResult match_holes(const BinaryMask& pred, const BinaryMask& gt, ConnectivityPair conn,
                           std::size_t dim) {
  require_same_dims(pred, gt);
  const BinaryMask pp = pad_with_background(pred, 1);
  const BinaryMask pg = pad_with_background(gt, 1);
  const Adjacency bg_adj = conn.adjacency(Phase::background);
  const Holes hp = label_holes(pp, bg_adj);
  const Holes hg = label_holes(pg, bg_adj);
  const Holes hu = label_holes(mask_union(pp, pg), bg_adj);

  // Each mediating component sits in exactly one background component of
  // either mask; one representative pixel identifies both.
  std::vector<bool> seen(hu.count, false);
  std::vector<std::vector<std::size_t>> adjacency(hp.count);
  for (std::size_t i = 0; i < hu.id.size(); ++i) {
    const std::uint32_t m = hu.id[i];
    if (m == kUnlabeled || seen[m]) continue;
    seen[m] = true;
    if (hp.id[i] != kUnlabeled && hg.id[i] != kUnlabeled) {
      adjacency[hp.id[i]].push_back(hg.id[i]);
    }
  }
  for (auto& adj : adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  const auto match = maximum_bipartite_matching(adjacency, hg.count);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t l = 0; l < match.size(); ++l) {
    if (match[l] >= 0) {
      pairs.emplace_back(static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(match[l]));
    }
  }
  return finish(dim, hp.count, hg.count, std::move(pairs));
}

}  // namespace

MatchingResult match_dim0(const BinaryMask& pred, const BinaryMask& gt, ConnectivityPair conn) {
  require_same_dims(pred, gt);
  const Adjacency fg_adj = conn.adjacency(Phase::foreground);
  const PhaseLabeling lp = label_phase(pred, Phase::foreground, fg_adj);
  const PhaseLabeling lg = label_phase(gt, Phase::foreground, fg_adj);
  const PhaseLabeling lu = label_phase(mask_union(pred, gt), Phase::foreground, fg_adj);

  const std::size_t nu = lu.sizes.size();
  std::vector<std::uint32_t> low_pred(nu, kUnlabeled);
  std::vector<std::uint32_t> low_gt(nu, kUnlabeled);
  for (std::size_t i = 0; i < lu.labels.size(); ++i) {
    const std::uint32_t u = lu.labels[i];
    if (u == kUnlabeled) continue;
    if (lp.labels[i] != kUnlabeled) low_pred[u] = std::min(low_pred[u], lp.labels[i]);
    if (lg.labels[i] != kUnlabeled) low_gt[u] = std::min(low_gt[u], lg.labels[i]);
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t u = 0; u < nu; ++u) {
    if (low_pred[u] != kUnlabeled && low_gt[u] != kUnlabeled) {
      pairs.emplace_back(low_pred[u], low_gt[u]);
    }
  }
  return finish(0, lp.sizes.size(), lg.sizes.size(), std::move(pairs));
}

MatchingResult match_dim1_2d(const BinaryMask& pred, const BinaryMask& gt, ConnectivityPair conn) {
  if (pred.ndim() != 2 || gt.ndim() != 2) {
    throw std::invalid_argument("dimension-1 Betti matching requires 2D masks");
  }
  return match_holes(pred, gt, conn, 1);
}

MatchingResult match_dim2_3d(const BinaryMask& pred, const BinaryMask& gt, ConnectivityPair conn) {
  if (pred.ndim() != 3 || gt.ndim() != 3) {
    throw std::invalid_argument("dimension-2 Betti matching requires 3D masks");
  }
  return match_holes(pred, gt, conn, 2);
}

MatchingResult betti_matching(const BinaryMask& pred, const BinaryMask& gt, ConnectivityPair conn,
                              std::size_t dim) {
  if (dim == 0) return match_dim0(pred, gt, conn);
  if (dim == 1 && pred.ndim() == 2) return match_dim1_2d(pred, gt, conn);
  if (dim == 2 && pred.ndim() == 3) return match_dim2_3d(pred, gt, conn);
  throw std::invalid_argument("Betti matching in dimension " + std::to_string(dim) +
                              " is not supported for " + std::to_string(pred.ndim()) + "D masks");
}

std::vector<std::ptrdiff_t> maximum_bipartite_matching(
    const std::vector<std::vector<std::size_t>>& adjacency, std::size_t right_count) {
  const std::size_t nl = adjacency.size();
  std::vector<std::ptrdiff_t> match_l(nl, -1);
  std::vector<std::ptrdiff_t> match_r(right_count, -1);
  std::vector<std::size_t> layer(nl);

  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool reachable_free = false;
    for (std::size_t l = 0; l < nl; ++l) {
      if (match_l[l] < 0) {
        layer[l] = 0;
        q.push(l);
      } else {
        layer[l] = kInf;
      }
    }
    while (!q.empty()) {
      const std::size_t l = q.front();
      q.pop();
      for (std::size_t r : adjacency[l]) {
        const std::ptrdiff_t next = match_r[r];
        if (next < 0) {
          reachable_free = true;
        } else if (layer[static_cast<std::size_t>(next)] == kInf) {
          layer[static_cast<std::size_t>(next)] = layer[l] + 1;
          q.push(static_cast<std::size_t>(next));
        }
      }
    }
    return reachable_free;
  };

  // Iterative DFS along the BFS layering.
  auto augment = [&](std::size_t root) {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [l, edge] = stack.back();
      if (edge == adjacency[l].size()) {
        layer[l] = kInf;
        stack.pop_back();
        continue;
      }
      const std::size_t r = adjacency[l][edge++];
      const std::ptrdiff_t next = match_r[r];
      if (next < 0) {
        // Flip the path recorded on the stack.
        std::size_t right = r;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
          const std::size_t left = it->first;
          const std::ptrdiff_t prev = match_l[left];
          match_l[left] = static_cast<std::ptrdiff_t>(right);
          match_r[right] = static_cast<std::ptrdiff_t>(left);
          if (prev < 0) break;
          right = static_cast<std::size_t>(prev);
        }
        return true;
      }
      const auto n = static_cast<std::size_t>(next);
      if (layer[n] == layer[l] + 1) stack.emplace_back(n, 0);
    }
    return false;
  };

  while (bfs()) {
    for (std::size_t l = 0; l < nl; ++l) {
      if (match_l[l] < 0) augment(l);
    }
  }
  return match_l;
}

}  // namespace topoeval
