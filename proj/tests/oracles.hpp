#pragma once

// Slow, independent reference implementations used only by tests. None of
// these call into the library beyond reading BinaryMask contents.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "topoeval/mask.hpp"

namespace oracle {

using topoeval::BinaryMask;

// Uniform 3D view of a 2D or 3D mask (2D masks get nz = 1).
struct Grid {
  int nz = 1, nr = 0, nc = 0;
  bool is3d = false;
  std::vector<std::uint8_t> v;

  explicit Grid(const BinaryMask& m) {
    const auto& d = m.dims();
    is3d = d.size() == 3;
    nz = is3d ? static_cast<int>(d[0]) : 1;
    nr = static_cast<int>(d[d.size() - 2]);
    nc = static_cast<int>(d[d.size() - 1]);
    v.assign(m.data().begin(), m.data().end());
  }
  Grid(int z, int r, int c, bool three) : nz(z), nr(r), nc(c), is3d(three), v(std::size_t(z) * r * c, 0) {}

  bool inside(int z, int r, int c) const { return z >= 0 && z < nz && r >= 0 && r < nr && c >= 0 && c < nc; }
  int at(int z, int r, int c) const { return v[(std::size_t(z) * nr + r) * nc + c]; }
  std::size_t flat(int z, int r, int c) const { return (std::size_t(z) * nr + r) * nc + c; }
  std::size_t size() const { return v.size(); }
};

inline bool neighbors(int dz, int dr, int dc, bool all) {
  const int a = std::abs(dz), b = std::abs(dr), c = std::abs(dc);
  if (a + b + c == 0) return false;
  return all ? std::max({a, b, c}) <= 1 : a + b + c == 1;
}

// Recursive flood fill over pixels whose value equals `phase`.
inline void flood(const Grid& g, std::vector<int>& label, int z, int r, int c, int id, int phase, bool all) {
  label[g.flat(z, r, c)] = id;
  for (int dz = -1; dz <= 1; ++dz) {
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (!g.is3d && dz != 0) continue;
        if (!neighbors(dz, dr, dc, all)) continue;
        const int z2 = z + dz, r2 = r + dr, c2 = c + dc;
        if (!g.inside(z2, r2, c2)) continue;
        if (g.at(z2, r2, c2) != phase || label[g.flat(z2, r2, c2)] != -1) continue;
        flood(g, label, z2, r2, c2, id, phase, all);
      }
    }
  }
}

struct Labels {
  std::vector<int> label;           // -1 where not labeled
  std::vector<std::size_t> size;
  std::vector<int> phase;           // 1 = FG, 0 = BG
  std::vector<bool> border;
  int count = 0;
};

// Labels pixels of the phases in `phases` (bit 1 = FG, bit 0 = BG), ids in
// raster order of first pixel. fg_all selects all-adjacency for FG; BG
// always uses the opposite adjacency.
inline Labels flood_label(const Grid& g, bool fg_all, int phases = 3) {
  Labels L;
  L.label.assign(g.size(), -1);
  for (int z = 0; z < g.nz; ++z) {
    for (int r = 0; r < g.nr; ++r) {
      for (int c = 0; c < g.nc; ++c) {
        const int ph = g.at(z, r, c);
        if (!(phases & (ph ? 2 : 1))) continue;
        if (L.label[g.flat(z, r, c)] != -1) continue;
        const bool all = ph ? fg_all : !fg_all;
        flood(g, L.label, z, r, c, L.count, ph, all);
        L.phase.push_back(ph);
        ++L.count;
      }
    }
  }
  L.size.assign(L.count, 0);
  L.border.assign(L.count, false);
  for (int z = 0; z < g.nz; ++z) {
    for (int r = 0; r < g.nr; ++r) {
      for (int c = 0; c < g.nc; ++c) {
        const int id = L.label[g.flat(z, r, c)];
        if (id < 0) continue;
        ++L.size[id];
        const bool edge = r == 0 || c == 0 || r == g.nr - 1 || c == g.nc - 1 ||
                          (g.is3d && (z == 0 || z == g.nz - 1));
        if (edge) L.border[id] = true;
      }
    }
  }
  return L;
}

inline Labels flood_label(const BinaryMask& m, bool fg_all, int phases = 3) {
  return flood_label(Grid(m), fg_all, phases);
}

inline int fg_count(const BinaryMask& m, bool fg_all) { return flood_label(m, fg_all, 2).count; }

inline Grid padded(const Grid& g) {
  Grid p(g.is3d ? g.nz + 2 : 1, g.nr + 2, g.nc + 2, g.is3d);
  const int oz = g.is3d ? 1 : 0;
  for (int z = 0; z < g.nz; ++z)
    for (int r = 0; r < g.nr; ++r)
      for (int c = 0; c < g.nc; ++c) p.v[p.flat(z + oz, r + 1, c + 1)] = g.v[g.flat(z, r, c)];
  return p;
}

// Bounded background components ("holes" in 2D, cavities in 3D). Returns
// a per-pixel hole id in the original grid (-1 elsewhere) and the count.
inline std::pair<std::vector<int>, int> holes(const Grid& g, bool fg_all) {
  const Grid p = padded(g);
  Labels L = flood_label(p, fg_all, 1);
  std::vector<int> remap(L.count, -1);
  int n = 0;
  for (int id = 0; id < L.count; ++id) {
    if (!L.border[id]) remap[id] = n++;
  }
  std::vector<int> out(g.size(), -1);
  const int oz = g.is3d ? 1 : 0;
  for (int z = 0; z < g.nz; ++z)
    for (int r = 0; r < g.nr; ++r)
      for (int c = 0; c < g.nc; ++c) {
        const int id = L.label[p.flat(z + oz, r + 1, c + 1)];
        if (id >= 0) out[g.flat(z, r, c)] = remap[id];
      }
  return {out, n};
}

// ---------------------------------------------------------------------------
// Cubical complex by explicit cell enumeration and Z/2 boundary ranks.

using Cell = std::array<int, 3>;  // doubled coordinates (z, r, c); z = 0 in 2D

inline int cell_dim(const Cell& x, bool is3d) {
  return (is3d ? (x[0] & 1) : 0) + (x[1] & 1) + (x[2] & 1);
}

// T: closure of the closed unit cubes of all FG pixels.
inline std::set<Cell> complex_T(const Grid& g) {
  std::set<Cell> cells;
  for (int z = 0; z < g.nz; ++z)
    for (int r = 0; r < g.nr; ++r)
      for (int c = 0; c < g.nc; ++c) {
        if (!g.at(z, r, c)) continue;
        for (int ez = (g.is3d ? -1 : 0); ez <= (g.is3d ? 1 : 0); ++ez)
          for (int er = -1; er <= 1; ++er)
            for (int ec = -1; ec <= 1; ++ec) {
              cells.insert({g.is3d ? 2 * z + 1 + ez : 0, 2 * r + 1 + er, 2 * c + 1 + ec});
            }
      }
  return cells;
}

// V: pixels are vertices; a cube spanned by lattice neighbors exists when
// all of its vertex pixels are FG.
inline std::set<Cell> complex_V(const Grid& g) {
  std::set<Cell> cells;
  const int zmax = g.is3d ? 2 * g.nz - 2 : 0;
  for (int x = 0; x <= zmax; ++x)
    for (int y = 0; y <= 2 * g.nr - 2; ++y)
      for (int w = 0; w <= 2 * g.nc - 2; ++w) {
        bool ok = true;
        for (int a = x / 2; a <= (x + 1) / 2 && ok; ++a)
          for (int b = y / 2; b <= (y + 1) / 2 && ok; ++b)
            for (int c = w / 2; c <= (w + 1) / 2 && ok; ++c) ok = g.at(a, b, c) != 0;
        if (ok) cells.insert({x, y, w});
      }
  return cells;
}

inline std::vector<Cell> faces(const Cell& x, bool is3d) {
  std::vector<Cell> out;
  for (int axis = is3d ? 0 : 1; axis < 3; ++axis) {
    if (!(x[axis] & 1)) continue;
    for (int s : {-1, 1}) {
      Cell f = x;
      f[axis] += s;
      out.push_back(f);
    }
  }
  return out;
}

// Rank over GF(2) of a 0/1 matrix given as rows of column indices.
inline std::size_t gf2_rank(const std::vector<std::vector<std::size_t>>& rows, std::size_t ncols) {
  const std::size_t words = (ncols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> m;
  for (const auto& r : rows) {
    std::vector<std::uint64_t> bits(words, 0);
    for (std::size_t c : r) bits[c / 64] ^= std::uint64_t{1} << (c % 64);
    m.push_back(std::move(bits));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && !((m[pivot][col / 64] >> (col % 64)) & 1)) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != rank && ((m[i][col / 64] >> (col % 64)) & 1)) {
        for (std::size_t w = 0; w < words; ++w) m[i][w] ^= m[rank][w];
      }
    }
    ++rank;
  }
  return rank;
}

struct Homology {
  std::array<long, 4> cells{};
  std::array<long, 4> betti{};
  long euler() const { return cells[0] - cells[1] + cells[2] - cells[3]; }
};

inline Homology homology(const std::set<Cell>& complex, bool is3d) {
  Homology h;
  std::array<std::map<Cell, std::size_t>, 4> index;
  for (const auto& x : complex) {
    const int d = cell_dim(x, is3d);
    index[d].emplace(x, index[d].size());
  }
  std::array<std::size_t, 5> rank{};  // rank of boundary map from dim k to k-1
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::vector<std::size_t>> rows;
    for (const auto& [x, i] : index[k]) {
      std::vector<std::size_t> r;
      for (const auto& f : faces(x, is3d)) r.push_back(index[k - 1].at(f));
      rows.push_back(r);
    }
    rank[k] = gf2_rank(rows, index[k - 1].size());
  }
  for (int k = 0; k < 4; ++k) {
    h.cells[k] = static_cast<long>(index[k].size());
    h.betti[k] = h.cells[k] - static_cast<long>(rank[k]) - static_cast<long>(rank[k + 1]);
  }
  return h;
}

// fg_all = true pairs with the T complex, false with V.
inline Homology homology_of(const BinaryMask& m, bool fg_all) {
  const Grid g(m);
  return homology(fg_all ? complex_T(g) : complex_V(g), g.is3d);
}

// ---------------------------------------------------------------------------
// Matching oracles.

// Union components meeting both pred and gt, by direct enumeration.
inline int dim0_matched(const BinaryMask& pred, const BinaryMask& gt, bool fg_all) {
  const Grid p(pred), q(gt);
  Grid u = p;
  for (std::size_t i = 0; i < u.size(); ++i) u.v[i] = p.v[i] | q.v[i];
  const Labels L = flood_label(u, fg_all, 2);
  std::vector<bool> meets_p(L.count, false), meets_g(L.count, false);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (p.v[i]) meets_p[L.label[i]] = true;
    if (q.v[i]) meets_g[L.label[i]] = true;
  }
  int matched = 0;
  for (int id = 0; id < L.count; ++id) matched += meets_p[id] && meets_g[id];
  return matched;
}

// Kuhn's augmenting-path matching.
inline int kuhn(const std::vector<std::vector<int>>& adj, int right) {
  std::vector<int> match_r(right, -1);
  int result = 0;
  for (int l = 0; l < static_cast<int>(adj.size()); ++l) {
    std::vector<bool> seen(right, false);
    std::function<bool(int)> augment = [&](int v) {
      for (int w : adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        if (match_r[w] < 0 || augment(match_r[w])) {
          match_r[w] = v;
          return true;
        }
      }
      return false;
    };
    if (augment(l)) ++result;
  }
  return result;
}

struct HoleMatch {
  int pred_holes = 0, gt_holes = 0, matched = 0;
  int bm_error() const { return pred_holes + gt_holes - 2 * matched; }
};

// Top-dimensional holes (2D: dim 1, 3D: dim 2) matched through holes of
// the union.
inline HoleMatch hole_matching(const BinaryMask& pred, const BinaryMask& gt, bool fg_all) {
  const Grid p(pred), q(gt);
  Grid u = p;
  for (std::size_t i = 0; i < u.size(); ++i) u.v[i] = p.v[i] | q.v[i];
  const auto [hp, np] = holes(p, fg_all);
  const auto [hq, nq] = holes(q, fg_all);
  const auto [hu, nu] = holes(u, fg_all);
  std::set<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (hu[i] >= 0) edges.insert({hp[i], hq[i]});
  }
  std::vector<std::vector<int>> adj(np);
  for (const auto& [a, b] : edges) {
    if (a >= 0 && b >= 0) adj[a].push_back(b);
  }
  return {np, nq, kuhn(adj, nq)};
}

// ---------------------------------------------------------------------------
// Partition metrics straight from the definitions.

inline double entropy_voi(const std::vector<int>& x, const std::vector<int>& y) {
  const double n = static_cast<double>(x.size());
  std::map<int, double> px, py;
  std::map<std::pair<int, int>, double> pxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    px[x[i]] += 1;
    py[y[i]] += 1;
    pxy[{x[i], y[i]}] += 1;
  }
  double hx_given_y = 0, hy_given_x = 0;
  for (const auto& [k, c] : pxy) {
    const double p = c / n;
    hx_given_y -= p * std::log(c / py[k.second]);
    hy_given_x -= p * std::log(c / px[k.first]);
  }
  return hx_given_y + hy_given_x;
}

// RI by enumerating all pixel pairs.
inline double pair_rand_index(const std::vector<int>& x, const std::vector<int>& y) {
  std::size_t agree = 0, pairs = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      ++pairs;
      agree += (x[i] == x[j]) == (y[i] == y[j]);
    }
  return static_cast<double>(agree) / static_cast<double>(pairs);
}

// ARI by enumerating all pixel pairs into the 2x2 pair-confusion counts.
inline double pair_ari(const std::vector<int>& x, const std::vector<int>& y) {
  double both = 0, only_x = 0, only_y = 0, neither = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool sx = x[i] == x[j], sy = y[i] == y[j];
      both += sx && sy;
      only_x += sx && !sy;
      only_y += !sx && sy;
      neither += !sx && !sy;
    }
  const double total = both + only_x + only_y + neither;
  const double same_x = both + only_x, same_y = both + only_y;
  const double expected = same_x * same_y / total;
  const double max_index = (same_x + same_y) / 2;
  if (max_index == expected) return 1.0;
  return (both - expected) / (max_index - expected);
}

inline double squared_are(const std::vector<int>& x, const std::vector<int>& y) {
  std::map<int, double> a, b;
  std::map<std::pair<int, int>, double> n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a[x[i]] += 1;
    b[y[i]] += 1;
    n[{x[i], y[i]}] += 1;
  }
  double sn = 0, sa = 0, sb = 0;
  for (const auto& [k, c] : n) sn += c * c;
  for (const auto& [k, c] : a) sa += c * c;
  for (const auto& [k, c] : b) sb += c * c;
  return 1.0 - 2.0 * sn / (sa + sb);
}

// ---------------------------------------------------------------------------
// Ranking oracles. `v` is already oriented so that larger is better.

inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double better = 0, tied = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j == i) continue;
      if (v[j] > v[i]) better += 1;
      if (v[j] == v[i]) tied += 1;
    }
    r[i] = 1 + better + tied / 2;
  }
  return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  double concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) {
        tie_x += 1;
      } else if (dy == 0) {
        tie_y += 1;
      } else if ((dx > 0) == (dy > 0)) {
        concordant += 1;
      } else {
        discordant += 1;
      }
    }
  return (concordant - discordant) /
         std::sqrt((concordant + discordant + tie_x) * (concordant + discordant + tie_y));
}

// ---------------------------------------------------------------------------
// Random inputs.

inline BinaryMask random_mask(std::mt19937_64& rng, std::vector<std::size_t> dims, double p) {
  std::bernoulli_distribution fg(p);
  BinaryMask m(dims);
  for (std::size_t i = 0; i < m.size(); ++i) m.set(i, fg(rng));
  return m;
}

// 2D up to max_side x max_side, random density in [0.2, 0.8].
inline BinaryMask random_mask_2d(std::mt19937_64& rng, std::size_t max_side = 12) {
  std::uniform_int_distribution<std::size_t> side(1, max_side);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  const std::size_t r = side(rng), c = side(rng);
  return random_mask(rng, {r, c}, density(rng));
}

inline BinaryMask random_mask_3d(std::mt19937_64& rng, std::size_t max_side = 6) {
  std::uniform_int_distribution<std::size_t> side(1, max_side);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  const std::size_t z = side(rng), r = side(rng), c = side(rng);
  return random_mask(rng, {z, r, c}, density(rng));
}

// Pair of masks with the same random dims.
inline std::pair<BinaryMask, BinaryMask> random_pair(std::mt19937_64& rng, bool three_d,
                                                     std::size_t max_side) {
  std::uniform_int_distribution<std::size_t> side(1, max_side);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  std::vector<std::size_t> dims = three_d ? std::vector<std::size_t>{side(rng), side(rng), side(rng)}
                                          : std::vector<std::size_t>{side(rng), side(rng)};
  BinaryMask a = random_mask(rng, dims, density(rng));
  BinaryMask b = random_mask(rng, dims, density(rng));
  return {a, b};
}

// Repairs every 2x2 checkerboard window by filling one of its background
// pixels; the result has identical 4- and 8-connected partitions.
inline BinaryMask well_composed_2d(BinaryMask m) {
  const std::size_t rows = m.dims()[0], cols = m.dims()[1];
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r + 1 < rows; ++r)
      for (std::size_t c = 0; c + 1 < cols; ++c) {
        const bool a = m.at(r, c), b = m.at(r, c + 1), x = m.at(r + 1, c), d = m.at(r + 1, c + 1);
        if (a == d && b == x && a != b) {
          if (!a) {
            m.set(r, c, true);
          } else {
            m.set(r, c + 1, true);
          }
          changed = true;
        }
      }
  }
  return m;
}

}  // namespace oracle
