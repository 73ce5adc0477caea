#include "topoeval/connectivity.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace topoeval {

std::string_view to_string(Connectivity c) noexcept { return c == Connectivity::A ? "A" : "D"; }

std::string_view to_string(Phase p) noexcept {
  return p == Phase::foreground ? "FG" : "BG";
}

Connectivity parse_connectivity(std::string_view text) {
  if (text.size() == 1) {
    const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    if (ch == 'A') return Connectivity::A;
    if (ch == 'D') return Connectivity::D;
  }
  throw std::invalid_argument("connectivity must be A or D, got '" + std::string(text) + "'");
}

Connectivity opposite(Connectivity c) noexcept {
  return c == Connectivity::A ? Connectivity::D : Connectivity::A;
}

std::vector<Offset> neighbor_offsets(Adjacency adj, std::size_t ndim) {
  if (ndim != 2 && ndim != 3) throw std::invalid_argument("neighbor offsets need 2 or 3 dims");
  std::vector<Offset> out;
  const int zr = ndim == 3 ? 1 : 0;
  for (int dz = -zr; dz <= zr; ++dz) {
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int nonzero = (dz != 0) + (dr != 0) + (dc != 0);
        if (nonzero == 0) continue;
        if (adj == Adjacency::direct && nonzero != 1) continue;
        out.push_back({dz, dr, dc});
      }
    }
  }
  return out;
}

std::string ConnectivityPair::describe(std::size_t ndim) const {
  return std::to_string(fg_neighbors(ndim).size()) + "/" +
         std::to_string(bg_neighbors(ndim).size());
}

}  // namespace topoeval
