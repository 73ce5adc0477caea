#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "topoeval/error.hpp"
#include "topoeval/labeling.hpp"
#include "topoeval/parallel.hpp"

using namespace topoeval;

namespace {

constexpr ConnectivityPair kA{Connectivity::A};
constexpr ConnectivityPair kD{Connectivity::D};

void check_against_oracle(const BinaryMask& m, ConnectivityPair conn) {
  const ComponentLabeling l = label_components(m, conn);
  const oracle::Labels o = oracle::flood_label(m, conn.setting() == Connectivity::A);
  REQUIRE(l.components.size() == static_cast<std::size_t>(o.count));
  for (std::size_t i = 0; i < m.size(); ++i) {
    REQUIRE(static_cast<int>(l.labels[i]) == o.label[i]);
  }
  for (std::size_t id = 0; id < l.components.size(); ++id) {
    const Component& c = l.components[id];
    CHECK(c.id == id);
    CHECK(c.size == o.size[id]);
    CHECK((c.phase == Phase::foreground) == (o.phase[id] == 1));
    CHECK(c.touches_border == o.border[id]);
  }
}

}  // namespace

TEST_CASE("mask construction and indexing") {
  BinaryMask m = BinaryMask::from_rows({"#..", ".#.", "..."});
  CHECK(m.dims() == std::vector<std::size_t>{3, 3});
  CHECK(m.at(0, 0));
  CHECK(m.at(1, 1));
  CHECK_FALSE(m.at(2, 2));
  CHECK(m.count_foreground() == 2);
  CHECK(m.index(1, 2) == 5);

  BinaryMask v({2, 3, 4});
  v.set(1, 2, 3, true);
  CHECK(v.index(1, 2, 3) == 23);
  CHECK(v[23]);
  CHECK(v.coords(23) == std::array<std::size_t, 3>{1, 2, 3});

  CHECK_THROWS_AS(BinaryMask({5}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryMask({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryMask({1, 2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(BinaryMask({2, 2}, {1, 0, 1}), std::invalid_argument);
}

TEST_CASE("connectivity pairs are opposite") {
  CHECK(kA.adjacency(Phase::foreground) == Adjacency::all);
  CHECK(kA.adjacency(Phase::background) == Adjacency::direct);
  CHECK(kD.adjacency(Phase::foreground) == Adjacency::direct);
  CHECK(kD.adjacency(Phase::background) == Adjacency::all);
  CHECK(kA.describe(2) == "8/4");
  CHECK(kD.describe(2) == "4/8");
  CHECK(kA.describe(3) == "26/6");
  CHECK(kD.describe(3) == "6/26");
  CHECK(kA.fg_neighbors(2).size() == 8);
  CHECK(kA.bg_neighbors(3).size() == 6);
  CHECK(kD.bg_neighbors(3).size() == 26);
  CHECK(parse_connectivity("D") == Connectivity::D);
  CHECK_THROWS((void)parse_connectivity("8"));
}

TEST_CASE("label_components examples") {
  const BinaryMask diag = BinaryMask::from_rows({"#..", ".#.", "..."});
  const ComponentLabeling a = label_components(diag, kA);
  CHECK(count_components(a, Phase::foreground) == 1);
  CHECK(count_components(a, Phase::background) == 1);
  const ComponentLabeling d = label_components(diag, kD);
  CHECK(count_components(d, Phase::foreground) == 2);
  CHECK(count_components(d, Phase::background) == 1);

  const BinaryMask empty({2, 2});
  for (auto conn : {kA, kD}) {
    const ComponentLabeling l = label_components(empty, conn);
    CHECK(count_components(l, Phase::foreground) == 0);
    CHECK(count_components(l, Phase::background) == 1);
  }

  const BinaryMask full = BinaryMask::from_rows({"###", "###"});
  const ComponentLabeling f = label_components(full, kD);
  CHECK(count_components(f, Phase::foreground) == 1);
  CHECK(count_components(f, Phase::background) == 0);
}

TEST_CASE("labels follow raster first-visit order") {
  const BinaryMask m = BinaryMask::from_rows({".#.#", "....", "#..."});
  const ComponentLabeling l = label_components(m, kA);
  // BG first at (0,0), then the FG pixels in scan order.
  CHECK(l.labels[0] == 0);
  CHECK(l.labels[1] == 1);
  CHECK(l.labels[3] == 2);
  CHECK(l.labels[8] == 3);
  CHECK(l.components[0].phase == Phase::background);
  CHECK(l.components[0].size == 9);
}

TEST_CASE("set operations") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const BinaryMask x = oracle::random_mask_2d(rng);
    const BinaryMask u = mask_union(x, mask_complement(x));
    CHECK(u.count_foreground() == u.size());
    CHECK(mask_intersection(x, x) == x);
    CHECK(mask_complement(mask_complement(x)) == x);
  }
  const BinaryMask m = BinaryMask::from_rows({"###", "#.#", "###"});
  const BinaryMask p = pad_with_background(m);
  CHECK(p.dims() == std::vector<std::size_t>{5, 5});
  CHECK(p.count_foreground() == 8);
  CHECK(p.at(1, 1));
  CHECK_FALSE(p.at(2, 2));
  CHECK_FALSE(p.at(0, 0));
  CHECK(pad_with_background(BinaryMask({1, 1, 1}), 2).dims() == std::vector<std::size_t>{5, 5, 5});
  CHECK_THROWS_AS((void)mask_union(BinaryMask({2, 2}), BinaryMask({2, 3})), DimensionMismatch);
}

TEST_CASE("labeling agrees with flood-fill oracle on random 2D masks") {
  std::mt19937_64 rng(1001);
  for (int i = 0; i < 1000; ++i) {
    const BinaryMask m = oracle::random_mask_2d(rng, 12);
    check_against_oracle(m, kA);
    check_against_oracle(m, kD);
  }
}

TEST_CASE("labeling agrees with flood-fill oracle on random 3D masks") {
  std::mt19937_64 rng(1002);
  for (int i = 0; i < 1000; ++i) {
    const BinaryMask m = oracle::random_mask_3d(rng, 6);
    check_against_oracle(m, kA);
    check_against_oracle(m, kD);
  }
}

TEST_CASE("partition property and connectivity duality") {
  std::mt19937_64 rng(1003);
  for (int i = 0; i < 500; ++i) {
    const BinaryMask m = i % 2 ? oracle::random_mask_3d(rng) : oracle::random_mask_2d(rng);
    const ComponentLabeling a = label_components(m, kA);
    const ComponentLabeling d = label_components(m, kD);
    std::size_t total = 0;
    for (const auto& c : a.components) total += c.size;
    CHECK(total == m.size());
    for (std::size_t p = 0; p < m.size(); ++p) {
      CHECK((a.phase_at(p) == Phase::foreground) == m[p]);
    }
    CHECK(count_components(a, Phase::foreground) <= count_components(d, Phase::foreground));
    CHECK(count_components(d, Phase::background) <= count_components(a, Phase::background));
  }
}

TEST_CASE("labeling is deterministic across thread counts") {
  std::mt19937_64 rng(1004);
  std::vector<BinaryMask> masks;
  for (int i = 0; i < 64; ++i) masks.push_back(oracle::random_mask_2d(rng, 40));
  std::vector<std::vector<std::uint32_t>> serial(masks.size()), threaded(masks.size());
  parallel_for(masks.size(), 1, [&](std::size_t i) { serial[i] = label_components(masks[i], kA).labels; });
  parallel_for(masks.size(), 8, [&](std::size_t i) { threaded[i] = label_components(masks[i], kA).labels; });
  CHECK(serial == threaded);
}

TEST_CASE("phase labeling marks other phase as unlabeled") {
  const BinaryMask m = BinaryMask::from_rows({"#.", ".#"});
  const PhaseLabeling fg = label_phase(m, Phase::foreground, Adjacency::direct);
  CHECK(fg.sizes.size() == 2);
  CHECK(fg.labels[1] == kUnlabeled);
  const PhaseLabeling bg = label_phase(m, Phase::background, Adjacency::all);
  CHECK(bg.sizes.size() == 1);
  CHECK(bg.touches_border[0]);
}
