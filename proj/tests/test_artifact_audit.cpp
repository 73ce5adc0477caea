#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "topoeval/audit.hpp"
#include "topoeval/overlap.hpp"

using namespace topoeval;

namespace {

constexpr ConnectivityPair kA{Connectivity::A};
constexpr ConnectivityPair kD{Connectivity::D};

std::size_t flipped(const BinaryMask& a, const BinaryMask& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

}  // namespace

TEST_CASE("size histogram examples") {
  const BinaryMask m = BinaryMask::from_rows({"#..##", "...##", "....#"});
  const ComponentHistogram h = size_histogram(label_components(m, kA));
  CHECK(h.fg == std::map<std::size_t, std::size_t>{{1, 1}, {5, 1}});
  CHECK(h.fg_total == 2);
  CHECK(h.bg_total == 1);
  const ComponentHistogram e = size_histogram(label_components(BinaryMask({3, 3}), kD));
  CHECK(e.fg.empty());
  CHECK(e.bg == std::map<std::size_t, std::size_t>{{9, 1}});
}

TEST_CASE("size histogram agrees with flood-fill recount") {
  std::mt19937_64 rng(7001);
  for (int i = 0; i < 300; ++i) {
    const BinaryMask m = oracle::random_mask_2d(rng);
    for (auto conn : {kA, kD}) {
      const ComponentHistogram h = size_histogram(label_components(m, conn));
      const oracle::Labels o = oracle::flood_label(m, conn.setting() == Connectivity::A);
      std::map<std::size_t, std::size_t> fg, bg;
      for (int id = 0; id < o.count; ++id) ++(o.phase[id] ? fg : bg)[o.size[id]];
      CHECK(h.fg == fg);
      CHECK(h.bg == bg);
    }
  }
}

TEST_CASE("speck removal") {
  const BinaryMask m = BinaryMask::from_rows({"#....", ".....", "..###", "..###"});
  const BinaryMask cleaned = remove_small_components(m, kA, 1, {true, false});
  CHECK_FALSE(cleaned.at(0, 0));
  CHECK(cleaned.count_foreground() == 6);
  CHECK(count_components(label_components(cleaned, kA), Phase::foreground) == 1);
  CHECK_THROWS_AS((void)remove_small_components(m, kA, 0), std::invalid_argument);

  // A 1-pixel hole is background of size 1.
  const BinaryMask ring = BinaryMask::from_rows({"###", "#.#", "###"});
  CHECK(remove_small_components(ring, kD, 1, {false, true}).count_foreground() == 9);
  CHECK(parse_phase_selection("bg").fg == false);
  CHECK_THROWS((void)parse_removal_mode("cumulative"));
}

TEST_CASE("removal accounting, idempotence and dice") {
  std::mt19937_64 rng(7002);
  for (int i = 0; i < 1000; ++i) {
    const BinaryMask m = i % 4 == 0 ? oracle::random_mask_3d(rng) : oracle::random_mask_2d(rng, 12);
    const ConnectivityPair conn = i % 2 ? kA : kD;
    const std::size_t k = 1 + static_cast<std::size_t>(i % 5);
    const ComponentLabeling l = label_components(m, conn);

    std::size_t removed_pixels = 0;
    for (const auto& c : l.components) {
      if (c.size <= k) removed_pixels += c.size;
    }
    const BinaryMask cleaned = remove_small_components(m, conn, k);
    CHECK(flipped(m, cleaned) == removed_pixels);
    // Dice = 1 - |symmetric difference| / (|A| + |B|).
    const std::size_t volume = m.count_foreground() + cleaned.count_foreground();
    if (volume > 0) {
      CHECK(dice(m, cleaned) ==
            doctest::Approx(1.0 - static_cast<double>(removed_pixels) / static_cast<double>(volume)).epsilon(1e-12));
    }

    // Idempotence holds exactly when the cleaned mask has no small components left.
    const ComponentLabeling after = label_components(cleaned, conn);
    bool small_left = false;
    for (const auto& c : after.components) small_left |= c.size <= k;
    CHECK((remove_small_components(cleaned, conn, k) == cleaned) == !small_left);

    const BinaryMask seq = remove_small_components(m, conn, k, {}, RemovalMode::sequential);
    CHECK(seq.dims() == m.dims());
    const RemovalReport r = removal_effect_report(std::vector<BinaryMask>{m}, conn, {1, 2, 5});
    REQUIRE(r.rows.size() == 4);
  }
}

TEST_CASE("stated removal bounds have counterexamples") {
  // Flipping a 5-pixel X and its four 1-pixel holes at once yields a diamond
  // whose centre and corners are five separate 4-connected BG components.
  const BinaryMask x = BinaryMask::from_rows({"#.#", ".#.", "#.#"});
  const RemovalReport sim = removal_effect_report(std::vector<BinaryMask>{x}, kA, {1, 5});
  CHECK(sim.rows[0].bg == 4);
  CHECK(sim.rows[1].bg == 0);
  CHECK(sim.rows[2].bg == 5);

  // Sequential mode is not monotone either.
  std::mt19937_64 rng(7003);
  bool seq_increase = false;
  for (int i = 0; i < 2000 && !seq_increase; ++i) {
    const BinaryMask m = oracle::random_mask_2d(rng, 8);
    const RemovalReport r =
        removal_effect_report(std::vector<BinaryMask>{m}, kA, {1, 2, 5}, RemovalMode::sequential);
    for (std::size_t t = 1; t < r.rows.size(); ++t)
      seq_increase |= r.rows[t].fg > r.rows[t - 1].fg || r.rows[t].bg > r.rows[t - 1].bg;
  }
  CHECK(seq_increase);

  // A lone speck: Dice drops to 0 although only one pixel in N flipped.
  BinaryMask speck({4, 4});
  speck.set(1, 1, true);
  const BinaryMask cleaned = remove_small_components(speck, kA, 1);
  CHECK(cleaned.count_foreground() == 0);
  CHECK(dice(speck, cleaned) == 0.0);
}

TEST_CASE("connectivity count table") {
  const std::vector<BinaryMask> masks{BinaryMask::from_rows({"#.", ".#"}), BinaryMask::from_rows({"##.", "...", ".##"})};
  const ConnectivityCountTable t = connectivity_count_report(masks);
  CHECK(t.image_count == 2);
  CHECK(t.a.fg == 1 + 2);
  CHECK(t.d.fg == 2 + 2);
  CHECK(t.a.bg == 2 + 1);
  CHECK(t.d.bg == 1 + 1);
  CHECK(t.fg_ratio() == doctest::Approx(75.0));
  CHECK(count_table_csv(t) == "setting,FG,BG\nA,3,3\nD,4,2\nRatio,75.0%,66.7%\n");

  const ConnectivityCountTable same = connectivity_count_report({BinaryMask::from_rows({"##", ".."})});
  CHECK(same.fg_ratio() == 100.0);
  CHECK(same.bg_ratio() == 100.0);
  CHECK(min_max_ratio(0, 0) == 100.0);
  CHECK(min_max_ratio(132, 18850) == doctest::Approx(0.7003).epsilon(1e-3));
}

TEST_CASE("removal report shape") {
  const std::vector<BinaryMask> masks{BinaryMask::from_rows({"#....", ".....", "..###"})};
  const RemovalReport none = removal_effect_report(masks, kA, {});
  CHECK(none.rows.size() == 1);
  CHECK(removal_table_csv(none) == "components,FG_A,BG_A\nNo Removal,2,1\nMin/Max Ratio,100.0%,100.0%\n");
  const RemovalReport r = removal_effect_report(masks, kA, {1, 2});
  CHECK(removal_table_csv(r) ==
        "components,FG_A,BG_A\nNo Removal,2,1\n1 Pix. Removal,1,1\n2 Pix. Removal,1,1\nMin/Max Ratio,50.0%,100.0%\n");
  CHECK_THROWS_AS((void)removal_effect_report(masks, kA, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS((void)removal_effect_report(masks, kA, {0}), std::invalid_argument);
  const std::string json = audit_json(connectivity_count_report(masks), r);
  CHECK(json.find("\"schema\": \"topoeval.audit/1\"") != std::string::npos);
}
