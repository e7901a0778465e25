#include "fkb/mapbuild.hpp"

#include <functional>
#include <random>

#include "doctest.h"
#include "fkb/loops.hpp"
#include "oracles.hpp"

using namespace fkb;
using namespace fkb::test;

namespace {

void check_euler(const PlanarMapRecord& m) {
  const std::int64_t v_q = static_cast<std::int64_t>(m.primal_parent.size()) +
                           static_cast<std::int64_t>(m.dual_parent.size());
  const std::int64_t e_q = 2 * m.n_edges;
  const std::int64_t f_q = m.n_edges;
  CHECK(v_q - e_q + f_q == 2);
  CHECK(static_cast<std::int64_t>(m.quads.size()) == m.n_edges);
}

// Rejection-sample a balanced word of length 2n.
Word random_balanced(std::mt19937_64& rng, int n, const std::array<double, 5>& probs) {
  for (;;) {
    const Word w = random_word(rng, 1, 2 * n, probs);
    if (reduce(w).empty()) return w;
  }
}

void enumerate_balanced(int len, const std::function<void(const Word&)>& visit) {
  std::vector<int> digits(static_cast<std::size_t>(len), 0);
  for (;;) {
    Word w;
    w.start = 1;
    for (const int d : digits) w.symbols.push_back(static_cast<Symbol>(d));
    if (reduce(w).empty()) visit(w);
    std::size_t pos = 0;
    while (pos < digits.size() && digits[pos] == 4) digits[pos++] = 0;
    if (pos == digits.size()) break;
    ++digits[pos];
  }
}

}  // namespace

TEST_CASE("two-symbol maps") {
  {
    const PlanarMapRecord m = build_map(make_word(1, {BH, OH}));
    CHECK(m.primal_parent.size() == 2u);  // two vertices of M
    CHECK(m.dual_parent.size() == 1u);
    CHECK(m.n_edges == 1);
    check_euler(m);
    REQUIRE(m.quads.size() == 1u);
    CHECK(m.quads[0].primal_in_s);  // the edge lies in S
    const MapLoopOracle oracle(m);
    CHECK(oracle.loop_count() == 1);
    CHECK(oracle.k_of_s() == 1);
  }
  {
    const PlanarMapRecord m = build_map(make_word(1, {BC, OC}));
    CHECK(m.primal_parent.size() == 1u);  // one vertex, one self-loop edge
    CHECK(m.dual_parent.size() == 2u);
    CHECK(m.n_edges == 1);
    check_euler(m);
    CHECK_FALSE(m.quads[0].primal_in_s);  // dual diagonal in S*
    const MapLoopOracle oracle(m);
    CHECK(oracle.loop_count() == 1);
  }
  {
    const PlanarMapRecord m = build_map(make_word(1, {}));
    CHECK(m.n_edges == 0);
    CHECK(m.primal_parent.size() == 1u);
    CHECK(m.dual_parent.size() == 1u);
  }
  CHECK_THROWS_AS(build_map(make_word(1, {BH, OC})), NotBalanced);
  CHECK_THROWS_AS(build_map(make_word(1, {BH})), NotBalanced);
}

TEST_CASE("loop counts on all balanced words of length <= 6") {
  for (const int len : {2, 4, 6}) {
    enumerate_balanced(len, [&](const Word& w) {
      const PlanarMapRecord m = build_map(w);
      check_euler(m);
      const MapLoopOracle oracle(m);
      std::int64_t flex = 0;
      bool any_f = false;
      for (const auto& q : m.quads) {
        flex += q.flexible;
        any_f |= q.flexible;
      }
      if (!any_f) {
        CHECK(oracle.loop_count() == 1);  // Mullin words: a single loop
      }
      CHECK(oracle.loop_count() == flex + 1);
      CHECK(oracle.loop_count() == oracle.k_of_s());
      CHECK(oracle.cluster_count_s() + oracle.cluster_count_dual() - 1 ==
            oracle.loop_count());
    });
  }
}

TEST_CASE("flipping one quad's flexible flag moves the loop count by one") {
  enumerate_balanced(6, [&](const Word& w) {
    const MatchTable mt = compute_matches(w);
    const MapLoopOracle base(build_map(w));
    for (std::int64_t i = 1; i <= w.end(); ++i) {
      if (!is_order(w.at(i))) continue;
      Word flipped = w;
      if (w.at(i) == OF) {
        // Replace by the definite order of the matched burger's kind.
        flipped.at(i) = (w.at(*mt.at(i)) == BH) ? OH : OC;
      } else {
        // Only flips that keep the word balanced are comparable: o_h/o_c
        // can always be made flexible (same matching).
        flipped.at(i) = OF;
      }
      const ReducedWord r = reduce(flipped);
      if (!r.empty()) continue;
      const MatchTable mt2 = compute_matches(flipped);
      bool same_matching = true;
      for (std::int64_t k = 1; k <= w.end(); ++k) {
        same_matching &= (mt.at(k) == mt2.at(k));
      }
      if (!same_matching) continue;
      const MapLoopOracle flip(build_map(flipped));
      const std::int64_t diff = flip.loop_count() - base.loop_count();
      CHECK((diff == 1 || diff == -1));
    }
  });
}

TEST_CASE("bubble oracle on the hand-checked three-cycle example") {
  // b_c o_h o_h o_f preceded by the two hamburgers the o_h's escape to;
  // the whole six-symbol word is balanced.
  const Word w = make_word(1, {BH, BH, BC, OH, OH, OF});
  REQUIRE(reduce(w).empty());
  const MatchTable mt = compute_matches(w);
  REQUIRE(mt.at(6) == MatchIndex{3});
  const MapLoopOracle oracle(build_map(w));
  const auto bubble = oracle.bubble(6);
  CHECK(bubble.area == 3);
  CHECK(bubble.boundary_len == 3);

  // Degenerate bubble: boundary is a single self-loop edge.
  const Word w2 = make_word(1, {BH, BC, OF, OF});
  REQUIRE(reduce(w2).empty());
  const MatchTable mt2 = compute_matches(w2);
  REQUIRE(mt2.at(3) == MatchIndex{2});
  const MapLoopOracle oracle2(build_map(w2));
  const auto bubble2 = oracle2.bubble(3);
  CHECK(bubble2.area == 1);
  CHECK(bubble2.boundary_len == 1);
}

TEST_CASE("word formulas equal the map oracle on random balanced words") {
  std::mt19937_64 rng(101);
  const ModelParams mp = params_from_p(1.0 / 3.0);
  int bubbles = 0, loops_checked = 0, touch_checked = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const Word w = random_balanced(rng, n, mp.sym_probs);
    const MatchTable mt = compute_matches(w);
    const PlanarMapRecord m = build_map(w);
    check_euler(m);
    const MapLoopOracle oracle(m);

    // Per-bubble area and boundary length (every matched o_f).
    const auto records = flex_records(w, mt);
    for (const FlexRecord& rec : records) {
      const auto bubble = oracle.bubble(rec.i);
      CHECK(bubble.area == rec.i - rec.phi);
      CHECK(bubble.boundary_len == reduced_interval_len(w, mt, rec.phi, rec.i) + 1);
      ++bubbles;
    }

    // Cycle intersection against the word predicate.
    for (std::size_t a = 0; a < records.size(); ++a) {
      for (std::size_t b = 0; b < records.size(); ++b) {
        if (a == b || records[a].dir != records[b].dir) continue;
        if (!(records[b].phi < records[a].phi && records[a].i < records[b].i)) continue;
        CHECK(nesting_touch(w, mt, records[a].i, records[b].i) ==
              oracle.cycles_touch(records[a].i, records[b].i));
        ++touch_checked;
      }
    }

    // Loop entries around a root chosen inside the word.
    for (std::int64_t origin = 1; origin <= w.end(); ++origin) {
      const RootLoopSequence seq = nested_f_intervals(w, mt, origin);
      for (const RootLoopEntry& entry : seq) {
        if (entry.truncated) continue;
        LoopComponents comps;
        try {
          comps = classify_components(w, mt, entry);
        } catch (const CensoredPhiStar&) {
          continue;
        }
        const LoopStats stats = loop_stats(w, mt, entry, comps);
        std::vector<std::int64_t> excursions;
        for (const ConeRecord& rec : comps.excursions) excursions.push_back(rec.i);
        const auto region = oracle.loop_region(entry.theta, excursions);
        CHECK(stats.full_area == region.area);
        CHECK(stats.outer_boundary_len == region.boundary_len);

        // Components of the loop are bubbles; interior area removes the
        // opposite-direction ones.
        std::int64_t opposite_area = 0;
        for (std::size_t k = 0; k < comps.components.size(); ++k) {
          const auto bubble = oracle.bubble(comps.components[k].i);
          CHECK(bubble.area == stats.component_areas[k]);
          CHECK(bubble.boundary_len == stats.component_boundary_lens[k]);
          if (comps.components[k].dir != entry.dir) opposite_area += bubble.area;
        }
        CHECK(stats.interior_area == stats.full_area - opposite_area);
        ++loops_checked;
      }
    }
  }
  CHECK(bubbles > 1000);
  CHECK(loops_checked > 100);
  CHECK(touch_checked > 50);
}

TEST_CASE("exact FK weights at n = 1 and 2") {
  const WeightCheckReport r1 = weight_check(1, 1, 3);
  CHECK(r1.balanced_words > 0);
  CHECK(r1.max_relative_deviation == 0.0);
  CHECK(r1.loops_equal_k);
  CHECK(r1.loops_equal_flex_plus_one);

  const WeightCheckReport r2 = weight_check(2, 1, 3);
  CHECK(r2.max_relative_deviation == 0.0);
  CHECK(r2.loops_equal_k);

  const WeightCheckReport r2b = weight_check(2, 1, 4);
  CHECK(r2b.max_relative_deviation == 0.0);
  CHECK(r2b.loops_equal_k);

  CHECK_THROWS_AS(weight_check(5, 1, 3), std::domain_error);
}

TEST_CASE("map json export") {
  const PlanarMapRecord m = build_map(make_word(1, {BH, BC, OF, OF}));
  const std::string j = map_to_json(m);
  CHECK(j.find("\"quads\"") != std::string::npos);
  CHECK(j.find("\"lambda\"") != std::string::npos);
  CHECK(j.find("\"edge_slots\"") != std::string::npos);
}
