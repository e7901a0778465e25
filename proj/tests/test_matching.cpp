#include "fkb/matching.hpp"

#include <array>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace fkb;
using namespace fkb::test;

TEST_CASE("compute_matches examples") {
  {
    const Word w = make_word(1, {BH, OH});
    const MatchTable mt = compute_matches(w);
    CHECK(mt.at(1) == MatchIndex{2});
    CHECK(mt.at(2) == MatchIndex{1});
  }
  {
    const Word w = make_word(1, {BH, BC, OH, OF, BH, OC});
    const MatchTable mt = compute_matches(w);
    CHECK(mt.at(3) == MatchIndex{1});
    CHECK(mt.at(4) == MatchIndex{2});
    CHECK(mt.at(1) == MatchIndex{3});
    CHECK(mt.at(2) == MatchIndex{4});
    CHECK_FALSE(mt.matched(5));
    CHECK_FALSE(mt.matched(6));
  }
  {
    const Word w = make_word(1, {BH, BH, BH});
    const MatchTable mt = compute_matches(w);
    for (std::int64_t i = 1; i <= 3; ++i) CHECK_FALSE(mt.matched(i));
  }
}

TEST_CASE("matches agree with the definitional rewrite oracle") {
  std::mt19937_64 rng(31);
  const ModelParams mp = params_from_p(0.3);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 256);
    const Word w = random_word(rng, 1 - static_cast<std::int64_t>(rng() % 10), n,
                               mp.sym_probs);
    const MatchTable mt = compute_matches(w);
    const auto oracle = match_oracle(w);
    for (std::int64_t i = w.start; i <= w.end(); ++i) {
      CHECK(mt.at(i) == oracle[static_cast<std::size_t>(i - w.start)]);
    }
  }
}

TEST_CASE("match table involution and nesting") {
  std::mt19937_64 rng(37);
  const ModelParams mp = params_from_p(1.0 / 3.0);
  for (int rep = 0; rep < 10000; ++rep) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 255);
    const Word w = random_word(rng, 1, n, mp.sym_probs);
    const MatchTable mt = compute_matches(w);
    // Intervals of equal order kind are nested or disjoint (mixed kinds
    // may cross: R(b_c b_h o_c o_h) pairs (1,3) with (2,4)).
    std::array<std::vector<std::pair<std::int64_t, std::int64_t>>, 3> intervals;
    for (std::int64_t i = 1; i <= n; ++i) {
      const MatchIndex m = mt.at(i);
      if (!m) continue;
      CHECK(mt.at(*m) == MatchIndex{i});
      if (is_order(w.at(i))) {
        CHECK(*m < i);
        CHECK(is_burger(w.at(*m)));
        intervals[static_cast<std::size_t>(w.at(i)) - 2].emplace_back(*m, i);
      }
    }
    for (const auto& group : intervals) {
      for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t b = a + 1; b < group.size(); ++b) {
          const auto [la, ra] = group[a];
          const auto [lb, rb] = group[b];
          const bool disjoint = ra < lb || rb < la;
          const bool nested = (la < lb && rb < ra) || (lb < la && ra < rb);
          CHECK((disjoint || nested));
        }
      }
    }
  }
}

TEST_CASE("phi_star examples") {
  {
    const Word w = make_word(1, {BH, BC, OH, OF});
    const MatchTable mt = compute_matches(w);
    CHECK(mt.at(4) == MatchIndex{2});
    CHECK(phi_star(w, mt, 4) == MatchIndex{1});
  }
  {
    const Word w = make_word(1, {BC, OF});
    const MatchTable mt = compute_matches(w);
    CHECK(phi_star(w, mt, 2) == MatchIndex{1});
  }
  {
    const Word w = make_word(1, {BC, BH, OH, OF});
    const MatchTable mt = compute_matches(w);
    CHECK(phi_star(w, mt, 4) == mt.at(4));
    CHECK(phi_star(w, mt, 4) == MatchIndex{1});
  }
  {
    const Word w = make_word(1, {BH, BH});
    const MatchTable mt = compute_matches(w);
    CHECK_THROWS_AS(phi_star(w, mt, 2), std::invalid_argument);
  }
}

TEST_CASE("phi_star agrees with the subword rewrite oracle") {
  std::mt19937_64 rng(41);
  const ModelParams mp = params_from_p(1.0 / 3.0);
  int checked = 0;
  for (int rep = 0; rep < 800; ++rep) {
    const Word w = random_word(rng, 1, 200, mp.sym_probs);
    const MatchTable mt = compute_matches(w);
    for (std::int64_t i = 1; i <= w.end(); ++i) {
      if (!is_order(w.at(i)) || !mt.matched(i)) continue;
      CHECK(phi_star(w, mt, i) == phi_star_oracle(w, mt, i));
      ++checked;
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("resolve_Y") {
  {
    const Word w = make_word(1, {BH, OF});
    const Word y = resolve_Y(w, compute_matches(w));
    CHECK(y.at(2) == OH);
  }
  {
    const Word w = make_word(1, {BC, OF});
    const Word y = resolve_Y(w, compute_matches(w));
    CHECK(y.at(2) == OC);
  }
  {
    const Word w = make_word(1, {OF, BH});
    try {
      resolve_Y(w, compute_matches(w));
      CHECK(false);
    } catch (const UnresolvedFlexible& e) {
      CHECK(e.index == 1);
    }
  }
}

TEST_CASE("flex_records") {
  {
    const Word w = make_word(1, {BC, OH, OH, OF});
    const auto recs = flex_records(w, compute_matches(w));
    REQUIRE(recs.size() == 1u);
    CHECK(recs[0].i == 4);
    CHECK(recs[0].phi == 1);
    CHECK(recs[0].dir == Direction::Left);
    CHECK_FALSE(recs[0].degenerate);
    // |X(1,4)| = 2: both hamburger orders survive.
    const MatchTable mt = compute_matches(w);
    std::int64_t surviving = 0;
    for (std::int64_t k = 2; k < 4; ++k) {
      if (is_order(w.at(k)) && (!mt.at(k) || *mt.at(k) < 1)) ++surviving;
    }
    CHECK(surviving == 2);
  }
  {
    const Word w = make_word(1, {BH, OF});
    const auto recs = flex_records(w, compute_matches(w));
    REQUIRE(recs.size() == 1u);
    CHECK(recs[0].i == 2);
    CHECK(recs[0].phi == 1);
    CHECK(recs[0].dir == Direction::Right);
    CHECK(recs[0].phi_star == MatchIndex{1});
    CHECK(recs[0].degenerate);
  }
  {
    const Word w = make_word(1, {BH, OH, BC, OC});
    CHECK(flex_records(w, compute_matches(w)).empty());
  }
}

TEST_CASE("cone correspondence: bubbles contain only same-kind orders") {
  std::mt19937_64 rng(43);
  const ModelParams mp = params_from_p(1.0 / 3.0);
  int nontrivial = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const Word w = random_word(rng, 1, 256, mp.sym_probs);
    const MatchTable mt = compute_matches(w);
    for (const FlexRecord& rec : flex_records(w, mt)) {
      if (rec.i - rec.phi < 2) continue;
      ++nontrivial;
      const NaiveReduction red = [&] {
        Word sub;
        sub.start = rec.phi;
        for (std::int64_t k = rec.phi; k <= rec.i; ++k) sub.symbols.push_back(w.at(k));
        return naive_reduce_tagged(sub);
      }();
      for (const Tagged& t : red.normal_form) {
        CHECK(is_order(t.s));
        if (rec.dir == Direction::Left) {
          CHECK(t.s == OH);
        } else {
          CHECK(t.s == OC);
        }
      }
    }
  }
  CHECK(nontrivial > 100);
}

TEST_CASE("forward_match") {
  {
    // An order only survives in X(i+1, j) when the stack cannot serve
    // it: the second o_c pends once the lone cheeseburger is gone.
    const Word w = make_word(1, {OC, BH, BC, OC, OC});
    CHECK(forward_match(w, 1) == MatchIndex{5});
  }
  {
    // A flexible order with a nonempty stack is fulfilled, so the
    // reduced word never contains an order here.
    const Word w = make_word(1, {OC, BH, BC, BC, OF});
    CHECK(forward_match(w, 1) == std::nullopt);
  }
  {
    // b_h then o_h cancels: no window X(1, j) contains an order.
    const Word w = make_word(1, {BH, OH});
    CHECK(forward_match(w, 0) == std::nullopt);
  }
  {
    const Word w = make_word(1, {BH, OC});
    CHECK(forward_match(w, 0) == MatchIndex{2});
  }
  {
    const Word w = make_word(1, {BH, BC});
    CHECK(forward_match(w, 0) == std::nullopt);
  }
  {
    const Word w = make_word(1, {OH, OC});
    CHECK_THROWS_AS(forward_match(w, 0), std::invalid_argument);
  }
}

TEST_CASE("forward_match window always holds one surviving order") {
  std::mt19937_64 rng(107);
  const ModelParams mp = params_from_p(1.0 / 3.0);
  int found = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const Word w = random_word(rng, 1, 128, mp.sym_probs);
    for (std::int64_t i = 0; i < w.end(); ++i) {
      if (!is_burger(w.at(i + 1))) continue;
      const MatchIndex j = forward_match(w, i);
      if (!j) continue;
      ++found;
      Word sub;
      sub.start = i + 1;
      for (std::int64_t m = i + 1; m <= *j; ++m) sub.symbols.push_back(w.at(m));
      const ReducedWord r = reduce(sub);
      CHECK(r.orders.size() == 1u);
      // And no earlier window has one.
      if (*j > i + 1) {
        sub.symbols.pop_back();
        CHECK(reduce(sub).orders.empty());
      }
    }
  }
  CHECK(found > 500);
}

TEST_CASE("ancestor_free matches the definitional scan") {
  // Direct cases: the window [b_h, o_h] has X(1,2) empty, so index 2 is
  // not ancestor free.
  CHECK(ancestor_free(make_word(1, {OH}), 1, 1) == std::vector<std::int64_t>{1});
  CHECK(ancestor_free(make_word(1, {BH, OH}), 1, 2).empty());
  CHECK(ancestor_free(make_word(1, {BH, BC}), 1, 2).empty());
  CHECK(ancestor_free(make_word(1, {BH, OH, OC}), 1, 3) ==
        std::vector<std::int64_t>{3});

  std::mt19937_64 rng(47);
  const ModelParams mp = params_from_p(1.0 / 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 200);
    const Word w = random_word(rng, 1, n, mp.sym_probs);
    const auto fast = ancestor_free(w, 1, n);
    // Definitional: X(k, i) contains an order for every k <= i.
    std::vector<std::int64_t> slow;
    for (std::int64_t i = 1; i <= n; ++i) {
      bool ok = true;
      for (std::int64_t k = 1; k <= i && ok; ++k) {
        Word sub;
        sub.start = k;
        for (std::int64_t m = k; m <= i; ++m) sub.symbols.push_back(w.at(m));
        if (reduce(sub).orders.empty()) ok = false;
      }
      if (ok) slow.push_back(i);
    }
    CHECK(fast == slow);
  }
}

TEST_CASE("ancestor_free equals the iterated hitting construction") {
  std::mt19937_64 rng(53);
  const ModelParams mp = params_from_p(0.4);
  for (int rep = 0; rep < 1000; ++rep) {
    const Word w = random_word(rng, 1, 1000, mp.sym_probs);
    const auto fast = ancestor_free(w, 1, 1000);
    std::vector<std::int64_t> iterated;
    std::int64_t from = 1;
    while (from <= 1000) {
      ForwardScanner scan;
      std::int64_t hit = 0;
      for (std::int64_t i = from; i <= 1000; ++i) {
        scan.feed(w.at(i), i);
        if (scan.pending_orders() > 0) {
          hit = i;
          break;
        }
      }
      if (hit == 0) break;
      iterated.push_back(hit);
      from = hit + 1;
    }
    CHECK(fast == iterated);
  }
}

TEST_CASE("hitting_time examples") {
  {
    std::vector<Symbol> stream = {BH};
    std::size_t k = 0;
    const HitResult r = hitting_time([&] { return stream[k++]; }, HitStat::J, 100);
    CHECK(r.value == 1);
    CHECK_FALSE(r.censored);
  }
  {
    // X_{-1} = o_h, X_{-2} = b_c: the reduced word o_h b_c holds a burger.
    std::vector<Symbol> stream = {OH, BC};
    std::size_t k = 0;
    const HitResult r = hitting_time([&] { return stream[k++]; }, HitStat::J, 100);
    CHECK(r.value == 2);
  }
  {
    std::vector<Symbol> stream = {OH};
    std::size_t k = 0;
    const HitResult r = hitting_time([&] { return stream[k++]; }, HitStat::I, 100);
    CHECK(r.value == 1);
  }
  {
    std::vector<Symbol> stream = {BH, BH, BH};
    std::size_t k = 0;
    const HitResult r = hitting_time([&] { return stream[k++]; }, HitStat::I, 3);
    CHECK(r.censored);
    CHECK(r.value == 3);
  }
}

TEST_CASE("hitting times agree with direct window reductions") {
  std::mt19937_64 rng(59);
  const ModelParams mp = params_from_p(1.0 / 3.0);
  for (int rep = 0; rep < 300; ++rep) {
    const std::int64_t cap = 64;
    const Word back = random_word(rng, -cap, cap, mp.sym_probs);  // X_{-cap}..X_{-1}..
    const auto backward_source = [&back] {
      std::int64_t next = -1;
      return [&back, next]() mutable { return back.at(next--); };
    }();

    // J: first j with a burger in X(-j,-1); Jtilde: no o_f; P: no orders.
    std::int64_t expect_j = cap + 1, expect_jt = cap + 1, expect_p = cap + 1;
    for (std::int64_t j = 1; j <= cap; ++j) {
      Word win;
      win.start = -j;
      for (std::int64_t m = -j; m <= -1; ++m) win.symbols.push_back(back.at(m));
      const ReducedWord r = reduce(win);
      if (expect_j > cap && !r.burgers.empty()) expect_j = j;
      bool has_f = false;
      for (const Symbol s : r.orders) has_f |= (s == OF);
      if (expect_jt > cap && !has_f) expect_jt = j;
      if (expect_p > cap && r.orders.empty()) expect_p = j;
    }
    auto src1 = backward_source;
    const HitResult rj = hitting_time(src1, HitStat::J, cap);
    CHECK((rj.censored ? cap + 1 : rj.value) == expect_j);
    auto src2 = backward_source;
    const HitResult rjt = hitting_time(src2, HitStat::Jtilde, cap);
    CHECK((rjt.censored ? cap + 1 : rjt.value) == expect_jt);
    auto src3 = backward_source;
    const HitResult rp = hitting_time(src3, HitStat::P, cap);
    CHECK((rp.censored ? cap + 1 : rp.value) == expect_p);

    // I and KF against forward windows.
    const Word fwd = random_word(rng, 1, cap, mp.sym_probs);
    std::int64_t expect_i = cap + 1, expect_kf = cap + 1;
    for (std::int64_t i = 1; i <= cap; ++i) {
      Word win;
      win.start = 1;
      for (std::int64_t m = 1; m <= i; ++m) win.symbols.push_back(fwd.at(m));
      const ReducedWord r = reduce(win);
      if (expect_i > cap && !r.orders.empty()) expect_i = i;
      bool has_f = false;
      for (const Symbol s : r.orders) has_f |= (s == OF);
      if (expect_kf > cap && has_f) expect_kf = i;
    }
    std::int64_t pos = 1;
    const HitResult ri = hitting_time([&] { return fwd.at(pos++); }, HitStat::I, cap);
    CHECK((ri.censored ? cap + 1 : ri.value) == expect_i);
    pos = 1;
    const HitResult rkf = hitting_time([&] { return fwd.at(pos++); }, HitStat::KF, cap);
    CHECK((rkf.censored ? cap + 1 : rkf.value) == expect_kf);
  }
}

TEST_CASE("flexible orders keep arriving: matched o_f count at n = 1e5") {
  const ModelParams mp = params_from_p(1.0 / 3.0);
  const std::int64_t n = 100000;
  int rich = 0;
  const int samples = 1000;
  for (int r = 0; r < samples; ++r) {
    SymbolStream stream(mp, 404, static_cast<std::uint64_t>(r), 1, 1);
    ForwardScanner scan;
    for (std::int64_t i = 1; i <= n; ++i) scan.feed(stream(), i);
    if (scan.matched_f() >= 10) ++rich;
  }
  CHECK(rich >= samples * 99 / 100);
}
