#include "fkb/loops.hpp"

#include <algorithm>
#include <string>

#include "fkb/walk.hpp"

namespace fkb {

CensoredPhiStar::CensoredPhiStar(std::int64_t idx)
    : std::runtime_error("phi_star outside window for o_f at index " + std::to_string(idx)),
      index(idx) {}

RootLoopSequence nested_f_intervals(const Word& w, const MatchTable& mt,
                                    std::int64_t origin) {
  if (!w.contains(origin)) {
    throw std::invalid_argument("nested_f_intervals: origin outside window");
  }
  // Matched o_f intervals containing the origin form a chain; collect
  // innermost first (increasing i).
  struct Interval {
    std::int64_t i, phi;
    Direction dir;
  };
  std::vector<Interval> chain;
  for (std::int64_t i = origin; i <= w.end(); ++i) {
    if (w.at(i) != Symbol::OrderF || !mt.matched(i)) continue;
    const std::int64_t phi = *mt.at(i);
    if (phi > origin) continue;
    chain.push_back({i, phi,
                     w.at(phi) == Symbol::BurgerC ? Direction::Left : Direction::Right});
  }

  // Group into maximal runs of equal direction.
  struct Run {
    Direction dir;
    std::size_t first, last;  // chain positions, innermost to outermost
  };
  std::vector<Run> runs;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (runs.empty() || runs.back().dir != chain[k].dir) {
      runs.push_back({chain[k].dir, k, k});
    } else {
      runs.back().last = k;
    }
  }

  RootLoopSequence out;
  if (runs.empty()) return out;
  const int j0 = (runs.front().dir == Direction::Left) ? 1 : 2;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    RootLoopEntry entry;
    entry.j = j0 + static_cast<int>(r);
    entry.dir = runs[r].dir;
    entry.iota = chain[runs[r].last].i;
    if (r + 1 < runs.size()) {
      entry.theta = chain[runs[r + 1].first].i;
      entry.theta_tilde = chain[runs[r + 1].first].phi;
    } else {
      entry.truncated = true;
    }
    out.push_back(entry);
  }
  return out;
}

LoopComponents classify_components(const Word& w, const MatchTable& mt,
                                   const RootLoopEntry& entry) {
  if (entry.truncated) {
    throw std::invalid_argument("classify_components: entry is truncated");
  }
  LoopComponents out;
  const Direction opposite =
      entry.dir == Direction::Left ? Direction::Right : Direction::Left;
  const auto maximal =
      maximal_f_times(w, mt, entry.theta_tilde + 1, entry.theta - 1);
  for (const ConeRecord& rec : maximal) {
    if (rec.dir == opposite) {
      if (!rec.phi_star) throw CensoredPhiStar(rec.i);
      if (*rec.phi_star < entry.theta_tilde) {
        out.excursions.push_back(rec);
        continue;
      }
    }
    out.components.push_back(rec);
  }

  // U_j: orders of the loop's opposite kind in [theta_tilde, theta]
  // whose match lies left of theta_tilde and which sit outside every
  // excursion interval.
  const Symbol kind =
      entry.dir == Direction::Left ? Symbol::OrderC : Symbol::OrderH;
  std::size_t exc = 0;
  for (std::int64_t i = entry.theta_tilde; i <= entry.theta; ++i) {
    if (w.at(i) != kind) continue;
    const MatchIndex m = mt.at(i);
    if (m && *m >= entry.theta_tilde) continue;
    while (exc < out.excursions.size() && out.excursions[exc].i < i) ++exc;
    if (exc < out.excursions.size() && out.excursions[exc].phi <= i) continue;
    ++out.u_count;
  }
  return out;
}

std::int64_t reduced_interval_len(const Word& w, const MatchTable& mt,
                                  std::int64_t a, std::int64_t b) {
  std::int64_t len = 0;
  for (std::int64_t k = a + 1; k < b; ++k) {
    if (!is_order(w.at(k))) continue;
    const MatchIndex m = mt.at(k);
    if (!m || *m < a) ++len;
  }
  return len;
}

LoopStats loop_stats(const Word& w, const MatchTable& mt, const RootLoopEntry& entry,
                     const LoopComponents& comps) {
  LoopStats out;
  std::int64_t excursion_area = 0;
  std::int64_t excursion_len_sum = 0;
  for (const ConeRecord& rec : comps.excursions) {
    excursion_area += rec.i - rec.phi;
    excursion_len_sum += reduced_interval_len(w, mt, rec.phi, rec.i) + 1;
  }
  std::int64_t opposite_component_area = 0;
  for (const ConeRecord& rec : comps.components) {
    const std::int64_t area = rec.i - rec.phi;
    out.component_areas.push_back(area);
    out.component_boundary_lens.push_back(reduced_interval_len(w, mt, rec.phi, rec.i) + 1);
    if (rec.dir != entry.dir) opposite_component_area += area;
  }
  out.full_area = entry.theta - entry.theta_tilde - excursion_area;
  out.interior_area = out.full_area - opposite_component_area;
  out.outer_boundary_len = -reduced_interval_len(w, mt, entry.theta_tilde, entry.theta) +
                           excursion_len_sum + 2 * comps.u_count + 1;
  return out;
}

bool nesting_touch(const Word& w, const MatchTable& mt, std::int64_t i,
                   std::int64_t i_prime) {
  const auto check = [&](std::int64_t k) {
    if (!w.contains(k) || w.at(k) != Symbol::OrderF || !mt.matched(k)) {
      throw std::invalid_argument("nesting_touch: arguments must be matched o_f times");
    }
  };
  check(i);
  check(i_prime);
  const std::int64_t phi_i = *mt.at(i);
  const std::int64_t phi_ip = *mt.at(i_prime);
  if (w.at(phi_i) != w.at(phi_ip) || !(phi_ip < phi_i && i < i_prime)) {
    throw std::invalid_argument(
        "nesting_touch: intervals must be nested and same-direction");
  }
  const MatchIndex ps = phi_star(w, mt, i);
  if (!ps) throw CensoredPhiStar(i);
  return *ps <= phi_ip;
}

}  // namespace fkb
