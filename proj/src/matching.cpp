#include "fkb/matching.hpp"

#include <algorithm>
#include <string>

namespace fkb {

const char* direction_name(Direction d) {
  return d == Direction::Left ? "L" : "R";
}

UnresolvedFlexible::UnresolvedFlexible(std::int64_t idx)
    : std::runtime_error("unresolved flexible order at index " + std::to_string(idx)),
      index(idx) {}

MatchTable compute_matches(const Word& w) {
  MatchTable mt;
  mt.start = w.start;
  mt.phi.assign(w.symbols.size(), std::nullopt);
  BurgerStack stack;
  std::int64_t pos = w.start;
  for (const Symbol s : w.symbols) {
    if (is_burger(s)) {
      stack.push(s, pos);
    } else {
      const std::int64_t hit = stack.consume(s);
      if (hit != kNoBurger) {
        mt.phi[static_cast<std::size_t>(pos - w.start)] = hit;
        mt.phi[static_cast<std::size_t>(hit - w.start)] = pos;
      }
    }
    ++pos;
  }
  return mt;
}

MatchIndex phi_star(const Word& w, const MatchTable& mt, std::int64_t i) {
  if (!w.contains(i) || !is_order(w.at(i))) {
    throw std::invalid_argument("phi_star: i must be an order in the window");
  }
  const MatchIndex phi_i = mt.at(i);
  if (!phi_i) {
    throw std::invalid_argument("phi_star: i is unmatched in the window");
  }
  // Orders surviving in X(phi(i), i) are exactly those whose match
  // escapes the interval to the left; take the rightmost one.
  for (std::int64_t k = i - 1; k > *phi_i; --k) {
    if (!is_order(w.at(k))) continue;
    const MatchIndex m = mt.at(k);
    if (!m) return std::nullopt;  // match precedes the window
    if (*m < *phi_i) return m;
  }
  return phi_i;
}

Word resolve_Y(const Word& w, const MatchTable& mt) {
  Word y = w;
  for (std::int64_t i = w.start; i <= w.end(); ++i) {
    if (w.at(i) != Symbol::OrderF) continue;
    const MatchIndex m = mt.at(i);
    if (!m) throw UnresolvedFlexible(i);
    y.at(i) = (w.at(*m) == Symbol::BurgerH) ? Symbol::OrderH : Symbol::OrderC;
  }
  return y;
}

std::vector<FlexRecord> flex_records(const Word& w, const MatchTable& mt) {
  std::vector<FlexRecord> out;
  for (std::int64_t i = w.start; i <= w.end(); ++i) {
    if (w.at(i) != Symbol::OrderF || !mt.matched(i)) continue;
    FlexRecord rec;
    rec.i = i;
    rec.phi = *mt.at(i);
    rec.dir = (w.at(rec.phi) == Symbol::BurgerC) ? Direction::Left : Direction::Right;
    rec.phi_star = phi_star(w, mt, i);
    rec.degenerate = rec.phi_star.has_value() && *rec.phi_star == rec.phi;
    out.push_back(rec);
  }
  return out;
}

MatchIndex forward_match(const Word& w, std::int64_t i) {
  if (!w.contains(i + 1) || !is_burger(w.at(i + 1))) {
    throw std::invalid_argument("forward_match: i is not a pre-burger time");
  }
  ForwardScanner scan;
  for (std::int64_t j = i + 1; j <= w.end(); ++j) {
    scan.feed(w.at(j), j);
    if (scan.pending_orders() > 0) return j;
  }
  return std::nullopt;
}

std::vector<std::int64_t> ancestor_free(const Word& w, std::int64_t lo, std::int64_t hi) {
  if (w.start != 1) {
    throw std::invalid_argument("ancestor_free: window must start at index 1");
  }
  // Iterative characterization: restart the reduction after each time
  // an arriving order survives; those times are the ancestor-free ones.
  std::vector<std::int64_t> out;
  ForwardScanner scan;
  for (std::int64_t i = 1; i <= std::min(hi, w.end()); ++i) {
    scan.feed(w.at(i), i);
    if (scan.pending_orders() > 0) {
      if (i >= lo) out.push_back(i);
      scan.reset();
    }
  }
  return out;
}

}  // namespace fkb
