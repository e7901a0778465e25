#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fkb/word.hpp"

namespace fkb {

// OutsideWindow is represented as std::nullopt everywhere: a match that
// falls outside the analysed window is never reported as an index.
using MatchIndex = std::optional<std::int64_t>;

struct MatchTable {
  std::int64_t start = 1;
  std::vector<MatchIndex> phi;

  std::int64_t size() const { return static_cast<std::int64_t>(phi.size()); }
  std::int64_t end() const { return start + size() - 1; }
  MatchIndex at(std::int64_t i) const {
    return phi[static_cast<std::size_t>(i - start)];
  }
  bool matched(std::int64_t i) const { return at(i).has_value(); }
};

enum class Direction : std::uint8_t { Left, Right };

const char* direction_name(Direction d);

// Record of one matched flexible order. dir is Left when the matched
// burger is a cheeseburger, Right for a hamburger; degenerate marks
// |X(phi(i), i)| = 0 where the paper leaves the direction undetermined.
struct FlexRecord {
  std::int64_t i = 0;
  std::int64_t phi = 0;
  MatchIndex phi_star;
  Direction dir = Direction::Left;
  bool degenerate = false;
};

// walk/loops reuse the same record shape for cone assertions.
using ConeRecord = FlexRecord;

class UnresolvedFlexible : public std::runtime_error {
 public:
  explicit UnresolvedFlexible(std::int64_t index);
  std::int64_t index;
};

// phi(i) for every index of the window; runs in O(n) alongside the
// stack reduction. Burgers left on the stack and orders whose match
// precedes the window get OutsideWindow.
MatchTable compute_matches(const Word& w);

// Match of the rightmost order in X(phi(i), i); phi(i) itself if that
// reduced word contains no orders; OutsideWindow when the rightmost
// order's match precedes the window. Errors if i is not a matched
// order. Cost is linear in i - phi(i) in the worst case.
MatchIndex phi_star(const Word& w, const MatchTable& mt, std::int64_t i);

// Rewrites each o_f to the definite order of its matched burger's kind.
Word resolve_Y(const Word& w, const MatchTable& mt);

// One record per matched o_f, sorted by i.
std::vector<FlexRecord> flex_records(const Word& w, const MatchTable& mt);

// Smallest j >= i+1 such that X(i+1, j) contains an order, for a
// pre-burger time i (X_{i+1} a burger). OutsideWindow if none in range.
MatchIndex forward_match(const Word& w, std::int64_t i);

// All ancestor-free times in [lo, hi]: indices i such that X(k, i)
// contains an order for every k in [1, i]. Requires w.start == 1.
std::vector<std::int64_t> ancestor_free(const Word& w, std::int64_t lo, std::int64_t hi);

// ---------------------------------------------------------------------------
// Hitting-time statistics with early termination.

enum class HitStat { J, Jtilde, I, KF, P };

struct HitResult {
  std::int64_t value = 0;
  bool censored = false;
};

// State of the reduction of X(1, i) as symbols arrive left to right.
class ForwardScanner {
 public:
  // Returns the position of the consumed burger, or kNoBurger if the
  // symbol was a burger (pushed) or an order that pended.
  std::int64_t feed(Symbol s, std::int64_t pos) {
    if (is_burger(s)) {
      stack_.push(s, pos);
      return kNoBurger;
    }
    const std::int64_t hit = stack_.consume(s);
    if (hit == kNoBurger) {
      ++pending_orders_;
      if (s == Symbol::OrderF) ++pending_f_;
    } else if (s == Symbol::OrderF) {
      ++matched_f_;
    }
    return hit;
  }

  void reset() { *this = ForwardScanner(); }

  std::int64_t burger_count() const { return stack_.burger_count(); }
  std::int64_t ham_count() const {
    return static_cast<std::int64_t>(stack_.ham_positions().size());
  }
  std::int64_t chz_count() const {
    return static_cast<std::int64_t>(stack_.chz_positions().size());
  }
  std::int64_t pending_orders() const { return pending_orders_; }
  std::int64_t pending_f() const { return pending_f_; }
  std::int64_t matched_f() const { return matched_f_; }

 private:
  BurgerStack stack_;
  std::int64_t pending_orders_ = 0;
  std::int64_t pending_f_ = 0;
  std::int64_t matched_f_ = 0;
};

// State of the reduction of X(-j, -1) as symbols are prepended, i.e.
// the stream supplies X_{-1}, X_{-2}, ... in that order. A prepended
// order always pends (burgers lie to its right); a prepended burger is
// consumed by the leftmost compatible pending order, if any, and
// otherwise survives forever at the bottom of the stack.
class BackwardScanner {
 public:
  void feed(Symbol s) {
    if (is_order(s)) {
      const std::uint32_t id = static_cast<std::uint32_t>(kind_.size());
      kind_.push_back(s);
      alive_.push_back(1);
      if (s != Symbol::OrderC) ham_compat_.push_back(id);
      if (s != Symbol::OrderH) chz_compat_.push_back(id);
      ++pending_orders_;
      if (s == Symbol::OrderF) ++pending_f_;
      if (s == Symbol::OrderH) ++pending_oh_;
      if (s == Symbol::OrderC) ++pending_oc_;
      return;
    }
    auto& compat = (s == Symbol::BurgerH) ? ham_compat_ : chz_compat_;
    while (!compat.empty() && !alive_[compat.back()]) compat.pop_back();
    if (compat.empty()) {
      ++surviving_burgers_;
      return;
    }
    const std::uint32_t id = compat.back();
    compat.pop_back();
    alive_[id] = 0;
    --pending_orders_;
    if (kind_[id] == Symbol::OrderF) --pending_f_;
    if (kind_[id] == Symbol::OrderH) --pending_oh_;
    if (kind_[id] == Symbol::OrderC) --pending_oc_;
  }

  std::int64_t surviving_burgers() const { return surviving_burgers_; }
  std::int64_t pending_orders() const { return pending_orders_; }
  std::int64_t pending_f() const { return pending_f_; }
  std::int64_t pending_oh() const { return pending_oh_; }
  std::int64_t pending_oc() const { return pending_oc_; }

 private:
  std::vector<Symbol> kind_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> ham_compat_;  // most recently prepended last
  std::vector<std::uint32_t> chz_compat_;
  std::int64_t surviving_burgers_ = 0;
  std::int64_t pending_orders_ = 0;
  std::int64_t pending_f_ = 0;
  std::int64_t pending_oh_ = 0;
  std::int64_t pending_oc_ = 0;
};

// Hitting times of the reduced word, consumed lazily:
//   J:  smallest j with a burger in X(-j, -1)          (backward stream)
//   J~: smallest j with no o_f in X(-j, -1)            (backward stream)
//   P:  smallest j with no orders in X(-j, -1)         (backward stream)
//   I:  smallest i with an order in X(1, i)            (forward stream)
//   KF: smallest i with a flexible order in X(1, i)    (forward stream)
// Backward statistics expect the source to yield X_{-1}, X_{-2}, ...
template <class SymbolSource>
HitResult hitting_time(SymbolSource&& source, HitStat stat, std::int64_t cap) {
  if (cap < 1) throw std::domain_error("hitting_time: cap must be >= 1");
  switch (stat) {
    case HitStat::J:
    case HitStat::Jtilde:
    case HitStat::P: {
      BackwardScanner scan;
      for (std::int64_t j = 1; j <= cap; ++j) {
        scan.feed(source());
        const bool hit = (stat == HitStat::J)        ? scan.surviving_burgers() > 0
                         : (stat == HitStat::Jtilde) ? scan.pending_f() == 0
                                                     : scan.pending_orders() == 0;
        if (hit) return {j, false};
      }
      return {cap, true};
    }
    case HitStat::I:
    case HitStat::KF: {
      ForwardScanner scan;
      for (std::int64_t i = 1; i <= cap; ++i) {
        scan.feed(source(), i);
        const bool hit = (stat == HitStat::I) ? scan.pending_orders() > 0
                                              : scan.pending_f() > 0;
        if (hit) return {i, false};
      }
      return {cap, true};
    }
  }
  throw std::logic_error("hitting_time: unknown stat");
}

}  // namespace fkb
