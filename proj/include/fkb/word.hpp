#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkb/params.hpp"
#include "fkb/rng.hpp"

namespace fkb {

// The five-letter alphabet. Numeric values are the FKW1 wire encoding.
enum class Symbol : std::uint8_t {
  BurgerH = 0,
  BurgerC = 1,
  OrderH = 2,
  OrderC = 3,
  OrderF = 4,
};

constexpr bool is_burger(Symbol s) { return static_cast<std::uint8_t>(s) < 2; }
constexpr bool is_order(Symbol s) { return static_cast<std::uint8_t>(s) >= 2; }

const char* symbol_name(Symbol s);

// A finite window X_start .. X_{start+len-1} of the bi-infinite word.
// Index arithmetic is closed-interval throughout.
struct Word {
  std::int64_t start = 1;
  std::vector<Symbol> symbols;

  std::int64_t size() const { return static_cast<std::int64_t>(symbols.size()); }
  std::int64_t end() const { return start + size() - 1; }  // inclusive; start-1 when empty
  bool contains(std::int64_t i) const { return i >= start && i <= end(); }
  Symbol at(std::int64_t i) const { return symbols[static_cast<std::size_t>(i - start)]; }
  Symbol& at(std::int64_t i) { return symbols[static_cast<std::size_t>(i - start)]; }
};

// Canonical form: unmatched orders in original order, then the burger
// stack bottom-to-top (back() is the freshest burger).
struct ReducedWord {
  std::vector<Symbol> orders;
  std::vector<Symbol> burgers;

  std::int64_t size() const {
    return static_cast<std::int64_t>(orders.size() + burgers.size());
  }
  bool empty() const { return orders.empty() && burgers.empty(); }
  bool operator==(const ReducedWord&) const = default;
};

struct CountVector {
  std::array<std::int64_t, 5> n{};  // per symbol kind
  std::int64_t d = 0;               // N_{b_h} - N_{o_h}
  std::int64_t d_star = 0;          // N_{b_c} - N_{o_c}
  std::int64_t total = 0;
};

// Sentinel for "no eligible burger"; word indices may be any other
// int64, including negatives.
inline constexpr std::int64_t kNoBurger = INT64_MIN;

// Burger stack with the commutation rule built in: an order of kind h
// removes the topmost hamburger regardless of cheeseburgers stacked
// above it, and symmetrically. Two per-kind position stacks make every
// operation O(1); "topmost burger overall" compares the two tops.
class BurgerStack {
 public:
  void push(Symbol burger, std::int64_t pos) {
    (burger == Symbol::BurgerH ? ham_ : chz_).push_back(pos);
  }

  // Position of the burger an order would consume, or kNoBurger if none
  // is eligible. `consume` additionally removes it.
  std::int64_t top_for(Symbol order) const;
  std::int64_t consume(Symbol order);

  bool empty() const { return ham_.empty() && chz_.empty(); }
  std::int64_t burger_count() const {
    return static_cast<std::int64_t>(ham_.size() + chz_.size());
  }
  const std::vector<std::int64_t>& ham_positions() const { return ham_; }
  const std::vector<std::int64_t>& chz_positions() const { return chz_; }

 private:
  std::vector<std::int64_t> ham_;
  std::vector<std::int64_t> chz_;
};

ReducedWord reduce(const Word& w);

// Semigroup product: equals reduce of the concatenation r1 . r2.
ReducedWord reduce_concat(const ReducedWord& r1, const ReducedWord& r2);

CountVector counts(const Word& w);
CountVector counts(const ReducedWord& r);

// IID sampling with the symbol probabilities of `params`. The symbol at
// absolute index i is a pure function of (seed, stream, i), so any two
// windows of the same (seed, stream) agree where they overlap.
Symbol sample_symbol(const ModelParams& params, std::uint64_t seed_r, std::int64_t index);
Word sample_word(const ModelParams& params, std::int64_t start, std::int64_t len,
                 std::uint64_t seed, std::uint64_t stream);

// Cumulative thresholds for classifying a uniform [0,1) draw.
struct SymbolThresholds {
  double c0, c1, c2, c3;
  explicit SymbolThresholds(const ModelParams& params)
      : c0(params.sym_probs[0]),
        c1(c0 + params.sym_probs[1]),
        c2(c1 + params.sym_probs[2]),
        c3(c2 + params.sym_probs[3]) {}
  Symbol classify(double u) const {
    if (u < c0) return Symbol::BurgerH;
    if (u < c1) return Symbol::BurgerC;
    if (u < c2) return Symbol::OrderH;
    if (u < c3) return Symbol::OrderC;
    return Symbol::OrderF;
  }
};

// Lazy symbol source walking the replica stream from `first` in steps
// of +1 (forward) or -1 (backward).
class SymbolStream {
 public:
  SymbolStream(const ModelParams& params, std::uint64_t seed, std::uint64_t stream,
               std::int64_t first, int step)
      : thresholds_(params), seed_r_(replica_seed(seed, stream)), next_(first), step_(step) {}

  Symbol operator()() {
    const double u = static_cast<double>(draw_at(seed_r_, next_) >> 11) * 0x1.0p-53;
    next_ += step_;
    return thresholds_.classify(u);
  }

 private:
  SymbolThresholds thresholds_;
  std::uint64_t seed_r_;
  std::int64_t next_;
  int step_;
};

// FKW1 container: "FKW1" | start (int64 LE) | length (uint64 LE) | one
// byte per symbol, values 0..4.
std::vector<std::uint8_t> word_to_bytes(const Word& w);
Word word_from_bytes(const std::vector<std::uint8_t>& bytes);

class WordParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fkb
