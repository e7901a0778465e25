#include "fkb/word.hpp"

#include <algorithm>
#include <cstring>

namespace fkb {

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::BurgerH: return "b_h";
    case Symbol::BurgerC: return "b_c";
    case Symbol::OrderH: return "o_h";
    case Symbol::OrderC: return "o_c";
    case Symbol::OrderF: return "o_f";
  }
  return "?";
}

std::int64_t BurgerStack::top_for(Symbol order) const {
  switch (order) {
    case Symbol::OrderH:
      return ham_.empty() ? kNoBurger : ham_.back();
    case Symbol::OrderC:
      return chz_.empty() ? kNoBurger : chz_.back();
    case Symbol::OrderF: {
      if (ham_.empty()) return chz_.empty() ? kNoBurger : chz_.back();
      if (chz_.empty()) return ham_.back();
      return std::max(ham_.back(), chz_.back());
    }
    default:
      return kNoBurger;
  }
}

std::int64_t BurgerStack::consume(Symbol order) {
  switch (order) {
    case Symbol::OrderH: {
      if (ham_.empty()) return kNoBurger;
      const std::int64_t pos = ham_.back();
      ham_.pop_back();
      return pos;
    }
    case Symbol::OrderC: {
      if (chz_.empty()) return kNoBurger;
      const std::int64_t pos = chz_.back();
      chz_.pop_back();
      return pos;
    }
    case Symbol::OrderF: {
      if (ham_.empty() && chz_.empty()) return kNoBurger;
      const bool pick_ham =
          !ham_.empty() && (chz_.empty() || ham_.back() > chz_.back());
      auto& stack = pick_ham ? ham_ : chz_;
      const std::int64_t pos = stack.back();
      stack.pop_back();
      return pos;
    }
    default:
      return kNoBurger;
  }
}

ReducedWord reduce(const Word& w) {
  BurgerStack stack;
  ReducedWord out;
  std::int64_t pos = w.start;
  for (const Symbol s : w.symbols) {
    if (is_burger(s)) {
      stack.push(s, pos);
    } else if (stack.consume(s) == kNoBurger) {
      out.orders.push_back(s);
    }
    ++pos;
  }
  // Merge the per-kind position stacks back into bottom-to-top order.
  const auto& ham = stack.ham_positions();
  const auto& chz = stack.chz_positions();
  std::size_t a = 0, b = 0;
  out.burgers.reserve(ham.size() + chz.size());
  while (a < ham.size() || b < chz.size()) {
    if (b == chz.size() || (a < ham.size() && ham[a] < chz[b])) {
      out.burgers.push_back(Symbol::BurgerH);
      ++a;
    } else {
      out.burgers.push_back(Symbol::BurgerC);
      ++b;
    }
  }
  return out;
}

ReducedWord reduce_concat(const ReducedWord& r1, const ReducedWord& r2) {
  Word tail;
  tail.start = 1;
  tail.symbols = r1.burgers;
  tail.symbols.insert(tail.symbols.end(), r2.orders.begin(), r2.orders.end());
  ReducedWord mid = reduce(tail);

  ReducedWord out;
  out.orders = r1.orders;
  out.orders.insert(out.orders.end(), mid.orders.begin(), mid.orders.end());
  out.burgers = std::move(mid.burgers);
  out.burgers.insert(out.burgers.end(), r2.burgers.begin(), r2.burgers.end());
  return out;
}

namespace {
template <class Seq>
CountVector tally(const Seq& symbols) {
  CountVector c;
  for (const Symbol s : symbols) {
    ++c.n[static_cast<std::size_t>(s)];
    ++c.total;
  }
  c.d = c.n[0] - c.n[2];
  c.d_star = c.n[1] - c.n[3];
  return c;
}
}  // namespace

CountVector counts(const Word& w) { return tally(w.symbols); }

CountVector counts(const ReducedWord& r) {
  CountVector c = tally(r.orders);
  const CountVector b = tally(r.burgers);
  for (std::size_t k = 0; k < 5; ++k) c.n[k] += b.n[k];
  c.d += b.d;
  c.d_star += b.d_star;
  c.total += b.total;
  return c;
}

Symbol sample_symbol(const ModelParams& params, std::uint64_t seed_r, std::int64_t index) {
  const SymbolThresholds t(params);
  const double u = static_cast<double>(draw_at(seed_r, index) >> 11) * 0x1.0p-53;
  return t.classify(u);
}

Word sample_word(const ModelParams& params, std::int64_t start, std::int64_t len,
                 std::uint64_t seed, std::uint64_t stream) {
  if (len < 0) throw std::domain_error("sample_word: negative length");
  const SymbolThresholds t(params);
  const std::uint64_t seed_r = replica_seed(seed, stream);
  Word w;
  w.start = start;
  w.symbols.resize(static_cast<std::size_t>(len));
  for (std::int64_t k = 0; k < len; ++k) {
    const double u =
        static_cast<double>(draw_at(seed_r, start + k) >> 11) * 0x1.0p-53;
    w.symbols[static_cast<std::size_t>(k)] = t.classify(u);
  }
  return w;
}

namespace {
constexpr char kMagic[4] = {'F', 'K', 'W', '1'};

void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64_le(const std::vector<std::uint8_t>& in, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[off + i]) << (8 * i);
  return v;
}
}  // namespace

std::vector<std::uint8_t> word_to_bytes(const Word& w) {
  std::vector<std::uint8_t> out;
  out.reserve(20 + w.symbols.size());
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u64_le(out, static_cast<std::uint64_t>(w.start));
  put_u64_le(out, static_cast<std::uint64_t>(w.symbols.size()));
  for (const Symbol s : w.symbols) out.push_back(static_cast<std::uint8_t>(s));
  return out;
}

Word word_from_bytes(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 20 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw WordParseError("FKW1: bad magic or truncated header");
  }
  Word w;
  w.start = static_cast<std::int64_t>(get_u64_le(bytes, 4));
  const std::uint64_t len = get_u64_le(bytes, 12);
  if (bytes.size() != 20 + len) {
    throw WordParseError("FKW1: payload length mismatch");
  }
  w.symbols.reserve(len);
  for (std::uint64_t k = 0; k < len; ++k) {
    const std::uint8_t b = bytes[20 + k];
    if (b > 4) throw WordParseError("FKW1: symbol byte out of range");
    w.symbols.push_back(static_cast<Symbol>(b));
  }
  return w;
}

}  // namespace fkb
