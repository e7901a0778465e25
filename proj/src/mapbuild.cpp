#include "fkb/mapbuild.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace fkb {

namespace {

// Union-find over int32 ids.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::int32_t find(std::int32_t x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void merge(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[b] = a;
  }

 private:
  mutable std::vector<std::int32_t> parent_;
};

}  // namespace

PlanarMapRecord build_map(const Word& w) {
  if (w.size() % 2 != 0 || !reduce(w).empty()) {
    throw NotBalanced("build_map: word does not reduce to the empty word");
  }
  PlanarMapRecord m;
  m.word_start = w.start;
  m.n_edges = w.size() / 2;
  m.primal_parent = {-1};
  m.dual_parent = {-1};
  if (m.n_edges == 0) {
    m.lambda = {{0, 0}};
    return m;
  }
  const std::int64_t two_n = w.size();
  const MatchTable mt = compute_matches(w);

  m.lambda.resize(static_cast<std::size_t>(two_n));
  m.quads.reserve(static_cast<std::size_t>(m.n_edges));
  m.quad_of_step.assign(static_cast<std::size_t>(two_n) + 1, -1);

  // Trace lambda: burgers descend to a fresh child, orders (resolved
  // through the match) climb back to the parent.
  std::int32_t cur_p = 0, cur_d = 0;
  m.lambda[0] = {0, 0};
  for (std::int64_t step = 1; step <= two_n; ++step) {
    const std::int64_t idx = m.index_of_step(step);
    const Symbol s = w.at(idx);
    bool ham;
    if (is_burger(s)) {
      ham = (s == Symbol::BurgerH);
      if (ham) {
        m.primal_parent.push_back(cur_p);
        cur_p = static_cast<std::int32_t>(m.primal_parent.size()) - 1;
      } else {
        m.dual_parent.push_back(cur_d);
        cur_d = static_cast<std::int32_t>(m.dual_parent.size()) - 1;
      }
    } else {
      const std::int64_t j = *mt.at(idx);  // matched: word is balanced
      ham = (w.at(j) == Symbol::BurgerH);
      if (ham) {
        cur_p = m.primal_parent[static_cast<std::size_t>(cur_p)];
      } else {
        cur_d = m.dual_parent[static_cast<std::size_t>(cur_d)];
      }
      PlanarMapRecord::Quad quad;
      quad.burger_step = m.step_of_index(j);
      quad.order_step = step;
      quad.is_ham = ham;
      quad.flexible = (s == Symbol::OrderF);
      quad.primal_in_s = (ham != quad.flexible);
      const std::int32_t qi = static_cast<std::int32_t>(m.quads.size());
      m.quads.push_back(quad);
      m.quad_of_step[static_cast<std::size_t>(quad.burger_step)] = qi;
      m.quad_of_step[static_cast<std::size_t>(step)] = qi;
    }
    if (step < two_n) m.lambda[static_cast<std::size_t>(step)] = {cur_p, cur_d};
  }
  if (cur_p != 0 || cur_d != 0) {
    throw NotBalanced("build_map: lambda does not close");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Cell complex geometry.
//
// Quad corners in cyclic order: c12 (between sides 1,2), c23, c34, c41.
// Hamburger quads have primal corners c23, c41; cheeseburger quads have
// primal corners c12, c34. The decorated diagonal always joins the two
// uncut corners: c23-c41 for ordinary quads, c12-c34 for flexible ones
// (the fictional-edge flip). Cells per quad:
//   0, 1 : the two strand-cut corner cells,
//   2, 3 : the middle halves either side of the decorated diagonal,
// with cell 2 touching sides (1,2) for ordinary quads and (2,3) for
// flexible ones, and strands separating cell pairs (0,2) and (1,3).

namespace {

// Q-edge id of side pos (1..4) of the quad.
std::int64_t side_edge(const PlanarMapRecord::Quad& q, int pos, std::int64_t two_n) {
  switch (pos) {
    case 1: return (q.burger_step - 1) % two_n;
    case 2: return q.burger_step % two_n;
    case 3: return (q.order_step - 1) % two_n;
    default: return q.order_step % two_n;
  }
}

// Corners adjacent to side pos, as corner ids 0=c12, 1=c23, 2=c34,
// 3=c41: side 1 runs c41..c12, side 2 runs c12..c23, and so on.
constexpr int side_corner_a(int pos) { return (pos + 2) % 4; }
constexpr int side_corner_b(int pos) { return (pos + 3) % 4; }

// Whether corner id is primal for the quad kind.
constexpr bool corner_is_primal(bool is_ham, int corner) {
  return is_ham ? (corner % 2 == 1) : (corner % 2 == 0);
}

constexpr bool corner_is_cut(bool flexible, int corner) {
  return flexible ? (corner % 2 == 1) : (corner % 2 == 0);
}

// Local cell id of the cell bordering side pos at the given corner.
int cell_of_side_corner(bool flexible, int pos, int corner) {
  if (corner_is_cut(flexible, corner)) {
    const int first_cut = flexible ? 1 : 0;  // c23 resp. c12
    return corner == first_cut ? 0 : 1;
  }
  if (!flexible) return (pos == 1 || pos == 2) ? 2 : 3;
  return (pos == 2 || pos == 3) ? 2 : 3;
}

// Strand partner of side pos: ordinary pairs (1,2),(3,4); flexible
// pairs (2,3),(4,1).
int strand_mate(bool flexible, int pos) {
  if (!flexible) {
    switch (pos) {
      case 1: return 2;
      case 2: return 1;
      case 3: return 4;
      default: return 3;
    }
  }
  switch (pos) {
    case 1: return 4;
    case 2: return 3;
    case 3: return 2;
    default: return 1;
  }
}

}  // namespace

struct MapLoopOracle::Flood {
  // Components of the sphere cut along the barrier diagonals: cells
  // glue across Q-edge arcs and strands, and across a quad's diagonal
  // unless it is a barrier.
  std::vector<std::int32_t> comp;

  template <class BarrierPred>
  Flood(const MapLoopOracle& o, BarrierPred barrier) {
    const std::size_t n_cells = o.map_.quads.size() * 4;
    UnionFind uf(n_cells);
    for (std::size_t q = 0; q < o.map_.quads.size(); ++q) {
      const std::int32_t base = static_cast<std::int32_t>(4 * q);
      uf.merge(base + 0, base + 2);
      uf.merge(base + 1, base + 3);
      if (!barrier(static_cast<std::int64_t>(q))) uf.merge(base + 2, base + 3);
    }
    for (std::int64_t e = 0; e < 2 * o.map_.n_edges; ++e) {
      const std::int32_t sa = o.edge_slot_a_[static_cast<std::size_t>(e)];
      const std::int32_t sb = o.edge_slot_b_[static_cast<std::size_t>(e)];
      const auto glue_end = [&](bool primal_end) {
        uf.merge(o.arc_cell(sa, primal_end), o.arc_cell(sb, primal_end));
      };
      glue_end(true);
      glue_end(false);
    }
    comp.resize(n_cells);
    for (std::size_t c = 0; c < n_cells; ++c) {
      comp[c] = uf.find(static_cast<std::int32_t>(c));
    }
  }

  std::int32_t of_edge(const MapLoopOracle& o, std::int64_t e) const {
    return comp[static_cast<std::size_t>(
        o.arc_cell(o.edge_slot_a_[static_cast<std::size_t>(e)], true))];
  }
};

std::int32_t MapLoopOracle::arc_cell(std::int32_t slot, bool primal_end) const {
  const std::int64_t q = slot / 4;
  const int pos = static_cast<int>(slot % 4) + 1;
  const auto& quad = map_.quads[static_cast<std::size_t>(q)];
  const int ca = side_corner_a(pos);
  const int cb = side_corner_b(pos);
  const int corner =
      (corner_is_primal(quad.is_ham, ca) == primal_end) ? ca : cb;
  return static_cast<std::int32_t>(4 * q) +
         static_cast<std::int32_t>(cell_of_side_corner(quad.flexible, pos, corner));
}

MapLoopOracle::MapLoopOracle(const PlanarMapRecord& m) : map_(m), n_(m.n_edges) {
  const std::int64_t two_n = 2 * n_;
  if (n_ == 0) {
    loop_count_ = 0;
    clusters_s_ = 1;
    clusters_dual_ = 1;
    return;
  }
  slot_edge_.assign(static_cast<std::size_t>(map_.quads.size() * 4), -1);
  edge_slot_a_.assign(static_cast<std::size_t>(two_n), -1);
  edge_slot_b_.assign(static_cast<std::size_t>(two_n), -1);
  for (std::size_t q = 0; q < map_.quads.size(); ++q) {
    for (int pos = 1; pos <= 4; ++pos) {
      const std::int64_t e = side_edge(map_.quads[q], pos, two_n);
      const std::int32_t slot = static_cast<std::int32_t>(4 * q) + pos - 1;
      slot_edge_[static_cast<std::size_t>(slot)] = static_cast<std::int32_t>(e);
      if (edge_slot_a_[static_cast<std::size_t>(e)] < 0) {
        edge_slot_a_[static_cast<std::size_t>(e)] = slot;
      } else {
        assert(edge_slot_b_[static_cast<std::size_t>(e)] < 0);
        edge_slot_b_[static_cast<std::size_t>(e)] = slot;
      }
    }
  }

  // Interface loops: walk the strand cycles, marking each Q-edge with
  // its loop; every edge is crossed by exactly one loop.
  loop_of_edge_.assign(static_cast<std::size_t>(two_n), -1);
  for (std::int64_t e0 = 0; e0 < two_n; ++e0) {
    if (loop_of_edge_[static_cast<std::size_t>(e0)] >= 0) continue;
    const std::int32_t loop = static_cast<std::int32_t>(loop_count_++);
    std::int64_t len = 0;
    const std::int32_t start = edge_slot_a_[static_cast<std::size_t>(e0)];
    std::int32_t s = start;
    do {
      const std::int64_t q = s / 4;
      const int pos = static_cast<int>(s % 4) + 1;
      const int mate = strand_mate(map_.quads[static_cast<std::size_t>(q)].flexible, pos);
      const std::int32_t s2 = static_cast<std::int32_t>(4 * q) + mate - 1;
      const std::int32_t e2 = slot_edge_[static_cast<std::size_t>(s2)];
      loop_of_edge_[static_cast<std::size_t>(e2)] = loop;
      ++len;
      const std::int32_t sa = edge_slot_a_[static_cast<std::size_t>(e2)];
      const std::int32_t sb = edge_slot_b_[static_cast<std::size_t>(e2)];
      s = (s2 == sa) ? sb : sa;
    } while (s != start);
    loop_lengths_.push_back(len);
  }

  // Cluster regions: cells glued across arcs and the diagonal, blocked
  // at strands.
  {
    UnionFind uf(map_.quads.size() * 4);
    for (std::size_t q = 0; q < map_.quads.size(); ++q) {
      const std::int32_t base = static_cast<std::int32_t>(4 * q);
      uf.merge(base + 2, base + 3);
    }
    for (std::int64_t e = 0; e < two_n; ++e) {
      const std::int32_t sa = edge_slot_a_[static_cast<std::size_t>(e)];
      const std::int32_t sb = edge_slot_b_[static_cast<std::size_t>(e)];
      uf.merge(arc_cell(sa, true), arc_cell(sb, true));
      uf.merge(arc_cell(sa, false), arc_cell(sb, false));
    }
    region_of_cell_.resize(map_.quads.size() * 4);
    for (std::size_t c = 0; c < region_of_cell_.size(); ++c) {
      region_of_cell_[c] = uf.find(static_cast<std::int32_t>(c));
    }
  }

  // Clusters of S and S*, isolated vertices included.
  {
    UnionFind ufp(map_.primal_parent.size());
    UnionFind ufd(map_.dual_parent.size());
    for (const auto& quad : map_.quads) {
      const std::size_t before_b = static_cast<std::size_t>(quad.burger_step - 1) %
                                   static_cast<std::size_t>(two_n);
      const std::size_t before_o = static_cast<std::size_t>(quad.order_step - 1);
      if (quad.primal_in_s) {
        ufp.merge(map_.lambda[before_b].first, map_.lambda[before_o].first);
      } else {
        ufd.merge(map_.lambda[before_b].second, map_.lambda[before_o].second);
      }
    }
    std::vector<std::int32_t> roots;
    for (std::size_t v = 0; v < map_.primal_parent.size(); ++v) {
      roots.push_back(ufp.find(static_cast<std::int32_t>(v)));
    }
    std::sort(roots.begin(), roots.end());
    clusters_s_ = std::unique(roots.begin(), roots.end()) - roots.begin();
    roots.clear();
    for (std::size_t v = 0; v < map_.dual_parent.size(); ++v) {
      roots.push_back(ufd.find(static_cast<std::int32_t>(v)));
    }
    std::sort(roots.begin(), roots.end());
    clusters_dual_ = std::unique(roots.begin(), roots.end()) - roots.begin();
  }
}

std::int64_t MapLoopOracle::loop_length_through(std::int64_t quad, int side) const {
  const std::int64_t e = side_edge(map_.quads[static_cast<std::size_t>(quad)], side, 2 * n_);
  return loop_lengths_[static_cast<std::size_t>(loop_of_edge_[static_cast<std::size_t>(e)])];
}

std::int64_t MapLoopOracle::flex_quad_of_index(std::int64_t of_index) const {
  const std::int64_t step = map_.step_of_index(of_index);
  if (step < 1 || step > 2 * n_) {
    throw std::invalid_argument("MapLoopOracle: index outside the word");
  }
  const std::int32_t q = map_.quad_of_step[static_cast<std::size_t>(step)];
  if (q < 0 || map_.quads[static_cast<std::size_t>(q)].order_step != step ||
      !map_.quads[static_cast<std::size_t>(q)].flexible) {
    throw std::invalid_argument("MapLoopOracle: index is not a flexible order time");
  }
  return q;
}

// The side pairs touched by the two middle halves of a quad: cell 2
// first, cell 3 second.
namespace {
constexpr std::array<std::array<int, 2>, 2> half_sides(bool flexible) {
  return flexible ? std::array<std::array<int, 2>, 2>{{{2, 3}, {4, 1}}}
                  : std::array<std::array<int, 2>, 2>{{{1, 2}, {3, 4}}};
}
}  // namespace

// Boundary of an edge region: decorated diagonals whose quad has
// exactly one middle half with both incident Q-edges in the region.
std::vector<std::int64_t> MapLoopOracle::region_boundary(
    const std::vector<std::uint8_t>& in_region) const {
  std::vector<std::int64_t> boundary;
  const std::int64_t two_n = 2 * n_;
  for (std::size_t r = 0; r < map_.quads.size(); ++r) {
    const auto& quad = map_.quads[r];
    const auto halves = half_sides(quad.flexible);
    bool in[2];
    for (int h = 0; h < 2; ++h) {
      in[h] = in_region[static_cast<std::size_t>(side_edge(quad, halves[h][0], two_n))] &&
              in_region[static_cast<std::size_t>(side_edge(quad, halves[h][1], two_n))];
    }
    if (in[0] != in[1]) boundary.push_back(static_cast<std::int64_t>(r));
  }
  return boundary;
}

// Flood check: the boundary must cut the sphere so that the component
// away from `outside_cell` is exactly the region.
void MapLoopOracle::verify_cut(const std::vector<std::uint8_t>& in_region,
                               const std::vector<std::int64_t>& boundary,
                               std::int32_t outside_cell) const {
  std::vector<std::uint8_t> barrier(map_.quads.size(), 0);
  for (const std::int64_t q : boundary) barrier[static_cast<std::size_t>(q)] = 1;
  const Flood cut(*this, [&](std::int64_t r) { return barrier[static_cast<std::size_t>(r)] != 0; });
  const std::int32_t out = cut.comp[static_cast<std::size_t>(outside_cell)];
  for (std::int64_t e = 0; e < 2 * n_; ++e) {
    const bool inside = cut.of_edge(*this, e) != out;
    if (inside != (in_region[static_cast<std::size_t>(e)] != 0)) {
      throw std::logic_error("MapLoopOracle: boundary does not cut the region");
    }
  }
}

MapLoopOracle::Bubble MapLoopOracle::bubble_of_quad(std::int64_t qf) const {
  const auto& quad = map_.quads[static_cast<std::size_t>(qf)];
  Bubble bubble;
  bubble.inside_edges.assign(static_cast<std::size_t>(2 * n_), 0);
  // The bubble is the lambda-interval from the burger crossing to just
  // before the order crossing; its boundary cycle and the cut property
  // are computed from the complex.
  for (std::int64_t k = quad.burger_step; k < quad.order_step; ++k) {
    bubble.inside_edges[static_cast<std::size_t>(k % (2 * n_))] = 1;
    ++bubble.area;
  }
  bubble.cycle_quads = region_boundary(bubble.inside_edges);
  bubble.boundary_len = static_cast<std::int64_t>(bubble.cycle_quads.size());
  const bool side = quad.primal_in_s;
  for (const std::int64_t r : bubble.cycle_quads) {
    if (map_.quads[static_cast<std::size_t>(r)].primal_in_s != side) {
      throw std::logic_error("MapLoopOracle: bubble boundary mixes S and S*");
    }
  }
  verify_cut(bubble.inside_edges, bubble.cycle_quads,
             static_cast<std::int32_t>(4 * qf + 3));
  return bubble;
}

MapLoopOracle::Bubble MapLoopOracle::bubble(std::int64_t of_index) const {
  return bubble_of_quad(flex_quad_of_index(of_index));
}

MapLoopOracle::RegionStats MapLoopOracle::loop_region(
    std::int64_t theta_index, const std::vector<std::int64_t>& excursion_indices) const {
  const std::int64_t qf = flex_quad_of_index(theta_index);
  const auto& quad = map_.quads[static_cast<std::size_t>(qf)];
  // Region: the theta bubble minus the excursion bubbles.
  std::vector<std::uint8_t> in_region(static_cast<std::size_t>(2 * n_), 0);
  for (std::int64_t k = quad.burger_step; k < quad.order_step; ++k) {
    in_region[static_cast<std::size_t>(k % (2 * n_))] = 1;
  }
  for (const std::int64_t idx : excursion_indices) {
    const auto& exc = map_.quads[static_cast<std::size_t>(flex_quad_of_index(idx))];
    for (std::int64_t k = exc.burger_step; k < exc.order_step; ++k) {
      in_region[static_cast<std::size_t>(k % (2 * n_))] = 0;
    }
  }
  RegionStats stats;
  const auto boundary = region_boundary(in_region);
  stats.boundary_len = static_cast<std::int64_t>(boundary.size());
  verify_cut(in_region, boundary, static_cast<std::int32_t>(4 * qf + 3));
  for (const std::uint8_t flag : in_region) stats.area += flag;
  return stats;
}

bool MapLoopOracle::cycles_touch(std::int64_t of_index_a, std::int64_t of_index_b) const {
  const Bubble ba = bubble(of_index_a);
  const Bubble bb = bubble(of_index_b);
  std::vector<std::uint8_t> in_a(map_.quads.size(), 0);
  for (const std::int64_t q : ba.cycle_quads) in_a[static_cast<std::size_t>(q)] = 1;
  for (const std::int64_t q : bb.cycle_quads) {
    if (in_a[static_cast<std::size_t>(q)]) return true;
  }
  return false;
}

std::string map_to_json(const PlanarMapRecord& m) {
  nlohmann::json j;
  j["n_edges"] = m.n_edges;
  j["word_start"] = m.word_start;
  j["primal_parents"] = m.primal_parent;
  j["dual_parents"] = m.dual_parent;
  nlohmann::json lam = nlohmann::json::array();
  for (const auto& [p, d] : m.lambda) lam.push_back({p, d});
  j["lambda"] = lam;
  nlohmann::json quads = nlohmann::json::array();
  for (const auto& q : m.quads) {
    quads.push_back({{"burger_index", m.index_of_step(q.burger_step)},
                     {"order_index", m.index_of_step(q.order_step)},
                     {"kind", q.is_ham ? "h" : "c"},
                     {"flexible", q.flexible},
                     {"primal_in_s", q.primal_in_s}});
  }
  j["quads"] = quads;
  // Half-edge permutation of Q: the two (quad, side) slots of each edge.
  nlohmann::json slots = nlohmann::json::array();
  const std::int64_t two_n = 2 * m.n_edges;
  for (std::int64_t e = 0; e < two_n; ++e) {
    nlohmann::json occ = nlohmann::json::array();
    for (std::size_t q = 0; q < m.quads.size(); ++q) {
      for (int pos = 1; pos <= 4; ++pos) {
        if (side_edge(m.quads[q], pos, two_n) == e) occ.push_back({q, pos});
      }
    }
    slots.push_back(occ);
  }
  j["edge_slots"] = slots;
  return j.dump();
}

WeightCheckReport weight_check(int n, std::int64_t p_num, std::int64_t p_den) {
  if (n < 1 || n > 4) {
    throw std::domain_error("weight_check: n must be in [1, 4]");
  }
  if (!(p_num > 0 && 2 * p_num < p_den)) {
    throw std::domain_error("weight_check: p must be a rational in (0, 1/2)");
  }
  // Per-symbol probability numerators on the common denominator 4*p_den:
  // burgers p_den, definite orders p_den - p_num, o_f 2*p_num. The word
  // weight w = p_den^n (p_den-p_num)^{n-f} (2 p_num)^f must satisfy
  // w ~ q^{K(S)/2} with sqrt(q) = 2 p_num / (p_den - p_num), i.e.
  // w * ((p_den-p_num)/(2 p_num))^{K} is the same for every word.
  const std::int64_t len = 2 * n;
  const __int128 bb = p_den - p_num;
  const __int128 ff = 2 * p_num;

  WeightCheckReport report;
  __int128 ref_num = 0, ref_den = 0;
  std::vector<std::int64_t> k_values;

  Word w;
  w.start = 1;
  w.symbols.assign(static_cast<std::size_t>(len), Symbol::BurgerH);
  std::vector<int> digits(static_cast<std::size_t>(len), 0);
  for (;;) {
    if (reduce(w).empty()) {
      ++report.balanced_words;
      std::int64_t f = 0;
      for (const Symbol s : w.symbols) f += (s == Symbol::OrderF);
      const PlanarMapRecord m = build_map(w);
      const MapLoopOracle oracle(m);
      const std::int64_t k = oracle.k_of_s();
      if (oracle.loop_count() != k) report.loops_equal_k = false;
      if (oracle.loop_count() != f + 1) report.loops_equal_flex_plus_one = false;
      k_values.push_back(k);

      __int128 weight = 1;
      for (std::int64_t b = 0; b < n; ++b) weight *= p_den;
      for (std::int64_t o = 0; o < n - f; ++o) weight *= bb;
      for (std::int64_t o = 0; o < f; ++o) weight *= ff;
      __int128 num = weight, den = 1;
      for (std::int64_t b = 0; b < k; ++b) {
        num *= bb;
        den *= ff;
      }
      if (ref_den == 0) {
        ref_num = num;
        ref_den = den;
      } else if (num * ref_den != ref_num * den) {
        const double r = static_cast<double>(num) / static_cast<double>(den);
        const double r0 = static_cast<double>(ref_num) / static_cast<double>(ref_den);
        report.max_relative_deviation =
            std::max(report.max_relative_deviation, std::abs(r / r0 - 1.0));
      }
    }
    // Next word in base-5 odometer order.
    std::size_t pos = 0;
    while (pos < digits.size() && digits[pos] == 4) {
      digits[pos] = 0;
      w.symbols[pos] = Symbol::BurgerH;
      ++pos;
    }
    if (pos == digits.size()) break;
    ++digits[pos];
    w.symbols[pos] = static_cast<Symbol>(digits[pos]);
  }
  std::sort(k_values.begin(), k_values.end());
  report.classes = std::unique(k_values.begin(), k_values.end()) - k_values.begin();
  return report;
}

}  // namespace fkb
