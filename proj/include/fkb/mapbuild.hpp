#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fkb/matching.hpp"
#include "fkb/word.hpp"

namespace fkb {

class NotBalanced : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The finite bijection word -> (map M, root edge, edge set S), stored
// as the quadrangulation Q in polygon-complex form. Steps m = 1..2n
// correspond to word indices start+m-1; lambda(k) for k = 0..2n-1 is
// the Q-edge traced between steps k and k+1 (lambda(2n) = lambda(0)).
// Each match pair is one quad of Q, one edge of M (its primal
// diagonal), and one edge of M* (its dual diagonal); exactly one of the
// two diagonals is decorated: the primal one lies in S iff the burger
// kind is hamburger XOR the order was flexible, otherwise the dual one
// lies in S*.
struct PlanarMapRecord {
  struct Quad {
    std::int64_t burger_step = 0;  // j in 1..2n
    std::int64_t order_step = 0;   // i in 1..2n
    bool is_ham = false;           // burger kind in the Y-word
    bool flexible = false;         // original order was o_f
    bool primal_in_s = false;      // which diagonal is decorated
  };

  std::int64_t word_start = 1;
  std::int64_t n_edges = 0;                        // n = |w|/2
  std::vector<std::int32_t> primal_parent;         // tree T, root 0 has parent -1
  std::vector<std::int32_t> dual_parent;           // tree T*
  std::vector<std::pair<std::int32_t, std::int32_t>> lambda;  // size 2n (or 1 for n=0)
  std::vector<Quad> quads;
  std::vector<std::int32_t> quad_of_step;          // step 1..2n -> quad index

  std::int64_t step_of_index(std::int64_t i) const { return i - word_start + 1; }
  std::int64_t index_of_step(std::int64_t m) const { return word_start + m - 1; }
};

// Requires |w| even and reduce(w) empty (hence every symbol matched).
PlanarMapRecord build_map(const Word& w);

std::string map_to_json(const PlanarMapRecord& m);

// Graph-level loop statistics, computed from the polygon complex alone:
// interface loops are the strand cycles through the quads, clusters are
// cell regions bounded by strands, and bubble boundaries come from cell
// floods blocked at decorated diagonals. Nothing here consults the word
// formulas (i - phi(i) etc.), so the oracle is an independent route to
// every loop quantity.
class MapLoopOracle {
 public:
  explicit MapLoopOracle(const PlanarMapRecord& m);

  std::int64_t loop_count() const { return loop_count_; }
  std::int64_t cluster_count_s() const { return clusters_s_; }
  std::int64_t cluster_count_dual() const { return clusters_dual_; }
  // Pinned convention for finite sphere maps: K(S) = components of
  // (V(M), S) + components of (V(M*), S*) - 1, which makes #L = K(S).
  std::int64_t k_of_s() const { return clusters_s_ + clusters_dual_ - 1; }

  // Number of Q-edges crossed by the loop through a given quad side.
  std::int64_t loop_length_through(std::int64_t quad, int side) const;

  struct Bubble {
    std::int64_t area = 0;          // #Q-edges strictly inside the cycle
    std::int64_t boundary_len = 0;  // #decorated edges on the cycle
    std::vector<std::int64_t> cycle_quads;   // quads whose diagonal lies on the cycle
    std::vector<std::uint8_t> inside_edges;  // per Q-edge id, 1 if inside
  };

  // The bubble cut off by the cycle through the decorated diagonal of a
  // flexible quad, identified by the word index of its o_f.
  Bubble bubble(std::int64_t of_index) const;

  struct RegionStats {
    std::int64_t area = 0;
    std::int64_t boundary_len = 0;
  };

  // Area and boundary length of the loop region: the bubble of the o_f
  // at theta_index minus the bubbles of the o_f's at excursion_indices.
  RegionStats loop_region(std::int64_t theta_index,
                          const std::vector<std::int64_t>& excursion_indices) const;

  // Whether the boundary cycles of two flexible bubbles share an edge.
  bool cycles_touch(std::int64_t of_index_a, std::int64_t of_index_b) const;

 private:
  struct Flood;
  std::int32_t arc_cell(std::int32_t slot, bool primal_end) const;
  Bubble bubble_of_quad(std::int64_t quad) const;
  std::int64_t flex_quad_of_index(std::int64_t of_index) const;
  std::vector<std::int64_t> region_boundary(const std::vector<std::uint8_t>& in_region) const;
  void verify_cut(const std::vector<std::uint8_t>& in_region,
                  const std::vector<std::int64_t>& boundary,
                  std::int32_t outside_cell) const;

  PlanarMapRecord map_;
  std::int64_t n_ = 0;
  std::vector<std::int32_t> slot_edge_;     // slot id (4*quad + pos) -> Q-edge id
  std::vector<std::int32_t> edge_slot_a_;   // Q-edge id -> its two slots
  std::vector<std::int32_t> edge_slot_b_;
  std::vector<std::int32_t> loop_of_edge_;  // Q-edge id -> strand-cycle id
  std::vector<std::int64_t> loop_lengths_;
  std::vector<std::int32_t> region_of_cell_;  // strand-bounded regions
  std::int64_t loop_count_ = 0;
  std::int64_t clusters_s_ = 0;
  std::int64_t clusters_dual_ = 0;
};

struct WeightCheckReport {
  std::int64_t balanced_words = 0;
  std::int64_t classes = 0;          // distinct K(S) values seen
  double max_relative_deviation = 0.0;
  bool loops_equal_k = true;         // #L == K(S) on every word
  bool loops_equal_flex_plus_one = true;
  std::string convention = "K(S) = #clusters(S) + #clusters(S*) - 1";
};

// Exact enumeration of all balanced words of length 2n: checks that the
// word probability is proportional to q^{K(S)/2} across all of them
// (p must be the rational p_num/p_den) and that #L = K(S) under the
// pinned convention. n <= 4.
WeightCheckReport weight_check(int n, std::int64_t p_num, std::int64_t p_den);

}  // namespace fkb
