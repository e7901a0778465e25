#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fkb/matching.hpp"
#include "fkb/word.hpp"

namespace fkb {

// One loop of the nested sequence around the origin. iota is the
// outermost o_f time of the j-th direction run, theta the innermost of
// run j+1, theta_tilde = phi(theta). The labeling is fixed so that odd
// j have dir Left; when the innermost run is Right the sequence starts
// at j = 2. truncated entries mark the outermost run, whose enclosing
// loop falls outside the window.
struct RootLoopEntry {
  int j = 0;
  Direction dir = Direction::Left;
  std::int64_t iota = 0;
  std::int64_t theta_tilde = 0;
  std::int64_t theta = 0;
  bool truncated = false;
};

using RootLoopSequence = std::vector<RootLoopEntry>;

struct LoopComponents {
  std::vector<ConeRecord> excursions;  // I_j: bubbles escaping the loop
  std::vector<ConeRecord> components;  // Theta_j: bounded complementary components
  std::int64_t u_count = 0;            // #U_j, the boundary-edge correction
};

struct LoopStats {
  std::vector<std::int64_t> component_areas;
  std::vector<std::int64_t> component_boundary_lens;
  std::int64_t full_area = 0;
  std::int64_t interior_area = 0;
  std::int64_t outer_boundary_len = 0;
};

class CensoredPhiStar : public std::runtime_error {
 public:
  explicit CensoredPhiStar(std::int64_t index);
  std::int64_t index;
};

// All matched o_f intervals containing `origin`, grouped into direction
// runs and labeled as described above. Empty when no in-window interval
// contains the origin.
RootLoopSequence nested_f_intervals(const Word& w, const MatchTable& mt,
                                    std::int64_t origin);

// Splits the maximal o_f times in (theta_tilde, theta) into excursions
// (opposite direction to the loop with phi_star < theta_tilde) and
// bounded complementary components, and counts U_j. Throws
// CensoredPhiStar when a needed phi_star is outside the window.
LoopComponents classify_components(const Word& w, const MatchTable& mt,
                                   const RootLoopEntry& entry);

// Length of the reduced word X(a, b), i.e. the number of orders in
// (a, b] whose match falls left of a or outside the window, for a match
// interval [a, b] of the window. (No burger survives in such a window.)
std::int64_t reduced_interval_len(const Word& w, const MatchTable& mt,
                                  std::int64_t a, std::int64_t b);

LoopStats loop_stats(const Word& w, const MatchTable& mt, const RootLoopEntry& entry,
                     const LoopComponents& comps);

// Whether the boundary cycles of two nested same-direction bubbles
// intersect: true iff phi_star(i) <= phi(i_prime).
bool nesting_touch(const Word& w, const MatchTable& mt, std::int64_t i,
                   std::int64_t i_prime);

}  // namespace fkb
