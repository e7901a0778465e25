#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fkb/matching.hpp"
#include "fkb/word.hpp"

namespace fkb {

// The lattice walk D = (d, d*) of a resolved word. Integer time t
// carries the value after the symbol driving the step t-1 -> t; the
// symbol at index j drives the step (j - origin) -> (j - origin + 1),
// so time 0 sits between indices origin-1 and origin and d(0) = 0.
struct WalkPath {
  std::int64_t t_min = 0;
  std::int64_t t_max = 0;
  std::vector<std::int64_t> d;
  std::vector<std::int64_t> d_star;

  std::int64_t d_at(std::int64_t t) const {
    return d[static_cast<std::size_t>(t - t_min)];
  }
  std::int64_t d_star_at(std::int64_t t) const {
    return d_star[static_cast<std::size_t>(t - t_min)];
  }
  bool covers(std::int64_t t) const { return t >= t_min && t <= t_max; }
};

// Requires a word with no o_f symbols and origin in [start, end+1].
WalkPath build_walk(const Word& y, std::int64_t origin);

// Finite-window variant: o_f symbols matched in-window step like their
// resolved kind; o_f whose match precedes the window contribute a zero
// step (there are few of them, so rescaled paths are unaffected in the
// limit). Returns the number of zeroed steps through `censored_out`.
WalkPath build_walk_censored(const Word& w, const MatchTable& mt, std::int64_t origin,
                             std::int64_t* censored_out = nullptr);

// Z^n(t) = n^{-1/2} (d(nt), d*(nt)) with linear interpolation.
std::pair<double, double> rescaled_eval(const WalkPath& path, std::int64_t n, double t);

// All matched o_f times i with [phi(i), i] inside [lo, hi] whose match
// interval is not nested inside another such interval.
std::vector<ConeRecord> maximal_f_times(const Word& w, const MatchTable& mt,
                                        std::int64_t lo, std::int64_t hi);

// Smallest i in the window with X_i = o_f matched in-window, i >= a*n,
// and i - phi(i) >= r*n - 1.
std::optional<std::int64_t> stopping_iota(const Word& w, const MatchTable& mt,
                                          double a, double r, std::int64_t n);

// ---------------------------------------------------------------------------
// Cone scan over a uniformly sampled planar path.

struct GridPath {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<double> u;
  std::vector<double> v;

  std::size_t size() const { return u.size(); }
  double time_at(std::size_t k) const { return t0 + dt * static_cast<double>(k); }
};

struct ConeScanHit {
  double t = 0.0;
  double v = 0.0;
  std::optional<double> u;  // absent when the other boundary is never crossed in-grid
  Direction dir = Direction::Left;
};

// First grid time t >= a that is a weak pi/2-cone time of the sampled
// path with t - v_Z(t) >= r. All comparisons are exact on the stored
// values. v is the last entrance time (earliest grid point m with
// U, V >= (U(t), V(t)) on [m, t]); u the last time before v at which
// both coordinates' running minima over [., t] lie strictly below
// (U(t), V(t)). dir is Left when V(v) = V(t), Right when U(v) = U(t);
// if neither holds exactly the entrance step decides (the coordinate
// lying below its boundary just before v; ties pick the deeper one).
std::optional<ConeScanHit> continuous_cone_scan(const GridPath& path, double a, double r);

// Grid predicate shared with tests: weak cone time at index k plus its
// entrance index. Returns false for k == 0.
bool grid_cone_time(const GridPath& path, std::size_t k, std::size_t& entrance);

}  // namespace fkb
