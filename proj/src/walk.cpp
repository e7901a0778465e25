#include "fkb/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fkb {

WalkPath build_walk(const Word& y, std::int64_t origin) {
  if (origin < y.start || origin > y.end() + 1) {
    throw std::invalid_argument("build_walk: origin outside [start, end+1]");
  }
  WalkPath path;
  path.t_min = y.start - origin;
  path.t_max = y.end() - origin + 1;
  const std::size_t len = static_cast<std::size_t>(path.t_max - path.t_min) + 1;
  path.d.resize(len);
  path.d_star.resize(len);

  // Cumulative sums anchored afterwards so that d(0) = 0.
  std::int64_t dh = 0, dc = 0;
  path.d[0] = 0;
  path.d_star[0] = 0;
  for (std::int64_t j = y.start; j <= y.end(); ++j) {
    switch (y.at(j)) {
      case Symbol::BurgerH: ++dh; break;
      case Symbol::BurgerC: ++dc; break;
      case Symbol::OrderH: --dh; break;
      case Symbol::OrderC: --dc; break;
      case Symbol::OrderF:
        throw std::invalid_argument("build_walk: word contains an o_f symbol");
    }
    const std::size_t k = static_cast<std::size_t>(j - origin - path.t_min) + 1;
    path.d[k] = dh;
    path.d_star[k] = dc;
  }
  const std::int64_t d0 = path.d_at(0);
  const std::int64_t ds0 = path.d_star_at(0);
  for (auto& x : path.d) x -= d0;
  for (auto& x : path.d_star) x -= ds0;
  return path;
}

WalkPath build_walk_censored(const Word& w, const MatchTable& mt, std::int64_t origin,
                             std::int64_t* censored_out) {
  if (origin < w.start || origin > w.end() + 1) {
    throw std::invalid_argument("build_walk_censored: origin outside [start, end+1]");
  }
  WalkPath path;
  path.t_min = w.start - origin;
  path.t_max = w.end() - origin + 1;
  const std::size_t len = static_cast<std::size_t>(path.t_max - path.t_min) + 1;
  path.d.resize(len);
  path.d_star.resize(len);
  std::int64_t censored = 0;
  std::int64_t dh = 0, dc = 0;
  path.d[0] = 0;
  path.d_star[0] = 0;
  for (std::int64_t j = w.start; j <= w.end(); ++j) {
    Symbol s = w.at(j);
    if (s == Symbol::OrderF) {
      const MatchIndex m = mt.at(j);
      if (!m) {
        ++censored;
        s = Symbol::OrderF;  // zero step below
      } else {
        s = (w.at(*m) == Symbol::BurgerH) ? Symbol::OrderH : Symbol::OrderC;
      }
    }
    switch (s) {
      case Symbol::BurgerH: ++dh; break;
      case Symbol::BurgerC: ++dc; break;
      case Symbol::OrderH: --dh; break;
      case Symbol::OrderC: --dc; break;
      case Symbol::OrderF: break;
    }
    const std::size_t k = static_cast<std::size_t>(j - origin - path.t_min) + 1;
    path.d[k] = dh;
    path.d_star[k] = dc;
  }
  const std::int64_t d0 = path.d_at(0);
  const std::int64_t ds0 = path.d_star_at(0);
  for (auto& x : path.d) x -= d0;
  for (auto& x : path.d_star) x -= ds0;
  if (censored_out) *censored_out = censored;
  return path;
}

std::pair<double, double> rescaled_eval(const WalkPath& path, std::int64_t n, double t) {
  if (n <= 0) throw std::domain_error("rescaled_eval: n must be positive");
  const double s = static_cast<double>(n) * t;
  const double lo = std::floor(s);
  const std::int64_t i0 = static_cast<std::int64_t>(lo);
  const double frac = s - lo;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  if (frac == 0.0) {
    if (!path.covers(i0)) throw std::out_of_range("rescaled_eval: nt outside path range");
    return {scale * static_cast<double>(path.d_at(i0)),
            scale * static_cast<double>(path.d_star_at(i0))};
  }
  if (!path.covers(i0) || !path.covers(i0 + 1)) {
    throw std::out_of_range("rescaled_eval: nt outside path range");
  }
  const double u = static_cast<double>(path.d_at(i0)) +
                   frac * static_cast<double>(path.d_at(i0 + 1) - path.d_at(i0));
  const double v = static_cast<double>(path.d_star_at(i0)) +
                   frac * static_cast<double>(path.d_star_at(i0 + 1) - path.d_star_at(i0));
  return {scale * u, scale * v};
}

std::vector<ConeRecord> maximal_f_times(const Word& w, const MatchTable& mt,
                                        std::int64_t lo, std::int64_t hi) {
  // Match intervals form a laminar family, so after sorting by left
  // endpoint an interval is maximal iff it starts beyond the rightmost
  // accepted endpoint so far.
  std::vector<FlexRecord> candidates;
  for (std::int64_t i = std::max(lo, w.start); i <= std::min(hi, w.end()); ++i) {
    if (w.at(i) != Symbol::OrderF || !mt.matched(i)) continue;
    const std::int64_t phi = *mt.at(i);
    if (phi < lo) continue;
    FlexRecord rec;
    rec.i = i;
    rec.phi = phi;
    rec.dir = (w.at(phi) == Symbol::BurgerC) ? Direction::Left : Direction::Right;
    candidates.push_back(rec);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const FlexRecord& a, const FlexRecord& b) { return a.phi < b.phi; });
  std::vector<ConeRecord> out;
  std::int64_t cover = lo - 1;
  for (auto& rec : candidates) {
    if (rec.phi <= cover) continue;
    cover = rec.i;
    rec.phi_star = phi_star(w, mt, rec.i);
    rec.degenerate = rec.phi_star.has_value() && *rec.phi_star == rec.phi;
    out.push_back(rec);
  }
  return out;
}

std::optional<std::int64_t> stopping_iota(const Word& w, const MatchTable& mt,
                                          double a, double r, std::int64_t n) {
  if (!(r > 0.0)) throw std::domain_error("stopping_iota: r must be positive");
  const double an = a * static_cast<double>(n);
  const double rn1 = r * static_cast<double>(n) - 1.0;
  for (std::int64_t i = w.start; i <= w.end(); ++i) {
    if (w.at(i) != Symbol::OrderF || !mt.matched(i)) continue;
    if (static_cast<double>(i) < an) continue;
    if (static_cast<double>(i - *mt.at(i)) >= rn1) return i;
  }
  return std::nullopt;
}

bool grid_cone_time(const GridPath& path, std::size_t k, std::size_t& entrance) {
  if (k == 0 || k >= path.size()) return false;
  if (!(path.u[k - 1] >= path.u[k] && path.v[k - 1] >= path.v[k])) return false;
  std::size_t m = k;
  while (m > 0 && path.u[m - 1] >= path.u[k] && path.v[m - 1] >= path.v[k]) --m;
  entrance = m;
  return true;
}

std::optional<ConeScanHit> continuous_cone_scan(const GridPath& path, double a, double r) {
  for (std::size_t k = 0; k < path.size(); ++k) {
    const double t = path.time_at(k);
    if (t < a) continue;
    std::size_t m = 0;
    if (!grid_cone_time(path, k, m)) continue;
    const double v = path.time_at(m);
    if (!(t - v >= r)) continue;

    ConeScanHit hit;
    hit.t = t;
    hit.v = v;
    if (path.v[m] == path.v[k]) {
      hit.dir = Direction::Left;
    } else if (path.u[m] == path.u[k]) {
      hit.dir = Direction::Right;
    } else if (m > 0) {
      const double du = path.u[k] - path.u[m - 1];
      const double dv = path.v[k] - path.v[m - 1];
      if (dv > 0.0 && du <= 0.0) {
        hit.dir = Direction::Left;
      } else if (du > 0.0 && dv <= 0.0) {
        hit.dir = Direction::Right;
      } else {
        hit.dir = (dv >= du) ? Direction::Left : Direction::Right;
      }
    } else {
      hit.dir = (path.v[m] - path.v[k] <= path.u[m] - path.u[k]) ? Direction::Left
                                                                 : Direction::Right;
    }

    // u: last time before t at which both running minima over [., t]
    // lie strictly below the cone apex.
    double min_u = path.u[k], min_v = path.v[k];
    for (std::size_t s = k;; --s) {
      min_u = std::min(min_u, path.u[s]);
      min_v = std::min(min_v, path.v[s]);
      if (min_u < path.u[k] && min_v < path.v[k]) {
        hit.u = path.time_at(s);
        break;
      }
      if (s == 0) break;
    }
    return hit;
  }
  return std::nullopt;
}

}  // namespace fkb
