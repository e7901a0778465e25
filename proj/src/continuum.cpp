#include "fkb/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "fkb/parallel.hpp"
#include "fkb/rng.hpp"

namespace fkb {

StandardizingMap::StandardizingMap(const ModelParams& params) {
  const double p = params.p;
  const double s = std::sqrt(2.0 * (1.0 - p) / (1.0 - 2.0 * p));
  a11 = s;
  a12 = -s * p / (1.0 - p);
  a21 = 0.0;
  a22 = s * std::sqrt(1.0 - 2.0 * p) / (1.0 - p);
  det = a11 * a22 - a12 * a21;
  inv11 = a22 / det;
  inv12 = -a12 / det;
  inv21 = -a21 / det;
  inv22 = a11 / det;
}

CovCholesky::CovCholesky(const ModelParams& params) {
  const double p = params.p;
  const double var = (1.0 - p) / 2.0;
  const double rho = p / (1.0 - p);
  l11 = std::sqrt(var);
  l21 = rho * l11;
  l22 = l11 * std::sqrt(1.0 - rho * rho);
}

BMPath sample_bm(const ModelParams& params, double horizon, double dt, std::uint64_t seed,
                 std::uint64_t stream) {
  if (!(dt > 0.0) || !(horizon >= dt)) {
    throw std::domain_error("sample_bm: need dt > 0 and horizon >= dt");
  }
  const CovCholesky chol(params);
  const double sdt = std::sqrt(dt);
  const std::int64_t steps = static_cast<std::int64_t>(std::llround(horizon / dt));
  SplitMix64 rng(replica_seed(seed, stream));

  BMPath path;
  path.dt = dt;
  path.horizon = horizon;
  path.u.resize(static_cast<std::size_t>(steps) + 1);
  path.v.resize(static_cast<std::size_t>(steps) + 1);
  path.u[0] = 0.0;
  path.v[0] = 0.0;
  for (std::int64_t k = 1; k <= steps; ++k) {
    double g1, g2;
    rng.next_gaussian_pair(g1, g2);
    path.u[static_cast<std::size_t>(k)] =
        path.u[static_cast<std::size_t>(k - 1)] + sdt * chol.l11 * g1;
    path.v[static_cast<std::size_t>(k)] =
        path.v[static_cast<std::size_t>(k - 1)] + sdt * (chol.l21 * g1 + chol.l22 * g2);
  }
  return path;
}

ConeEventEstimate cone_event_prob(const ModelParams& params, double delta, double dt,
                                  std::int64_t n_paths, std::uint64_t seed,
                                  int workers) {
  if (!(delta > 0.0)) throw std::domain_error("cone_event_prob: delta must be positive");
  if (!(dt > 0.0)) throw std::domain_error("cone_event_prob: dt must be positive");
  const double barrier = -std::sqrt(delta);
  const CovCholesky chol(params);
  const double sdt = std::sqrt(dt);
  const std::int64_t steps = static_cast<std::int64_t>(std::llround(1.0 / dt));

  const std::int64_t chunk = 1024;
  const std::int64_t n_chunks = (n_paths + chunk - 1) / chunk;
  const auto counts = run_replicas(n_chunks, workers, [&](std::int64_t c) {
    std::pair<std::int64_t, std::int64_t> local{0, 0};
    const std::int64_t hi = std::min(n_paths, (c + 1) * chunk);
    for (std::int64_t path = c * chunk; path < hi; ++path) {
      SplitMix64 rng(replica_seed(seed, static_cast<std::uint64_t>(path)));
      double u = 0.0, v = 0.0;
      bool cone = true, cone_prime = true;
      for (std::int64_t k = 1; k <= steps; ++k) {
        double g1, g2;
        rng.next_gaussian_pair(g1, g2);
        u += sdt * chol.l11 * g1;
        v += sdt * (chol.l21 * g1 + chol.l22 * g2);
        if (u < barrier || v < barrier) {
          cone = false;
          if (u < barrier && v < barrier) {
            cone_prime = false;
            break;
          }
        }
      }
      local.first += cone;
      local.second += cone_prime;
    }
    return local;
  });
  std::int64_t hits = 0, hits_prime = 0;
  for (const auto& [a, b] : counts) {
    hits += a;
    hits_prime += b;
  }

  ConeEventEstimate est;
  est.n_paths = n_paths;
  est.dt = dt;
  est.delta = delta;
  est.p_cone = static_cast<double>(hits) / static_cast<double>(n_paths);
  est.p_cone_prime = static_cast<double>(hits_prime) / static_cast<double>(n_paths);
  est.stderr_cone =
      std::sqrt(est.p_cone * (1.0 - est.p_cone) / static_cast<double>(n_paths));
  est.stderr_cone_prime = std::sqrt(est.p_cone_prime * (1.0 - est.p_cone_prime) /
                                    static_cast<double>(n_paths));
  return est;
}

BMPath meander_sample(const ModelParams& params, double dt, std::uint64_t seed,
                      std::int64_t max_tries, std::uint64_t stream,
                      std::int64_t* tries_out) {
  if (!(dt > 0.0)) throw std::domain_error("meander_sample: dt must be positive");
  const CovCholesky chol(params);
  const double sdt = std::sqrt(dt);
  const std::int64_t steps = static_cast<std::int64_t>(std::llround(1.0 / dt));
  SplitMix64 rng(replica_seed(seed, stream));

  BMPath path;
  path.dt = dt;
  path.horizon = 1.0;
  path.u.resize(static_cast<std::size_t>(steps) + 1);
  path.v.resize(static_cast<std::size_t>(steps) + 1);
  for (std::int64_t attempt = 1; attempt <= max_tries; ++attempt) {
    path.u[0] = 0.0;
    path.v[0] = 0.0;
    bool ok = true;
    for (std::int64_t k = 1; k <= steps; ++k) {
      double g1, g2;
      rng.next_gaussian_pair(g1, g2);
      const double u = path.u[static_cast<std::size_t>(k - 1)] + sdt * chol.l11 * g1;
      const double v = path.v[static_cast<std::size_t>(k - 1)] +
                       sdt * (chol.l21 * g1 + chol.l22 * g2);
      if (u < 0.0 || v < 0.0) {
        ok = false;
        break;
      }
      path.u[static_cast<std::size_t>(k)] = u;
      path.v[static_cast<std::size_t>(k)] = v;
    }
    if (ok) {
      if (tries_out) *tries_out = attempt;
      return path;
    }
  }
  throw MeanderExhausted("meander_sample: max_tries exhausted");
}

double quadrant_survival(const ModelParams& params, double x, double y, double horizon,
                         double dt, std::int64_t n_paths, std::uint64_t seed) {
  const CovCholesky chol(params);
  const double sdt = std::sqrt(dt);
  const std::int64_t steps = static_cast<std::int64_t>(std::ceil(horizon / dt));
  std::int64_t survived = 0;
  for (std::int64_t path = 0; path < n_paths; ++path) {
    SplitMix64 rng(replica_seed(seed, static_cast<std::uint64_t>(path)));
    double u = x, v = y;
    bool alive = true;
    for (std::int64_t k = 0; k < steps; ++k) {
      double g1, g2;
      rng.next_gaussian_pair(g1, g2);
      u += sdt * chol.l11 * g1;
      v += sdt * (chol.l21 * g1 + chol.l22 * g2);
      if (u < 0.0 || v < 0.0) {
        alive = false;
        break;
      }
    }
    survived += alive;
  }
  return static_cast<double>(survived) / static_cast<double>(n_paths);
}

double meander_density_prefactor(const ModelParams& params, double t, double x,
                                 double y) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::domain_error("meander_density: t must lie in (0, 1]");
  }
  if (!(x > 0.0 && y > 0.0)) {
    throw std::domain_error("meander_density: z must lie inside the first quadrant");
  }
  const StandardizingMap map(params);
  const double mu = params.mu;
  const auto [wx, wy] = map.apply(x, y);
  const double r = std::hypot(wx, wy);
  const double arg = std::atan2(wy, wx);
  const double scale = map.det / (std::pow(2.0, mu) * std::tgamma(mu) *
                                  std::pow(t, 0.5 + 2.0 * mu));
  return scale * std::pow(r, 2.0 * mu) * std::exp(-r * r / (2.0 * t)) *
         std::sin(2.0 * mu * arg);
}

double meander_density(const ModelParams& params, double t, double x, double y,
                       std::int64_t n_paths, std::uint64_t seed) {
  const double value = meander_density_prefactor(params, t, x, y);
  if (t == 1.0) return value;
  return value * quadrant_survival(params, x, y, 1.0 - t, 1e-3, n_paths, seed);
}

}  // namespace fkb
