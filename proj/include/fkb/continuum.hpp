#pragma once

#include <cstdint>
#include <vector>

#include "fkb/params.hpp"
#include "fkb/walk.hpp"

namespace fkb {

// Sampled correlated Brownian motion Z = (U, V) with unit-time
// covariance [[(1-p)/2, p/2], [p/2, (1-p)/2]].
struct BMPath {
  double dt = 0.0;
  double horizon = 0.0;
  std::vector<double> u;  // u[k] = U(k*dt), k = 0..steps
  std::vector<double> v;

  GridPath as_grid() const { return GridPath{0.0, dt, u, v}; }
};

// The linear map A with A Cov A^T = I: applying it turns Z into a
// standard planar Brownian motion and the first quadrant into the cone
// of opening angle pi - atan(sqrt(1-2p)/p).
struct StandardizingMap {
  double a11, a12, a21, a22;        // A
  double inv11, inv12, inv21, inv22;
  double det;

  explicit StandardizingMap(const ModelParams& params);
  std::pair<double, double> apply(double x, double y) const {
    return {a11 * x + a12 * y, a21 * x + a22 * y};
  }
  std::pair<double, double> apply_inverse(double x, double y) const {
    return {inv11 * x + inv12 * y, inv21 * x + inv22 * y};
  }
};

// Lower-triangular Cholesky factor of the unit-time covariance.
struct CovCholesky {
  double l11, l21, l22;
  explicit CovCholesky(const ModelParams& params);
};

BMPath sample_bm(const ModelParams& params, double horizon, double dt, std::uint64_t seed,
                 std::uint64_t stream = 0);

struct ConeEventEstimate {
  double p_cone = 0.0;        // P(E_delta): both coordinates stay above -sqrt(delta)
  double p_cone_prime = 0.0;  // P(E'_delta): at every time at least one does
  double stderr_cone = 0.0;
  double stderr_cone_prime = 0.0;
  std::int64_t n_paths = 0;
  double dt = 0.0;
  double delta = 0.0;
};

// Monte Carlo estimates of the two cone events on [0, 1]; paths stop as
// soon as both events are decided.
ConeEventEstimate cone_event_prob(const ModelParams& params, double delta, double dt,
                                  std::int64_t n_paths, std::uint64_t seed,
                                  int workers = 1);

class MeanderExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampler for Z on [0, 1] conditioned to stay in the closed
// first quadrant at every grid point. tries_out, if given, receives the
// number of attempts.
BMPath meander_sample(const ModelParams& params, double dt, std::uint64_t seed,
                      std::int64_t max_tries, std::uint64_t stream = 0,
                      std::int64_t* tries_out = nullptr);

// Density of the conditioned path's time-t marginal at z = (x, y),
// strictly inside the quadrant, 0 < t <= 1. The closed-form prefactor
// is exact; the survival factor P_z(T > 1-t) is Monte Carlo with
// n_paths samples (skipped at t = 1 where it equals 1).
double meander_density(const ModelParams& params, double t, double x, double y,
                       std::int64_t n_paths, std::uint64_t seed);

// The closed-form factor alone, without the survival probability.
double meander_density_prefactor(const ModelParams& params, double t, double x,
                                 double y);

// Survival probability P_z(no exit from the quadrant before `horizon`),
// estimated on a grid of step dt.
double quadrant_survival(const ModelParams& params, double x, double y, double horizon,
                         double dt, std::int64_t n_paths, std::uint64_t seed);

}  // namespace fkb
