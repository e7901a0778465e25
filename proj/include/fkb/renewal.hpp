#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fkb/rng.hpp"

namespace fkb {

// Lifetime sampler: draws one positive integer lifetime. `cap` is a
// censoring hint (any value > cap may be returned as cap+1); exact
// distributions ignore it.
using LifetimeSampler = std::function<std::int64_t(SplitMix64&, std::int64_t)>;

LifetimeSampler deterministic_lifetime(std::int64_t k);
// k1 with probability p1, else k2.
LifetimeSampler bernoulli_mix_lifetime(double p1, std::int64_t k1, std::int64_t k2);
// P(Y > n) = n^-alpha for integer n >= 1 (ceiling of a continuous Pareto).
LifetimeSampler pareto_int_lifetime(double alpha);

struct RenewalTrace {
  std::int64_t horizon = 0;
  std::int64_t m_n = 0;    // max m with S_m <= horizon
  std::int64_t s_m_n = 0;  // S_{M_n}
  std::int64_t age = 0;    // horizon - S_{M_n}
  std::vector<std::int64_t> lifetimes;  // Y_1 .. Y_{M_n + 1}
};

RenewalTrace simulate_renewal(const LifetimeSampler& lifetime, std::int64_t horizon,
                              std::uint64_t seed, std::uint64_t stream = 0,
                              bool keep_lifetimes = true);

// Exact check of P(hit every index) = prod P(hit gap): lifetimes on
// support 1..pmf.size() (<= 5) with probabilities pmf[k-1]/sum(pmf);
// indices strictly increasing, last one <= 12.
struct ProductCheck {
  __int128 joint_num = 0;      // P(hit all indices) * den^last
  __int128 product_num = 0;    // product formula on the same denominator
  std::int64_t den = 0;        // common probability denominator
  std::int64_t exponent = 0;   // power of den
  bool equal = false;
};
ProductCheck hit_prob_product(const std::vector<std::int64_t>& pmf,
                              const std::vector<std::int64_t>& indices);

struct MomentReport {
  double mean_mk = 0.0;    // empirical E[M_n^k]
  double log_n_mean = 0.0; // log_n of it
  double bound = 0.0;      // k(1-alpha) + slack; NaN when alpha unknown
  bool bounded = true;
};
// alpha is the hitting-probability decay exponent, P(some S_m = i)
// <= i^{-alpha+o(1)}; for a lifetime with tail exponent beta in (0,1)
// this equals 1 - beta. Pass NaN to skip the bound.
MomentReport moment_mn(const std::vector<RenewalTrace>& traces, int k, double alpha,
                       double slack = 0.1);

struct AgeLawReport {
  double ks = 0.0;
  std::vector<double> age_fractions;  // sorted
};
// ECDF of age/horizon against the Dynkin-Lamperti reference law
// Beta(1-alpha, alpha).
AgeLawReport age_fraction_ecdf(const std::vector<RenewalTrace>& traces, double alpha);

double beta_reference_cdf(double x, double alpha);

// ---------------------------------------------------------------------------
// Heavy-tail exponent estimation from survival ratios.

// Statistic sampler: one censored sample, values > cap may come back as
// any value > cap.
using StatSampler = std::function<std::int64_t(std::uint64_t seed, std::int64_t replica,
                                               std::int64_t cap)>;

struct TailStep {
  std::int64_t threshold = 0;
  std::int64_t survivors = 0;
  double p_hat = 0.0;
  double p_stderr = 0.0;
  double alpha_step = 0.0;   // -log2 of the survival ratio into the next threshold
  double alpha_stderr = 0.0;
};

struct TailEstimate {
  double alpha_hat = 0.0;  // precision-weighted mean of the steps
  double stderr = 0.0;
  std::vector<TailStep> steps;
  std::int64_t n_samples = 0;
  std::int64_t cap = 0;
};

// thresholds must be doubling (each twice the previous). Samples are
// censored at cap = 2 * thresholds.back().
TailEstimate tail_ratio_exponent(const StatSampler& sampler,
                                 const std::vector<std::int64_t>& thresholds,
                                 std::int64_t n_samples, std::uint64_t seed,
                                 int workers = 1);

// ---------------------------------------------------------------------------
// Small empirical-statistics helpers.

struct Cov2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;
};
Cov2 empirical_cov(const std::vector<std::pair<double, double>>& samples);

// Two-sided KS statistic of sorted samples against a CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace fkb
