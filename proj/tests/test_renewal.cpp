#include "fkb/renewal.hpp"

#include <cmath>

#include "doctest.h"
#include "fkb/matching.hpp"
#include "fkb/word.hpp"

using namespace fkb;

TEST_CASE("deterministic renewal traces") {
  const RenewalTrace t2 = simulate_renewal(deterministic_lifetime(2), 10, 1);
  CHECK(t2.m_n == 5);
  CHECK(t2.age == 0);
  const RenewalTrace t3 = simulate_renewal(deterministic_lifetime(3), 10, 1);
  CHECK(t3.m_n == 3);
  CHECK(t3.age == 1);
}

TEST_CASE("pareto lifetime tail") {
  const LifetimeSampler pareto = pareto_int_lifetime(0.6);
  SplitMix64 rng(replica_seed(7, 0));
  const std::int64_t n = 100000;
  std::int64_t over = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    if (pareto(rng, 0) > 1000) ++over;
  }
  const double p_hat = static_cast<double>(over) / static_cast<double>(n);
  const double expect = std::pow(10.0, -1.8);
  const double sigma = std::sqrt(expect * (1.0 - expect) / static_cast<double>(n));
  CHECK(std::abs(p_hat - expect) < 3.0 * sigma);
}

TEST_CASE("hit probability product identity, exact") {
  {
    const ProductCheck c = hit_prob_product({0, 1}, {2, 4});  // deterministic 2
    CHECK(c.equal);
    // Both sides equal 1 on denominator 1^4.
    CHECK(static_cast<long long>(c.joint_num) == 1);
  }
  {
    const ProductCheck c = hit_prob_product({1, 1}, {1, 2});
    CHECK(c.equal);
    // P = 1/4 on denominator 2^2.
    CHECK(static_cast<long long>(c.joint_num) == 1);
    CHECK(c.den == 2);
    CHECK(c.exponent == 2);
  }
  {
    const ProductCheck c = hit_prob_product({1, 1}, {2});
    CHECK(c.equal);
    // P(E_2) = 3/4.
    CHECK(static_cast<long long>(c.joint_num) == 3);
  }
  {
    const ProductCheck c = hit_prob_product({1, 2, 1}, {3, 5, 8});
    CHECK(c.equal);
  }
  CHECK_THROWS_AS(hit_prob_product({1, 1}, {2, 13}), std::domain_error);
  CHECK_THROWS_AS(hit_prob_product({1, 1, 1, 1, 1, 1}, {2}), std::domain_error);
}

TEST_CASE("moment bound for M_n") {
  // Pareto lifetimes with tail exponent 0.75 give hitting probabilities
  // P(hit i) ~ i^{-0.25}, i.e. alpha = 0.25, and M_n grows like n^{0.75}.
  const std::int64_t n = 100000;
  std::vector<RenewalTrace> traces;
  for (int r = 0; r < 400; ++r) {
    traces.push_back(simulate_renewal(pareto_int_lifetime(0.75), n, 5,
                                      static_cast<std::uint64_t>(r), false));
  }
  const MomentReport k1 = moment_mn(traces, 1, 0.25);
  CHECK(k1.log_n_mean <= 0.85);
  CHECK(k1.log_n_mean >= 0.5);
  CHECK(k1.bounded);
  const MomentReport k2 = moment_mn(traces, 2, 0.25);
  CHECK(k2.log_n_mean <= 1.6);
  CHECK(k2.bounded);

  // Deterministic(1): M_n = n exactly; report only.
  std::vector<RenewalTrace> unit;
  unit.push_back(simulate_renewal(deterministic_lifetime(1), 1000, 1, 0, false));
  const MomentReport r1 = moment_mn(unit, 1, std::nan(""));
  CHECK(r1.mean_mk == doctest::Approx(1000.0));
}

TEST_CASE("age law: pareto oracles validate the Beta(1-alpha, alpha) reference") {
  const std::int64_t n = 100000;
  const int traces = 20000;
  {
    std::vector<RenewalTrace> ensemble;
    ensemble.reserve(traces);
    for (int r = 0; r < traces; ++r) {
      ensemble.push_back(simulate_renewal(pareto_int_lifetime(0.5), n, 91,
                                          static_cast<std::uint64_t>(r), false));
    }
    CHECK(age_fraction_ecdf(ensemble, 0.5).ks <= 0.02);
  }
  {
    std::vector<RenewalTrace> ensemble;
    ensemble.reserve(traces);
    for (int r = 0; r < traces; ++r) {
      ensemble.push_back(simulate_renewal(pareto_int_lifetime(0.6), n, 92,
                                          static_cast<std::uint64_t>(r), false));
    }
    CHECK(age_fraction_ecdf(ensemble, 0.6).ks <= 0.02);
  }
  {
    // Finite-mean lattice lifetimes: age/n concentrates near 0 and the
    // heavy-tail reference must be far away, so the test has power.
    std::vector<RenewalTrace> ensemble;
    for (int r = 0; r < 2000; ++r) {
      ensemble.push_back(simulate_renewal(deterministic_lifetime(2), n, 93,
                                          static_cast<std::uint64_t>(r), false));
    }
    CHECK(age_fraction_ecdf(ensemble, 0.5).ks > 0.3);
  }
}

TEST_CASE("tail exponent estimator on exact pareto tails") {
  const StatSampler pareto = [](std::uint64_t seed, std::int64_t replica,
                                std::int64_t cap) {
    SplitMix64 rng(replica_seed(seed, static_cast<std::uint64_t>(replica)));
    const double x = std::pow(rng.next_double_open(), -1.0 / 0.75);
    const double capped = std::min(x, static_cast<double>(cap) + 2.0);
    return static_cast<std::int64_t>(std::ceil(capped));
  };
  std::vector<std::int64_t> thresholds;
  for (std::int64_t t = 1024; t <= 16384; t *= 2) thresholds.push_back(t);
  const TailEstimate est = tail_ratio_exponent(pareto, thresholds, 1000000, 13, 2);
  CHECK(std::abs(est.alpha_hat - 0.75) < 0.03);
  CHECK(est.stderr < 0.03);
  CHECK(est.steps.front().survivors > est.steps.back().survivors);
}

TEST_CASE("Jtilde to J tail ratio equals p/2") {
  const ModelParams mp = params_from_p(1.0 / 3.0);
  const std::int64_t n = 1024;
  const std::int64_t samples = 400000;
  std::int64_t j_over = 0, jt_over = 0;
  for (std::int64_t r = 0; r < samples; ++r) {
    SymbolStream sj(mp, 1215, static_cast<std::uint64_t>(r), -1, -1);
    const HitResult hj = hitting_time(sj, HitStat::J, n);
    if (hj.censored || hj.value > n - 1) ++j_over;  // J > n-1
    SymbolStream sjt(mp, 1216, static_cast<std::uint64_t>(r), -1, -1);
    const HitResult hjt = hitting_time(sjt, HitStat::Jtilde, n + 1);
    if (hjt.censored || hjt.value > n) ++jt_over;  // Jtilde > n
  }
  const double pj = static_cast<double>(j_over) / static_cast<double>(samples);
  const double pjt = static_cast<double>(jt_over) / static_cast<double>(samples);
  const double ratio = pjt / pj;
  const double sigma = ratio * std::sqrt(1.0 / static_cast<double>(jt_over) +
                                         1.0 / static_cast<double>(j_over));
  CHECK(std::abs(ratio - mp.p / 2.0) < 3.0 * sigma);
}

TEST_CASE("empirical covariance and KS helpers") {
  CHECK_THROWS_AS(empirical_cov({{1.0, 2.0}}), std::domain_error);
  {
    const Cov2 c = empirical_cov({{2.0, 5.0}, {2.0, 5.0}, {2.0, 5.0}});
    CHECK(c.xx == 0.0);
    CHECK(c.xy == 0.0);
    CHECK(c.yy == 0.0);
  }
  {
    std::vector<std::pair<double, double>> anti;
    SplitMix64 rng(1);
    for (int k = 0; k < 5000; ++k) {
      const double x = rng.next_double();
      anti.emplace_back(x, -x);
    }
    const Cov2 c = empirical_cov(anti);
    CHECK(c.xy == doctest::Approx(-c.xx).epsilon(1e-12));
  }
  {
    // KS of uniform samples against the uniform CDF: 99% critical value.
    SplitMix64 rng(2);
    std::vector<double> u;
    for (int k = 0; k < 10000; ++k) u.push_back(rng.next_double());
    const double ks = ks_distance(u, [](double x) { return x; });
    CHECK(ks <= 1.63 / std::sqrt(10000.0));
  }
}
