#include "fkb/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

#include "fkb/parallel.hpp"

namespace fkb {

LifetimeSampler deterministic_lifetime(std::int64_t k) {
  if (k < 1) throw std::domain_error("deterministic_lifetime: k must be positive");
  return [k](SplitMix64&, std::int64_t) { return k; };
}

LifetimeSampler bernoulli_mix_lifetime(double p1, std::int64_t k1, std::int64_t k2) {
  if (k1 < 1 || k2 < 1) throw std::domain_error("bernoulli_mix_lifetime: lifetimes positive");
  return [p1, k1, k2](SplitMix64& rng, std::int64_t) {
    return rng.next_double() < p1 ? k1 : k2;
  };
}

LifetimeSampler pareto_int_lifetime(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("pareto_int_lifetime: alpha must be positive");
  return [alpha](SplitMix64& rng, std::int64_t) {
    const double x = std::pow(rng.next_double_open(), -1.0 / alpha);
    return static_cast<std::int64_t>(std::ceil(x));
  };
}

RenewalTrace simulate_renewal(const LifetimeSampler& lifetime, std::int64_t horizon,
                              std::uint64_t seed, std::uint64_t stream,
                              bool keep_lifetimes) {
  RenewalTrace trace;
  trace.horizon = horizon;
  SplitMix64 rng(replica_seed(seed, stream));
  std::int64_t sum = 0;
  for (;;) {
    const std::int64_t y = lifetime(rng, horizon - sum + 1);
    if (y < 1) throw std::domain_error("simulate_renewal: lifetime must be positive");
    if (keep_lifetimes) trace.lifetimes.push_back(y);
    if (sum + y > horizon) break;
    sum += y;
    ++trace.m_n;
  }
  trace.s_m_n = sum;
  trace.age = horizon - sum;
  return trace;
}

ProductCheck hit_prob_product(const std::vector<std::int64_t>& pmf,
                              const std::vector<std::int64_t>& indices) {
  if (pmf.empty() || pmf.size() > 5) {
    throw std::domain_error("hit_prob_product: pmf support must be 1..5");
  }
  if (indices.empty() || indices.back() > 12 || indices.front() < 1) {
    throw std::domain_error("hit_prob_product: indices must be in 1..12");
  }
  for (std::size_t k = 1; k < indices.size(); ++k) {
    if (indices[k] <= indices[k - 1]) {
      throw std::domain_error("hit_prob_product: indices must be strictly increasing");
    }
  }
  ProductCheck out;
  out.den = 0;
  for (const std::int64_t w : pmf) {
    if (w < 0) throw std::domain_error("hit_prob_product: negative weight");
    out.den += w;
  }
  const std::int64_t last = indices.back();
  out.exponent = last;

  // Renewal hitting probabilities: E[i] / den^i = P(some S_m = i).
  std::vector<__int128> hit(static_cast<std::size_t>(last) + 1, 0);
  hit[0] = 1;
  std::vector<__int128> den_pow(pmf.size() + 1, 1);
  for (std::size_t k = 1; k <= pmf.size(); ++k) den_pow[k] = den_pow[k - 1] * out.den;
  for (std::int64_t i = 1; i <= last; ++i) {
    for (std::size_t k = 1; k <= pmf.size(); ++k) {
      if (i >= static_cast<std::int64_t>(k)) {
        hit[static_cast<std::size_t>(i)] += pmf[k - 1] * den_pow[k - 1] *
                                            hit[static_cast<std::size_t>(i - k)];
      }
    }
  }

  // Joint probability by direct enumeration: a path may not step over a
  // required index.
  std::vector<__int128> joint(static_cast<std::size_t>(last) + 1, 0);
  std::vector<bool> required(static_cast<std::size_t>(last) + 1, false);
  for (const std::int64_t i : indices) required[static_cast<std::size_t>(i)] = true;
  joint[0] = 1;
  for (std::int64_t i = 1; i <= last; ++i) {
    for (std::size_t k = 1; k <= pmf.size(); ++k) {
      if (i < static_cast<std::int64_t>(k)) continue;
      bool skips_required = false;
      for (std::int64_t mid = i - static_cast<std::int64_t>(k) + 1; mid < i; ++mid) {
        if (required[static_cast<std::size_t>(mid)]) {
          skips_required = true;
          break;
        }
      }
      if (skips_required) continue;
      joint[static_cast<std::size_t>(i)] += pmf[k - 1] * den_pow[k - 1] *
                                            joint[static_cast<std::size_t>(i - k)];
    }
  }
  out.joint_num = joint[static_cast<std::size_t>(last)];

  // Product formula over the gaps, renormalized to den^last.
  __int128 product = 1;
  std::int64_t used = 0;
  std::int64_t prev = 0;
  for (const std::int64_t i : indices) {
    product *= hit[static_cast<std::size_t>(i - prev)];
    used += i - prev;
    prev = i;
  }
  out.product_num = product;
  (void)used;  // gaps sum to `last`, same denominator power
  out.equal = (out.joint_num == out.product_num);
  return out;
}

MomentReport moment_mn(const std::vector<RenewalTrace>& traces, int k, double alpha,
                       double slack) {
  if (traces.empty()) throw std::domain_error("moment_mn: empty ensemble");
  MomentReport report;
  double sum = 0.0;
  for (const RenewalTrace& t : traces) {
    sum += std::pow(static_cast<double>(t.m_n), k);
  }
  report.mean_mk = sum / static_cast<double>(traces.size());
  const double n = static_cast<double>(traces.front().horizon);
  report.log_n_mean = std::log(report.mean_mk) / std::log(n);
  if (std::isnan(alpha)) {
    report.bound = std::nan("");
    report.bounded = true;
    return report;
  }
  report.bound = static_cast<double>(k) * (1.0 - alpha) + slack;
  report.bounded = report.log_n_mean <= report.bound;
  return report;
}

double beta_reference_cdf(double x, double alpha) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(1.0 - alpha, alpha, x);
}

AgeLawReport age_fraction_ecdf(const std::vector<RenewalTrace>& traces, double alpha) {
  if (traces.size() < 1000) {
    throw std::domain_error("age_fraction_ecdf: need at least 10^3 traces");
  }
  AgeLawReport report;
  report.age_fractions.reserve(traces.size());
  for (const RenewalTrace& t : traces) {
    report.age_fractions.push_back(static_cast<double>(t.age) /
                                   static_cast<double>(t.horizon));
  }
  std::sort(report.age_fractions.begin(), report.age_fractions.end());
  report.ks = ks_distance(report.age_fractions,
                          [alpha](double x) { return beta_reference_cdf(x, alpha); });
  return report;
}

TailEstimate tail_ratio_exponent(const StatSampler& sampler,
                                 const std::vector<std::int64_t>& thresholds,
                                 std::int64_t n_samples, std::uint64_t seed,
                                 int workers) {
  if (thresholds.size() < 2) {
    throw std::domain_error("tail_ratio_exponent: need at least two thresholds");
  }
  for (std::size_t s = 1; s < thresholds.size(); ++s) {
    if (thresholds[s] != 2 * thresholds[s - 1]) {
      throw std::domain_error("tail_ratio_exponent: thresholds must double");
    }
  }
  TailEstimate est;
  est.n_samples = n_samples;
  est.cap = 2 * thresholds.back();

  // Count survivors per threshold; sampling parallelizes over chunks
  // with replica-indexed seeds, folded in index order.
  const std::int64_t chunk = 4096;
  const std::int64_t n_chunks = (n_samples + chunk - 1) / chunk;
  const auto counts = run_replicas(n_chunks, workers, [&](std::int64_t c) {
    std::vector<std::int64_t> local(thresholds.size(), 0);
    const std::int64_t lo = c * chunk;
    const std::int64_t hi = std::min(n_samples, lo + chunk);
    for (std::int64_t r = lo; r < hi; ++r) {
      const std::int64_t x = sampler(seed, r, est.cap);
      for (std::size_t s = 0; s < thresholds.size(); ++s) {
        if (x > thresholds[s]) ++local[s];
      }
    }
    return local;
  });
  std::vector<std::int64_t> survivors(thresholds.size(), 0);
  for (const auto& local : counts) {
    for (std::size_t s = 0; s < thresholds.size(); ++s) survivors[s] += local[s];
  }

  const double ln2 = std::log(2.0);
  double weight_sum = 0.0, weighted = 0.0;
  est.steps.resize(thresholds.size());
  for (std::size_t s = 0; s < thresholds.size(); ++s) {
    TailStep& step = est.steps[s];
    step.threshold = thresholds[s];
    step.survivors = survivors[s];
    step.p_hat = static_cast<double>(survivors[s]) / static_cast<double>(n_samples);
    step.p_stderr =
        std::sqrt(step.p_hat * (1.0 - step.p_hat) / static_cast<double>(n_samples));
    if (s + 1 < thresholds.size() && survivors[s] > 0 && survivors[s + 1] > 0) {
      const double q = static_cast<double>(survivors[s + 1]) /
                       static_cast<double>(survivors[s]);
      step.alpha_step = -std::log2(q);
      // Conditional binomial: survivors[s+1] | survivors[s] ~ Bin(., q).
      step.alpha_stderr =
          std::sqrt((1.0 - q) / (static_cast<double>(survivors[s]) * q)) / ln2;
      const double w = 1.0 / (step.alpha_stderr * step.alpha_stderr);
      weight_sum += w;
      weighted += w * step.alpha_step;
    }
  }
  if (weight_sum > 0.0) {
    est.alpha_hat = weighted / weight_sum;
    est.stderr = std::sqrt(1.0 / weight_sum);
  }
  return est;
}

Cov2 empirical_cov(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2) throw std::domain_error("empirical_cov: need >= 2 samples");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : samples) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(samples.size());
  my /= static_cast<double>(samples.size());
  Cov2 cov;
  for (const auto& [x, y] : samples) {
    cov.xx += (x - mx) * (x - mx);
    cov.xy += (x - mx) * (y - my);
    cov.yy += (y - my) * (y - my);
  }
  const double denom = static_cast<double>(samples.size()) - 1.0;
  cov.xx /= denom;
  cov.xy /= denom;
  cov.yy /= denom;
  return cov;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("ks_distance: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
  }
  return ks;
}

}  // namespace fkb
