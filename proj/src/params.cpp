#include "fkb/params.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace fkb {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

ModelParams params_from_p(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::domain_error("params_from_p: p must lie in (0, 1/2)");
  }
  ModelParams out;
  out.p = p;
  out.q = 4.0 * p * p / ((1.0 - p) * (1.0 - p));
  // q = 2 + 2cos(8*pi/kappa) with 8*pi/kappa in (pi, 2*pi), so the
  // principal arccos branch needs the 2*pi - . reflection.
  out.kappa = 8.0 * kPi / (2.0 * kPi - std::acos((out.q - 2.0) / 2.0));
  out.mu = out.kappa / 8.0;
  out.mu_prime = out.kappa / (4.0 * (out.kappa - 2.0));
  out.sym_probs = {0.25, 0.25, (1.0 - p) / 4.0, (1.0 - p) / 4.0, p / 2.0};
  return out;
}

ModelParams params_from_q(double q) {
  if (!(q > 0.0 && q < 4.0)) {
    throw std::domain_error("params_from_q: q must lie in (0, 4)");
  }
  const double sq = std::sqrt(q);
  return params_from_p(sq / (2.0 + sq));
}

ModelParams params_from_kappa(double kappa) {
  if (!(kappa > 4.0 && kappa < 8.0)) {
    throw std::domain_error("params_from_kappa: kappa must lie in (4, 8)");
  }
  const double s = std::sqrt(2.0 + 2.0 * std::cos(8.0 * kPi / kappa));
  return params_from_p(s / (2.0 + s));
}

double mu_from_arctan(double p) {
  return kPi / (2.0 * (kPi - std::atan(std::sqrt(1.0 - 2.0 * p) / p)));
}

double mu_prime_from_arctan(double p) {
  return kPi / (2.0 * (kPi + std::atan(std::sqrt(1.0 - 2.0 * p) / p)));
}

std::string params_to_json(const ModelParams& params) {
  nlohmann::json j;
  j["p"] = params.p;
  j["q"] = params.q;
  j["kappa"] = params.kappa;
  j["mu"] = params.mu;
  j["mu_prime"] = params.mu_prime;
  return j.dump();
}

ModelParams params_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.contains("p")) {
    throw std::invalid_argument("params_from_json: key \"p\" is required");
  }
  return params_from_p(j["p"].get<double>());
}

}  // namespace fkb
