#pragma once

#include <array>
#include <string>

namespace fkb {

// Model parameters. p is canonical; everything else is derived at
// construction:
//   q   = 4p^2/(1-p)^2                        (FK weight, in (0,4))
//   kappa: q = 2 + 2cos(8*pi/kappa)           (in (4,8))
//   mu  = kappa/8                             (in (1/2,1))
//   mu' = kappa/(4(kappa-2))                  (in (1/3,1/2))
// and the symbol probabilities (1/4, 1/4, (1-p)/4, (1-p)/4, p/2).
struct ModelParams {
  double p = 0.0;
  double q = 0.0;
  double kappa = 0.0;
  double mu = 0.0;
  double mu_prime = 0.0;
  std::array<double, 5> sym_probs{};  // order: b_h, b_c, o_h, o_c, o_f
};

ModelParams params_from_p(double p);
ModelParams params_from_q(double q);
ModelParams params_from_kappa(double kappa);

// Alternate closed forms of the exponents, used for cross-checking:
// mu = pi / (2(pi - atan(sqrt(1-2p)/p))), mu' with +atan instead.
double mu_from_arctan(double p);
double mu_prime_from_arctan(double p);

std::string params_to_json(const ModelParams& params);
// Accepts {"p": ...}; other keys are optional and ignored.
ModelParams params_from_json(const std::string& json_text);

}  // namespace fkb
