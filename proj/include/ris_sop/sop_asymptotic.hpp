#pragma once

#include "ris_sop/core_model.hpp"
#include "ris_sop/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ris_sop {

struct AsymptoticFloor {
    Scheme scheme;
    double floor;
    // Per-element exponential rate of the dominant single-user component.
    double decay_rate_beta;
    // (beta1, beta2) of the SS expression; zero for the other schemes.
    std::pair<double, double> decay_rates_ss;
    std::vector<std::string> warnings;
};

// Raw evaluators: ratio = zeta_SU / zeta_SE, rho = 2^R_th.
double single_user_floor(int N, int L, double rho, double ratio);
double ss_floor(int N, int M, int L, double rho, double ratio);
double single_user_beta(int N, double rho, double ratio);

AsymptoticFloor sop_single_hsnr(const Scenario& s);
AsymptoticFloor sop_ss_hsnr(const Scenario& s);
AsymptoticFloor sop_os_hsnr(const Scenario& s);
// SS expression with K*M users.
AsymptoticFloor sop_best_pair_hsnr(const Scenario& s);

} // namespace ris_sop
