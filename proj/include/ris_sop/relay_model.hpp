#pragma once

#include "ris_sop/core_model.hpp"
#include "ris_sop/types.hpp"

namespace ris_sop {

enum class RelayVariant { DirectLink, NoDirectLink };

struct RelayBudget {
    double lambda_SU;
    double lambda_SR;
    double lambda_RU;
    double lambda_E;
    double rho;      // 2^{2 R_th}
    double gamma0;   // P/N0, linear

    double lambda_RU_m(int m) const { return lambda_RU / m; }
    double lambda_E_l(int l) const { return lambda_E / l; }
};

// Relay placed at the RIS location; path losses follow direct_path_loss with exponent upsilon.
RelayBudget relay_budget(const Scenario& s, double p_over_n0);

double relay_user_cdf(double x, const RelayBudget& rb, int M, RelayVariant variant);

double sop_relay(const RelayBudget& rb, int M, int L, RelayVariant variant);
double sop_relay_quadrature(const RelayBudget& rb, int M, int L, RelayVariant variant);

struct CrossoverResult {
    bool found;
    int n;
    double ris_sop;
    double relay_sop;
};

inline constexpr int kCrossoverMaxN = 4096;

// Smallest N whose RIS SOP (closed form) falls below the relay SOP at the scenario's geometry.
CrossoverResult crossover_n(const Scenario& s, double p_over_n0, Scheme ris_scheme,
                            RelayVariant variant, int n_max = kCrossoverMaxN);

} // namespace ris_sop
