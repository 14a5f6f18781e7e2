#pragma once

#include "ris_sop/channel_stats.hpp"
#include "ris_sop/core_model.hpp"
#include "ris_sop/special_fn.hpp"
#include "ris_sop/types.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ris_sop {

class NumericalInstability : public std::runtime_error {
public:
    NumericalInstability(const std::string& term, int m, int l)
        : std::runtime_error("non-finite value in " + term + " (m=" + std::to_string(m) +
                             ", l=" + std::to_string(l) + ")"),
          term_(term), m_(m), l_(l)
    {
    }
    const std::string& term() const { return term_; }
    int m() const { return m_; }
    int l() const { return l_; }

private:
    std::string term_;
    int m_;
    int l_;
};

struct SopQuery {
    Scenario scenario;
    double p_over_n0 = 1.0;   // linear
    Scheme scheme = Scheme::SS;
    Method method = Method::ClosedForm;
};

enum class TheoremCase {
    LowSnr,    // gbar_U <= (rho-1)/mu_U^2: the Q argument is never negative
    HighSnr,   // split at x0 = (mu_U^2 gbar_U - (rho-1)) / rho
};

struct TermBreakdown {
    // Indexed [m-1][l-1]. I_plus and I_minus are empty in the LowSnr case.
    std::vector<std::vector<double>> J_plus;
    std::vector<std::vector<double>> I_plus;
    std::vector<std::vector<double>> I_minus;
    TheoremCase branch = TheoremCase::LowSnr;
    double raw_sop = 0.0;
    std::vector<std::string> warnings;
};

struct SopResult {
    double sop;
    TermBreakdown breakdown;
};

// Per-vector terms; both include the factor 1/2 of the Q surrogate exponentials.
// cal_j_plus integrates over x >= 0, cal_i_plus over x >= x0 (HighSnr case only).
double cal_j_plus(const MultinomialVector& k, int l, const LinkBudget& budget,
                  const CltParams& clt);
double cal_i_plus(const MultinomialVector& k, int l, const LinkBudget& budget,
                  const CltParams& clt);

// Aggregates over S_m: J_+^{(m,l)}, I_+^{(m,l)} and I_-^{(m,l)}.
double j_plus(int m, int l, const LinkBudget& budget, const CltParams& clt);
double i_plus(int m, int l, const LinkBudget& budget, const CltParams& clt);
double i_minus(int m, int l, const LinkBudget& budget, const CltParams& clt);

TheoremCase theorem_case(const LinkBudget& budget, const CltParams& clt);
// x0 = (mu_U^2 gbar_U - (rho-1)) / rho; negative in the LowSnr case.
double split_point(const LinkBudget& budget, const CltParams& clt);

// SingleUser, SS and BestPair (as SS with K*M users).
SopResult sop_closed(const SopQuery& q);

// Numerical integration of P[(1+G_U)/(1+G_E) < rho] with either the exact Q or the
// three-exponential surrogate inside the user CDF. Any RIS scheme except NOMA.
double sop_quadrature(const SopQuery& q, bool use_exact_q);

// Single-user SOP raised to M. Quadrature method uses the exact-Q integrand.
double sop_os(const SopQuery& q);

// SS closed form on a scenario with K*M users.
double sop_best_pair(const SopQuery& q, int K);

// Dispatch on q.scheme and q.method (ClosedForm or Quadrature).
double sop_value(const SopQuery& q);

// Effective user count entering the order statistic for a scheme.
int effective_user_count(const Scenario& s, Scheme scheme);

} // namespace ris_sop
