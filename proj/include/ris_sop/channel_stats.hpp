#pragma once

#include <vector>

namespace ris_sop {

// Below this element count the Gaussian approximation of the cascaded channel is flagged.
inline constexpr int kCltWarningFloor = 16;

struct CltParams {
    double mu_U;
    double sigma_U;
    double xi;
    double q_tail;   // Q(mu_U / sigma_U) = 1 - 1/xi
    bool below_clt_floor;
};

CltParams clt_params(int N, double eta);

enum class QModel { Exact, ThreeExp };

// F(x) = 1 - xi Q((sqrt(x/gbar) - mu)/sigma), evaluated as xi (Q(-a) - Q(mu/sigma)) to
// avoid cancellation near x = 0.
double user_snr_cdf(double x, double gbar_U, const CltParams& clt, QModel model = QModel::Exact);

double best_user_cdf(double x, double gbar_U, const CltParams& clt, int M,
                     QModel model = QModel::Exact);
// Alternating binomial expansion; used only to validate the term structure.
double best_user_cdf_expanded(double x, double gbar_U, const CltParams& clt, int M);
double best_pair_cdf(double x, double gbar_U, const CltParams& clt, int K, int M,
                     QModel model = QModel::Exact);

struct EveTerm {
    double weight;   // (-1)^{l+1} C(L, l)
    double mean;     // lambda_E / l
};

struct EveMixture {
    int L;
    double lambda_E;
    std::vector<EveTerm> terms;
};

EveMixture make_eve_mixture(int L, double lambda_E);

double eve_max_cdf(double x, const EveMixture& mix);
double eve_max_cdf_expanded(double x, const EveMixture& mix);
double eve_max_pdf(double x, const EveMixture& mix);
double eve_max_pdf_expanded(double x, const EveMixture& mix);

} // namespace ris_sop
