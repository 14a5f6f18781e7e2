#include "ris_sop/channel_stats.hpp"

#include "ris_sop/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ris_sop {

namespace {

void require_nonnegative(double x)
{
    if (!(x >= 0.0)) throw std::domain_error("SNR argument must be >= 0");
}

double normalized_argument(double x, double gbar_U, const CltParams& clt)
{
    return (std::sqrt(x / gbar_U) - clt.mu_U) / clt.sigma_U;
}

} // namespace

CltParams clt_params(int N, double eta)
{
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("eta must lie in (0, 1]");
    const double pi = std::numbers::pi;
    CltParams c{};
    c.mu_U = eta * N * pi / 4.0;
    c.sigma_U = eta * std::sqrt(N * (16.0 - pi * pi) / 16.0);
    const double ratio = c.mu_U / c.sigma_U;
    c.q_tail = q_exact(ratio);
    c.xi = 1.0 / q_exact(-ratio);
    c.below_clt_floor = N < kCltWarningFloor;
    return c;
}

double user_snr_cdf(double x, double gbar_U, const CltParams& clt, QModel model)
{
    require_nonnegative(x);
    const double a = normalized_argument(x, gbar_U, clt);
    double v;
    if (model == QModel::Exact) {
        v = clt.xi * (q_exact(-a) - clt.q_tail);
    } else if (a >= 0.0) {
        v = 1.0 - clt.xi * q_approx3(a);
    } else {
        v = clt.xi * (q_approx3(-a) - clt.q_tail);
    }
    return std::clamp(v, 0.0, 1.0);
}

double best_user_cdf(double x, double gbar_U, const CltParams& clt, int M, QModel model)
{
    if (M < 1) throw std::domain_error("M must be >= 1");
    return ipow(user_snr_cdf(x, gbar_U, clt, model), M);
}

double best_user_cdf_expanded(double x, double gbar_U, const CltParams& clt, int M)
{
    if (M < 1) throw std::domain_error("M must be >= 1");
    require_nonnegative(x);
    const double q = q_exact(normalized_argument(x, gbar_U, clt));
    CompensatedSum s;
    s += 1.0;
    for (int m = 1; m <= M; ++m) {
        const double sign = (m % 2 == 1) ? 1.0 : -1.0;
        s += -sign * binomial(M, m) * ipow(clt.xi * q, m);
    }
    return s.value();
}

double best_pair_cdf(double x, double gbar_U, const CltParams& clt, int K, int M, QModel model)
{
    if (K < 1) throw std::domain_error("K must be >= 1");
    return best_user_cdf(x, gbar_U, clt, K * M, model);
}

EveMixture make_eve_mixture(int L, double lambda_E)
{
    if (L < 1) throw std::domain_error("L must be >= 1");
    if (!(lambda_E > 0.0)) throw std::domain_error("lambda_E must be positive");
    EveMixture mix{L, lambda_E, {}};
    mix.terms.reserve(static_cast<std::size_t>(L));
    for (int l = 1; l <= L; ++l) {
        const double sign = (l % 2 == 1) ? 1.0 : -1.0;
        mix.terms.push_back({sign * binomial(L, l), lambda_E / l});
    }
    return mix;
}

double eve_max_cdf(double x, const EveMixture& mix)
{
    require_nonnegative(x);
    return ipow(-std::expm1(-x / mix.lambda_E), mix.L);
}

double eve_max_cdf_expanded(double x, const EveMixture& mix)
{
    require_nonnegative(x);
    CompensatedSum s;
    s += 1.0;
    for (const auto& t : mix.terms) s += -t.weight * std::exp(-x / t.mean);
    return s.value();
}

double eve_max_pdf(double x, const EveMixture& mix)
{
    require_nonnegative(x);
    const double e = std::exp(-x / mix.lambda_E);
    const double base = mix.L == 1 ? 1.0 : ipow(-std::expm1(-x / mix.lambda_E), mix.L - 1);
    return mix.L * base * e / mix.lambda_E;
}

double eve_max_pdf_expanded(double x, const EveMixture& mix)
{
    require_nonnegative(x);
    CompensatedSum s;
    for (const auto& t : mix.terms) s += t.weight * std::exp(-x / t.mean) / t.mean;
    return s.value();
}

} // namespace ris_sop
