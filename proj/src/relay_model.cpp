#include "ris_sop/relay_model.hpp"

#include "ris_sop/channel_stats.hpp"
#include "ris_sop/quadrature.hpp"
#include "ris_sop/sop_analytic.hpp"
#include "ris_sop/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ris_sop {

namespace {

double signed_binomial(int n, int k) { return ((k % 2 == 1) ? 1.0 : -1.0) * binomial(n, k); }

// g(b) = exp(-c b) / (1 + k b): Laplace-type transform of a rate-b exponential survival
// function through the secrecy threshold against an eavesdropper of mean lambda_l.
struct Transform {
    double c;   // rho - 1
    double k;   // rho * lambda_l

    double operator()(double b) const { return std::exp(-c * b) / (1.0 + k * b); }

    // (g(a) - g(b)) / (a - b), with a Taylor expansion about b for near-coincident rates.
    double divided_difference(double a, double b) const
    {
        const double d = a - b;
        const double q = 1.0 / (1.0 + k * b);
        const double h = -c - k * q;
        if (std::fabs(d) * (c + k * q) >= 1e-4) return ((*this)(a) - (*this)(b)) / d;
        const double g = (*this)(b);
        const double h1 = k * k * q * q;
        const double h2 = -2.0 * k * k * k * q * q * q;
        const double g1 = g * h;
        const double g2 = g * (h * h + h1);
        const double g3 = g * (h * h * h + 3.0 * h * h1 + h2);
        return g1 + g2 * d / 2.0 + g3 * d * d / 6.0;
    }
};

// (exp(-a x) - exp(-b x)) / (1 - lambda_SU a) with b = 1/lambda_SU, stable when a ~ b.
double mrc_term(double x, double a, double lambda_SU)
{
    const double b = 1.0 / lambda_SU;
    const double d = a - b;
    const double z = -d * x;
    if (std::fabs(z) > 1.0) return (std::exp(-a * x) - std::exp(-b * x)) / (1.0 - lambda_SU * a);
    const double ratio = z == 0.0 ? 1.0 : std::expm1(z) / z;
    return std::exp(-b * x) * (x / lambda_SU) * ratio;
}

void check_budget(const RelayBudget& rb, int M, int L)
{
    if (M < 1 || L < 1) throw std::domain_error("M and L must be >= 1");
    if (!(rb.lambda_SU > 0.0 && rb.lambda_SR > 0.0 && rb.lambda_RU > 0.0 && rb.lambda_E > 0.0)) {
        throw std::domain_error("relay budget means must be positive");
    }
    if (!(rb.rho >= 1.0)) throw std::domain_error("rho must be >= 1");
}

} // namespace

RelayBudget relay_budget(const Scenario& s, double p_over_n0)
{
    if (!(p_over_n0 > 0.0)) throw std::domain_error("P/N0 must be positive");
    const Geometry g = derive_geometry(s);
    const double wl = s.wavelength();
    RelayBudget rb{};
    rb.gamma0 = p_over_n0;
    rb.lambda_SU = 2.0 * s.alpha * p_over_n0 * direct_path_loss(wl, g.d_SU, s.upsilon);
    rb.lambda_SR = 2.0 * s.alpha * p_over_n0 * direct_path_loss(wl, g.d_SR, s.upsilon);
    rb.lambda_RU = 2.0 * (1.0 - s.alpha) * p_over_n0 * direct_path_loss(wl, g.d_RU, s.upsilon);
    rb.lambda_E = 2.0 * (1.0 - s.alpha) * p_over_n0 * direct_path_loss(wl, g.d_RE, s.upsilon);
    rb.rho = std::exp2(2.0 * s.R_th);
    return rb;
}

double relay_user_cdf(double x, const RelayBudget& rb, int M, RelayVariant variant)
{
    if (!(x >= 0.0)) throw std::domain_error("SNR argument must be >= 0");
    check_budget(rb, M, 1);
    if (variant == RelayVariant::NoDirectLink) {
        // min(SR, max_m RU_m)
        const double e = std::exp(-x / rb.lambda_SR);
        return -std::expm1(-x / rb.lambda_SR) + e * ipow(-std::expm1(-x / rb.lambda_RU), M);
    }
    CompensatedSum s;
    s += -std::expm1(-x / rb.lambda_SU);
    for (int m = 1; m <= M; ++m) {
        const double a = 1.0 / rb.lambda_SR + m / rb.lambda_RU;
        s += -signed_binomial(M, m) * mrc_term(x, a, rb.lambda_SU);
    }
    return std::clamp(s.value(), 0.0, 1.0);
}

double sop_relay(const RelayBudget& rb, int M, int L, RelayVariant variant)
{
    check_budget(rb, M, L);
    const double b0 = 1.0 / rb.lambda_SU;
    CompensatedSum outer;
    for (int l = 1; l <= L; ++l) {
        const Transform g{rb.rho - 1.0, rb.rho * rb.lambda_E_l(l)};
        CompensatedSum inner;
        if (variant == RelayVariant::DirectLink) inner += g(b0);
        for (int m = 1; m <= M; ++m) {
            const double a = 1.0 / rb.lambda_SR + m / rb.lambda_RU;
            const double cm = signed_binomial(M, m);
            if (variant == RelayVariant::DirectLink) {
                inner += -cm * g.divided_difference(a, b0) / rb.lambda_SU;
            } else {
                inner += cm * g(a);
            }
        }
        outer += signed_binomial(L, l) * inner.value();
    }
    const double v = 1.0 - outer.value();
    if (!std::isfinite(v)) throw std::runtime_error("relay SOP is not finite");
    return std::clamp(v, 0.0, 1.0);
}

double sop_relay_quadrature(const RelayBudget& rb, int M, int L, RelayVariant variant)
{
    check_budget(rb, M, L);
    const EveMixture mix = make_eve_mixture(L, rb.lambda_E);
    const double rho = rb.rho;
    const double x_max = rb.lambda_E * (50.0 + 10.0 * std::log(std::max(L, 2)));
    auto integrand = [&](double x) {
        return relay_user_cdf(rho * x + rho - 1.0, rb, M, variant) * eve_max_pdf(x, mix);
    };
    std::vector<double> breaks;
    for (double k : {0.01, 0.1, 1.0, 5.0, 20.0}) breaks.push_back(k * rb.lambda_E);
    const double scale = std::min({rb.lambda_SU, rb.lambda_SR, rb.lambda_RU / M});
    for (double k : {0.1, 1.0, 10.0}) breaks.push_back((k * scale - (rho - 1.0)) / rho);
    return std::clamp(integrate_piecewise(integrand, 0.0, x_max, breaks, {1e-14, 1e-10}), 0.0,
                      1.0);
}

CrossoverResult crossover_n(const Scenario& s, double p_over_n0, Scheme ris_scheme,
                            RelayVariant variant, int n_max)
{
    if (n_max < 1) throw std::domain_error("n_max must be >= 1");
    const double relay = sop_relay(relay_budget(s, p_over_n0), s.M, s.L, variant);
    auto ris = [&](int n) {
        SopQuery q;
        q.scenario = s;
        q.scenario.N = n;
        q.p_over_n0 = p_over_n0;
        q.scheme = ris_scheme;
        q.method = Method::ClosedForm;
        return sop_value(q);
    };
    if (relay >= 1.0) return {true, 1, ris(1), relay};
    int lo = 1;
    double ris_lo = ris(lo);
    if (ris_lo < relay) return {true, 1, ris_lo, relay};
    int hi = n_max;
    double ris_hi = ris(hi);
    if (!(ris_hi < relay)) return {false, n_max, ris_hi, relay};
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        const double v = ris(mid);
        if (v < relay) {
            hi = mid;
            ris_hi = v;
        } else {
            lo = mid;
        }
    }
    return {true, hi, ris_hi, relay};
}

} // namespace ris_sop
