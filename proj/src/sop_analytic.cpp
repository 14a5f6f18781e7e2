#include "ris_sop/sop_analytic.hpp"

#include "ris_sop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ris_sop {

namespace {

struct TermGeometry {
    double s;        // sigma_k^2
    double lambda;   // lambda_E / l
    double upsilon;
    double prefactor;
    double coef;     // mu sqrt(pi) / (s sqrt(Upsilon))
    double e0;       // exponent multiplying the Q term
};

TermGeometry term_geometry(const MultinomialVector& k, int l, const LinkBudget& b,
                           const CltParams& clt)
{
    if (l < 1) throw std::domain_error("l must be >= 1");
    TermGeometry t{};
    const double mu = clt.mu_U;
    const double g = b.gbar_U;
    const double rho = b.rho;
    t.s = clt.sigma_U * clt.sigma_U / k.rate_sum;
    t.lambda = b.lambda_E_l(l);
    const double rl = rho * t.lambda;
    t.upsilon = 1.0 / (2.0 * t.s) + g / rl;
    t.prefactor = g / (2.0 * rl * t.upsilon);
    t.coef = mu * std::sqrt(std::numbers::pi) / (t.s * std::sqrt(t.upsilon));
    t.e0 = (rho - 1.0) / rl - mu * mu * g / (2.0 * t.s * rl * t.upsilon);
    for (double v : {t.s, t.upsilon, t.prefactor, t.coef, t.e0}) {
        if (!std::isfinite(v)) throw NumericalInstability("term setup", k.k[0] + k.k[1] + k.k[2], l);
    }
    return t;
}

double checked(double v, const char* term, int m, int l)
{
    if (!std::isfinite(v)) throw NumericalInstability(term, m, l);
    return v;
}

int order_of(const MultinomialVector& k) { return k.k[0] + k.k[1] + k.k[2]; }

struct TermTable {
    std::vector<std::vector<double>> J;
    std::vector<std::vector<double>> I;
};

TermTable build_terms(int M, int L, const LinkBudget& b, const CltParams& clt, bool need_i)
{
    TermTable t;
    t.J.assign(static_cast<std::size_t>(M), std::vector<double>(static_cast<std::size_t>(L), 0.0));
    if (need_i) t.I = t.J;
    for (int m = 1; m <= M; ++m) {
        const auto ks = enumerate_multinomial(m);
        for (int l = 1; l <= L; ++l) {
            CompensatedSum sj;
            CompensatedSum si;
            for (const auto& k : ks) {
                const double c = k.coefficient * k.weight_product();
                sj += c * cal_j_plus(k, l, b, clt);
                if (need_i) si += c * cal_i_plus(k, l, b, clt);
            }
            t.J[m - 1][l - 1] = checked(sj.value(), "J_plus", m, l);
            if (need_i) t.I[m - 1][l - 1] = checked(si.value(), "I_plus", m, l);
        }
    }
    return t;
}

double i_minus_from_table(int m, int l, const TermTable& t, double x0, double lambda_l)
{
    CompensatedSum s;
    s += -std::expm1(-x0 / lambda_l);
    for (int j = 1; j <= m; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        s += sign * binomial(m, j) * (t.J[j - 1][l - 1] - t.I[j - 1][l - 1]);
    }
    return checked(s.value(), "I_minus", m, l);
}

Scenario with_users(const Scenario& s, int M)
{
    Scenario out = s;
    out.M = M;
    return out;
}

} // namespace

double cal_j_plus(const MultinomialVector& k, int l, const LinkBudget& b, const CltParams& clt)
{
    const TermGeometry t = term_geometry(k, l, b, clt);
    const double u0 = std::sqrt((b.rho - 1.0) / b.gbar_U);
    const double v = clt.mu_U / (2.0 * t.s * t.upsilon);
    const double d = u0 - clt.mu_U;
    const double first = std::exp(-d * d / (2.0 * t.s));
    const double second = t.coef * exp_times_q(t.e0, std::sqrt(2.0 * t.upsilon) * (u0 - v));
    return checked(t.prefactor * (first + second), "cal_j_plus", order_of(k), l);
}

double cal_i_plus(const MultinomialVector& k, int l, const LinkBudget& b, const CltParams& clt)
{
    if (theorem_case(b, clt) != TheoremCase::HighSnr) {
        throw std::domain_error("I_plus is defined only when gbar_U > (rho-1)/mu_U^2");
    }
    const TermGeometry t = term_geometry(k, l, b, clt);
    const double mu = clt.mu_U;
    const double rl = b.rho * t.lambda;
    const double first = std::exp(-(mu * mu * b.gbar_U - (b.rho - 1.0)) / rl);
    const double arg = std::numbers::sqrt2 * mu * b.gbar_U / (rl * std::sqrt(t.upsilon));
    const double second = t.coef * exp_times_q(t.e0, arg);
    return checked(t.prefactor * (first + second), "cal_i_plus", order_of(k), l);
}

double j_plus(int m, int l, const LinkBudget& b, const CltParams& clt)
{
    CompensatedSum s;
    for (const auto& k : enumerate_multinomial(m)) {
        s += k.coefficient * k.weight_product() * cal_j_plus(k, l, b, clt);
    }
    return checked(s.value(), "J_plus", m, l);
}

double i_plus(int m, int l, const LinkBudget& b, const CltParams& clt)
{
    CompensatedSum s;
    for (const auto& k : enumerate_multinomial(m)) {
        s += k.coefficient * k.weight_product() * cal_i_plus(k, l, b, clt);
    }
    return checked(s.value(), "I_plus", m, l);
}

double i_minus(int m, int l, const LinkBudget& b, const CltParams& clt)
{
    if (theorem_case(b, clt) != TheoremCase::HighSnr) {
        throw std::domain_error("I_minus is defined only when gbar_U > (rho-1)/mu_U^2");
    }
    const TermTable t = build_terms(m, l, b, clt, true);
    return i_minus_from_table(m, l, t, split_point(b, clt), b.lambda_E_l(l));
}

TheoremCase theorem_case(const LinkBudget& b, const CltParams& clt)
{
    return b.gbar_U <= (b.rho - 1.0) / (clt.mu_U * clt.mu_U) ? TheoremCase::LowSnr
                                                            : TheoremCase::HighSnr;
}

double split_point(const LinkBudget& b, const CltParams& clt)
{
    return (clt.mu_U * clt.mu_U * b.gbar_U - (b.rho - 1.0)) / b.rho;
}

int effective_user_count(const Scenario& s, Scheme scheme)
{
    switch (scheme) {
    case Scheme::SingleUser: return 1;
    case Scheme::SS:
    case Scheme::OS: return s.M;
    case Scheme::BestPair: return s.K * s.M;
    default: throw std::invalid_argument("scheme has no RIS order statistic");
    }
}

SopResult sop_closed(const SopQuery& q)
{
    if (q.scheme == Scheme::BestPair) {
        SopQuery ss = q;
        ss.scheme = Scheme::SS;
        ss.scenario = with_users(q.scenario, q.scenario.K * q.scenario.M);
        return sop_closed(ss);
    }
    if (q.scheme != Scheme::SingleUser && q.scheme != Scheme::SS) {
        throw std::invalid_argument("sop_closed supports SingleUser, SS and BestPair");
    }
    const Scenario& s = q.scenario;
    const int M = effective_user_count(s, q.scheme);
    const int L = s.L;
    const LinkBudget b = ris_link_budget(s, q.p_over_n0);
    const CltParams clt = clt_params(s.N, s.eta);

    SopResult r{};
    TermBreakdown& br = r.breakdown;
    if (clt.below_clt_floor) {
        br.warnings.push_back("N < " + std::to_string(kCltWarningFloor) +
                              ": Gaussian approximation of the cascaded channel is coarse");
    }
    br.branch = theorem_case(b, clt);
    const bool high = br.branch == TheoremCase::HighSnr;
    TermTable t = build_terms(M, L, b, clt, high);
    const double x0 = split_point(b, clt);

    br.J_plus = t.J;
    if (high) {
        br.I_plus = t.I;
        br.I_minus.assign(static_cast<std::size_t>(M), std::vector<double>(static_cast<std::size_t>(L)));
        for (int m = 1; m <= M; ++m) {
            for (int l = 1; l <= L; ++l) {
                br.I_minus[m - 1][l - 1] = i_minus_from_table(m, l, t, x0, b.lambda_E_l(l));
            }
        }
    }

    CompensatedSum outer;
    for (int l = 1; l <= L; ++l) {
        CompensatedSum inner;
        for (int m = 1; m <= M; ++m) {
            const double p = high ? br.I_minus[m - 1][l - 1] + br.I_plus[m - 1][l - 1]
                                  : br.J_plus[m - 1][l - 1];
            const double sign = ((m + l) % 2 == 0) ? 1.0 : -1.0;
            inner += sign * binomial(M, m) * ipow(clt.xi, m) * p;
        }
        outer += binomial(L, l) * inner.value();
    }
    br.raw_sop = checked(1.0 - outer.value(), "sop", M, L);
    r.sop = std::clamp(br.raw_sop, 0.0, 1.0);
    return r;
}

double sop_quadrature(const SopQuery& q, bool use_exact_q)
{
    if (q.scheme == Scheme::OS) {
        SopQuery single = q;
        single.scheme = Scheme::SingleUser;
        return ipow(sop_quadrature(single, use_exact_q), q.scenario.M);
    }
    const Scenario& s = q.scenario;
    const int M = effective_user_count(s, q.scheme);
    const LinkBudget b = ris_link_budget(s, q.p_over_n0);
    const CltParams clt = clt_params(s.N, s.eta);
    const EveMixture mix = make_eve_mixture(s.L, b.lambda_E);
    const QModel model = use_exact_q ? QModel::Exact : QModel::ThreeExp;
    const double rho = b.rho;

    const double x_max = b.lambda_E * (50.0 + 10.0 * std::log(std::max(s.L, 2)));
    // Tail mass of the eavesdropper maximum beyond x_max is at most L exp(-x_max / lambda_E).
    const double tail = s.L * std::exp(-x_max / b.lambda_E);
    if (!(tail < 1e-12)) throw std::logic_error("quadrature truncation tail exceeds 1e-12");

    auto integrand = [&](double x) {
        return best_user_cdf(rho * x + rho - 1.0, b.gbar_U, clt, M, model) * eve_max_pdf(x, mix);
    };

    std::vector<double> breaks;
    for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double u = clt.mu_U + k * clt.sigma_U;
        if (u > 0.0) breaks.push_back((b.gbar_U * u * u - (rho - 1.0)) / rho);
    }
    for (double k : {0.1, 1.0, 5.0, 20.0}) breaks.push_back(k * b.lambda_E);
    return std::clamp(integrate_piecewise(integrand, 0.0, x_max, breaks), 0.0, 1.0);
}

double sop_os(const SopQuery& q)
{
    SopQuery single = q;
    single.scheme = Scheme::SingleUser;
    const double p = q.method == Method::Quadrature ? sop_quadrature(single, true)
                                                    : sop_closed(single).sop;
    return ipow(p, q.scenario.M);
}

double sop_best_pair(const SopQuery& q, int K)
{
    if (K < 1) throw std::domain_error("K must be >= 1");
    SopQuery ss = q;
    ss.scheme = Scheme::SS;
    ss.scenario = with_users(q.scenario, K * q.scenario.M);
    return sop_closed(ss).sop;
}

double sop_value(const SopQuery& q)
{
    if (q.method == Method::Quadrature) return sop_quadrature(q, true);
    if (q.method != Method::ClosedForm) throw std::invalid_argument("sop_value handles ClosedForm and Quadrature");
    if (q.scheme == Scheme::OS) return sop_os(q);
    if (q.scheme == Scheme::BestPair) return sop_best_pair(q, q.scenario.K);
    return sop_closed(q).sop;
}

} // namespace ris_sop
