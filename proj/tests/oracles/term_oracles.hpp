#pragma once
// Independent quadrature oracles for the closed-form SOP terms. Written against the
// defining integrals only; shares nothing with the library besides the input structs.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace oracle {

struct TermInputs {
    double mu;        // CLT mean of the cascaded amplitude
    double sigma;     // CLT standard deviation
    double gbar_U;    // average user SNR per unit squared amplitude
    double lambda_l;  // lambda_E / l
    double rho;
};

inline constexpr std::array<double, 3> kW{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0};
inline constexpr std::array<double, 3> kP{1.0, 4.0, 4.0 / 3.0};

// sum_i (w_i / 2) exp(-p_i a^2 / 2), evaluated for any sign of a.
inline double q3_form(double a)
{
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += 0.5 * kW[i] * std::exp(-kP[i] * a * a / 2.0);
    return s;
}

inline double q_arg(double x, const TermInputs& t)
{
    return (std::sqrt((t.rho * x + t.rho - 1.0) / t.gbar_U) - t.mu) / t.sigma;
}

// x at which the Q argument equals a.
inline double x_at_arg(double a, const TermInputs& t)
{
    const double u = t.mu + a * t.sigma;
    if (u <= 0.0) return -1.0;
    return (u * u * t.gbar_U - (t.rho - 1.0)) / t.rho;
}

inline double split(const TermInputs& t) { return x_at_arg(0.0, t); }

template <class F>
double integrate(F f, double a, double b, const TermInputs& t, double rate_scale = 1.0)
{
    using boost::math::quadrature::gauss_kronrod;
    std::vector<double> pts{a, b};
    for (double z : {-12.0, -8.0, -6.0, -4.0, -3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0,
                     4.0, 6.0, 8.0, 12.0}) {
        pts.push_back(x_at_arg(z / std::sqrt(rate_scale), t));
    }
    for (double k : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
        pts.push_back(k * t.lambda_l);
    }
    std::erase_if(pts, [&](double x) { return !(x >= a && x <= b); });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        // Unit interval per segment: the error estimate is not scaled by the width.
        const double lo = pts[i];
        const double w = pts[i + 1] - lo;
        auto g = [&](double u) { return f(lo + w * u) * w; };
        total += gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-10);
    }
    return total;
}

inline double upper_limit(const TermInputs& t)
{
    return std::max(split(t), 0.0) + 120.0 * t.lambda_l;
}

inline double eve_density(double x, const TermInputs& t)
{
    return std::exp(-x / t.lambda_l) / t.lambda_l;
}

// Per-vector term: (1/2) E_x[exp(-rate_sum a(x)^2 / 2)] over x >= lower, x ~ Exp(lambda_l).
inline double vector_term(double rate_sum, const TermInputs& t, double lower)
{
    auto f = [&](double x) {
        const double a = q_arg(x, t);
        return 0.5 * std::exp(-rate_sum * a * a / 2.0) * eve_density(x, t);
    };
    return integrate(f, lower, upper_limit(t), t, rate_sum);
}

inline double cal_j_plus(double rate_sum, const TermInputs& t)
{
    return vector_term(rate_sum, t, 0.0);
}

inline double cal_i_plus(double rate_sum, const TermInputs& t)
{
    return vector_term(rate_sum, t, std::max(split(t), 0.0));
}

// Aggregates with the m-th power of the surrogate inside the integrand.
inline double j_plus(int m, const TermInputs& t)
{
    auto f = [&](double x) { return std::pow(q3_form(q_arg(x, t)), m) * eve_density(x, t); };
    return integrate(f, 0.0, upper_limit(t), t);
}

inline double i_minus(int m, const TermInputs& t)
{
    const double x0 = split(t);
    if (x0 <= 0.0) return 0.0;
    auto f = [&](double x) {
        return std::pow(1.0 - q3_form(q_arg(x, t)), m) * eve_density(x, t);
    };
    return integrate(f, 0.0, x0, t);
}

} // namespace oracle
