#include "ris_sop/special_fn.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ris_sop {

namespace {

__extension__ typedef unsigned __int128 uint128;

const double kLogMax = std::log(DBL_MAX);

uint128 binomial128(int n, int k)
{
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    uint128 r = 1;
    for (int i = 0; i < k; ++i) {
        r = r * static_cast<uint128>(n - i) / static_cast<uint128>(i + 1);
    }
    return r;
}

// Modified Lentz evaluation of x + (1/2)/(x + 1/(x + (3/2)/(x + ...))).
double erfc_continued_fraction(double x)
{
    constexpr double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int n = 1; n < 2000; ++n) {
        const double a = 0.5 * n;
        d = x + a * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return f;
}

} // namespace

double q_exact(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_approx3(double x)
{
    if (std::isnan(x) || x < 0.0) throw std::domain_error("q_approx3 requires x >= 0");
    const double h = 0.5 * x * x;
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        s += 0.5 * QApproxWeights::w[i] * std::exp(-QApproxWeights::p[i] * h);
    }
    return s;
}

double q_approx3_signed(double x) { return x >= 0.0 ? q_approx3(x) : 1.0 - q_approx3(-x); }

double erfcx(double x)
{
    if (x < 5.0) return std::exp(x * x) * std::erfc(x);
    return 1.0 / (std::sqrt(std::numbers::pi) * erfc_continued_fraction(x));
}

ExpQResult exp_times_q_checked(double a, double b)
{
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::domain_error("exp_times_q requires finite arguments");
    }
    double log_factor;
    double e;
    if (b <= 0.0) {
        const double q = q_exact(b);
        if (a < kLogMax) return {std::exp(a) * q, false};
        e = a;
        log_factor = std::log(q);
    } else {
        const double z = b / std::numbers::sqrt2;
        const double factor = 0.5 * erfcx(z);
        e = a - 0.5 * b * b;
        if (e < kLogMax && e > -700.0) return {std::exp(e) * factor, false};
        log_factor = std::log(factor);
    }
    const double lv = e + log_factor;
    if (lv >= kLogMax) return {HUGE_VAL, true};
    return {std::exp(lv), false};
}

double exp_times_q(double a, double b) { return exp_times_q_checked(a, b).value; }

double MultinomialVector::sigma_k(double sigma_U) const { return sigma_U / std::sqrt(rate_sum); }

double MultinomialVector::weight_product() const
{
    double w = 1.0;
    for (std::size_t i = 0; i < 3; ++i) w *= ipow(QApproxWeights::w[i], k[i]);
    const int m = k[0] + k[1] + k[2];
    return std::ldexp(w, -(m - 1));
}

std::vector<MultinomialVector> enumerate_multinomial(int m)
{
    if (m < 1 || m > 64) throw std::domain_error("enumerate_multinomial requires 1 <= m <= 64");
    std::vector<MultinomialVector> out;
    out.reserve(static_cast<std::size_t>((m + 1) * (m + 2) / 2));
    for (int k1 = m; k1 >= 0; --k1) {
        for (int k2 = m - k1; k2 >= 0; --k2) {
            const int k3 = m - k1 - k2;
            const uint128 c = binomial128(m, k1) * binomial128(m - k1, k2);
            MultinomialVector v{};
            v.k = {k1, k2, k3};
            v.coefficient = static_cast<double>(c);
            v.rate_sum = k1 * QApproxWeights::p[0] + k2 * QApproxWeights::p[1] +
                         k3 * QApproxWeights::p[2];
            out.push_back(v);
        }
    }
    return out;
}

std::uint64_t binomial_exact(int n, int k)
{
    if (n < 0 || n > 64 || k < 0 || k > n) {
        throw std::domain_error("binomial requires 0 <= k <= n <= 64");
    }
    return static_cast<std::uint64_t>(binomial128(n, k));
}

double binomial(int n, int k) { return static_cast<double>(binomial_exact(n, k)); }

std::int64_t collapse_identity_check(int M, int m)
{
    if (m < 1 || m > M || M > 64) throw std::domain_error("collapse_identity_check requires 1 <= m <= M <= 64");
    __extension__ __int128 acc = 0;
    for (int j = m; j <= M; ++j) {
        const __int128 term = static_cast<__int128>(binomial128(M, j) * binomial128(j, m));
        acc += ((m + j) % 2 == 0) ? term : -term;
    }
    return static_cast<std::int64_t>(acc);
}

void CompensatedSum::add(double x)
{
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

double ipow(double x, int n)
{
    if (n < 0) return 1.0 / ipow(x, -n);
    double result = 1.0;
    bool first = true;
    double base = x;
    while (n > 0) {
        if (n & 1) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

} // namespace ris_sop
