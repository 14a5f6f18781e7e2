#include "ris_sop/sop_asymptotic.hpp"

#include "ris_sop/channel_stats.hpp"
#include "ris_sop/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ris_sop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kA0 = (16.0 - kPi * kPi) / 16.0;

void check_inputs(int N, int M, int L, double rho, double ratio)
{
    if (N < 1 || M < 1 || L < 1) throw std::domain_error("N, M and L must be >= 1");
    if (!(rho >= 1.0) || !(ratio > 0.0)) throw std::domain_error("rho >= 1 and ratio > 0 required");
}

// Component i of the single-user floor (without the L prefactor), in log space.
double single_log_term(int N, double rho, double r, std::size_t i)
{
    const double w = QApproxWeights::w[i];
    const double p = QApproxWeights::p[i];
    const double expo = -N * kPi * kPi / (16.0 * (rho / r + 2.0 * kA0 / p));
    const double log_num = std::log(w * kA0 * kPi * std::sqrt(2.0 * kPi * rho * N * p));
    const double log_den = std::log(rho * p / r + 2.0 * kA0) +
                           0.5 * std::log((16.0 - kPi * kPi) * (rho + 2.0 * r * kA0 / p));
    return expo + log_num - log_den;
}

double single_beta_i(double rho, double r, std::size_t i)
{
    return (kPi * kPi / 16.0) / (rho / r + 2.0 * kA0 / QApproxWeights::p[i]);
}

std::size_t dominant_single_component(int N, double rho, double r)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (single_log_term(N, rho, r, i) > single_log_term(N, rho, r, best)) best = i;
    }
    return best;
}

struct SsEvaluation {
    double floor;
    double beta1;
    double beta2;
};

SsEvaluation evaluate_ss(int N, int M, int L, double rho, double r)
{
    CompensatedSum t1;
    t1 += 1.0;
    CompensatedSum t2;
    double best_log = -HUGE_VAL;
    double beta2 = 0.0;
    for (int m = 1; m <= M; ++m) {
        const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;
        const double cm = binomial(M, m);
        for (const auto& k : enumerate_multinomial(m)) {
            const double W = sign_m * cm * k.coefficient * k.weight_product();
            const double skp = k.rate_sum;
            const double A = kA0 / skp;
            const double den = rho + 2.0 * A * r;
            t1 += W * A * r / den;
            const double log_shape = std::log(A * r / (2.0 * den)) +
                                     std::log(kPi * std::sqrt(2.0 * kPi * rho * N * skp)) -
                                     0.5 * std::log((16.0 - kPi * kPi) * den);
            for (std::size_t i = 0; i < 3; ++i) {
                const double p = QApproxWeights::p[i];
                const double rate = kPi * kPi * r * (0.5 + p * A * r / rho) / (8.0 * den);
                const double log_mag = std::log(std::fabs(W) * QApproxWeights::w[i]) + log_shape - rate * N;
                t2 += (W < 0.0 ? -1.0 : 1.0) * std::exp(log_mag);
                if (log_mag > best_log) {
                    best_log = log_mag;
                    beta2 = rate;
                }
            }
        }
    }
    const double beta1 = kPi * kPi * r / (16.0 * rho);
    const double head = t1.value() * std::exp(-beta1 * N);
    return {L * (head + t2.value()), beta1, beta2};
}

std::vector<std::string> clt_warnings(int N)
{
    if (N < kCltWarningFloor) {
        return {"N < " + std::to_string(kCltWarningFloor) + ": high-SNR expression assumes xi ~ 1"};
    }
    return {};
}

} // namespace

double single_user_floor(int N, int L, double rho, double ratio)
{
    check_inputs(N, 1, L, rho, ratio);
    CompensatedSum s;
    for (std::size_t i = 0; i < 3; ++i) s += std::exp(single_log_term(N, rho, ratio, i));
    return L * s.value();
}

double ss_floor(int N, int M, int L, double rho, double ratio)
{
    check_inputs(N, M, L, rho, ratio);
    return evaluate_ss(N, M, L, rho, ratio).floor;
}

double single_user_beta(int N, double rho, double ratio)
{
    check_inputs(N, 1, 1, rho, ratio);
    return single_beta_i(rho, ratio, dominant_single_component(N, rho, ratio));
}

AsymptoticFloor sop_single_hsnr(const Scenario& s)
{
    const double r = path_loss_ratio(s);
    const double rho = std::exp2(s.R_th);
    AsymptoticFloor f{Scheme::SingleUser, single_user_floor(s.N, s.L, rho, r),
                      single_user_beta(s.N, rho, r), {0.0, 0.0}, clt_warnings(s.N)};
    return f;
}

AsymptoticFloor sop_ss_hsnr(const Scenario& s)
{
    const double r = path_loss_ratio(s);
    const double rho = std::exp2(s.R_th);
    check_inputs(s.N, s.M, s.L, rho, r);
    const SsEvaluation e = evaluate_ss(s.N, s.M, s.L, rho, r);
    return {Scheme::SS, std::clamp(e.floor, 0.0, 1.0), single_user_beta(s.N, rho, r), {e.beta1, e.beta2},
            clt_warnings(s.N)};
}

AsymptoticFloor sop_os_hsnr(const Scenario& s)
{
    AsymptoticFloor f = sop_single_hsnr(s);
    f.scheme = Scheme::OS;
    f.floor = ipow(f.floor, s.M);
    return f;
}

AsymptoticFloor sop_best_pair_hsnr(const Scenario& s)
{
    Scenario pair = s;
    pair.M = s.K * s.M;
    AsymptoticFloor f = sop_ss_hsnr(pair);
    f.scheme = Scheme::BestPair;
    return f;
}

} // namespace ris_sop
