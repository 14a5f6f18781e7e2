#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ris_sop {

// Three-exponential Q surrogate: Q(x) ~ sum_i (w_i / 2) exp(-p_i x^2 / 2), x >= 0.
struct QApproxWeights {
    static constexpr std::array<double, 3> w{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0};
    static constexpr std::array<double, 3> p{1.0, 4.0, 4.0 / 3.0};
};

double q_exact(double x);

// Throws std::domain_error for x < 0.
double q_approx3(double x);

// Surrogate extended to the real line with the complement rule 1 - q_approx3(-x) for x < 0.
double q_approx3_signed(double x);

// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

struct ExpQResult {
    double value;
    bool overflow;
};

// exp(a) * Q(b) without forming exp(a) when b > 0; overflow is flagged with value = +inf.
ExpQResult exp_times_q_checked(double a, double b);
double exp_times_q(double a, double b);

struct MultinomialVector {
    std::array<int, 3> k;
    double coefficient;
    double rate_sum;   // sum_i k_i p_i

    double sigma_k(double sigma_U) const;
    // prod_i w_i^{k_i} / 2^{m-1}
    double weight_product() const;
};

// All (k1,k2,k3) with k1+k2+k3 = m, 1 <= m <= 64, ordered lexicographically by descending k1 then k2.
std::vector<MultinomialVector> enumerate_multinomial(int m);

// Exact binomial coefficient, 0 <= k <= n <= 64.
std::uint64_t binomial_exact(int n, int k);
double binomial(int n, int k);

// sum_{j=m}^{M} (-1)^{m+j} C(M,j) C(j,m); Kronecker delta in m and M.
std::int64_t collapse_identity_check(int M, int m);

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

    CompensatedSum& operator+=(double x)
    {
        add(x);
        return *this;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Integer power by repeated squaring; exact for n = 1.
double ipow(double x, int n);

} // namespace ris_sop
