#include "ris_sop/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ris_sop {

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breaks, QuadTolerance tol)
{
    using boost::math::quadrature::gauss_kronrod;
    std::erase_if(breaks, [&](double x) { return !(x > a && x < b); });
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        // Boost's error estimate ignores the interval width, so every segment is mapped
        // onto [0, 1] to keep it in the units of the integral.
        const double lo = breaks[i];
        const double w = breaks[i + 1] - lo;
        auto g = [&](double t) { return f(lo + w * t) * w; };
        double err = 0.0;
        double l1 = 0.0;
        total += gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, tol.rel, &err, &l1);
        total_err += err;
    }
    const double allowed = std::max(tol.abs, tol.rel * std::fabs(total));
    if (!std::isfinite(total) || total_err > allowed) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "quadrature did not converge: estimated error %.3g > %.3g",
                      total_err, allowed);
        throw QuadratureError(msg, total_err, allowed);
    }
    return total;
}

} // namespace ris_sop
