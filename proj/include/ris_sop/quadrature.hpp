#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ris_sop {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved, double requested)
        : std::runtime_error(what), achieved_(achieved), requested_(requested)
    {
    }
    double achieved_error() const { return achieved_; }
    double requested_error() const { return requested_; }

private:
    double achieved_;
    double requested_;
};

struct QuadTolerance {
    double abs = 1e-10;
    double rel = 1e-8;
};

// Adaptive Gauss-Kronrod over [a, b] split at the given interior breakpoints
// (unsorted, out-of-range points ignored). Throws QuadratureError if the
// estimated error exceeds max(abs, rel * |result|).
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breaks, QuadTolerance tol = {});

} // namespace ris_sop
