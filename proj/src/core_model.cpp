#include "ris_sop/core_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ris_sop {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(name) + " must be positive and finite");
    }
}

} // namespace

void Scenario::validate() const
{
    require_positive(f, "f");
    require_positive(delta_SR, "delta_SR");
    require_positive(delta_RS, "delta_RS");
    require_positive(delta_SU, "delta_SU");
    require_positive(delta_RU, "delta_RU");
    require_positive(delta_SE, "delta_SE");
    require_positive(delta_RE, "delta_RE");
    if (N < 1 || M < 1 || L < 1 || K < 1) {
        throw std::domain_error("N, M, L and K must be at least 1");
    }
    if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("eta must lie in (0, 1]");
    if (!(R_th >= 0.0) || !std::isfinite(R_th)) throw std::domain_error("R_th must be >= 0");
    if (!std::isfinite(N0_dB)) throw std::domain_error("N0_dB must be finite");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    if (!(upsilon >= 2.0) || !std::isfinite(upsilon)) throw std::domain_error("upsilon must be >= 2");
}

Geometry derive_geometry(const Scenario& s)
{
    s.validate();
    Geometry g{};
    g.d_SR = std::hypot(s.delta_SR, s.delta_RS);
    g.d_RU = std::hypot(s.delta_SU - s.delta_SR, s.delta_RU);
    g.d_RE = std::hypot(s.delta_SE - s.delta_SR, s.delta_RE);
    g.d_SU = std::hypot(s.delta_SU, s.delta_RS);
    g.cos_inc = s.delta_RS / g.d_SR;
    g.cos_ref_U = s.delta_RU / g.d_RU;
    g.cos_ref_E = s.delta_RE / g.d_RE;
    return g;
}

double indirect_path_loss(double wavelength, double d1, double d2, double cos_a, double cos_b)
{
    require_positive(wavelength, "wavelength");
    require_positive(d1, "d1");
    require_positive(d2, "d2");
    if (!(cos_a > 0.0 && cos_a <= 1.0) || !(cos_b > 0.0 && cos_b <= 1.0)) {
        throw std::domain_error("direction cosines must lie in (0, 1]");
    }
    const double pi = std::numbers::pi;
    const double l2 = wavelength * wavelength;
    const double c = cos_a + cos_b;
    return (l2 * l2 * c * c) / (256.0 * pi * pi * d1 * d1 * d2 * d2);
}

double direct_path_loss(double wavelength, double d, double upsilon)
{
    require_positive(wavelength, "wavelength");
    require_positive(d, "d");
    if (!(upsilon >= 2.0)) throw std::domain_error("upsilon must be >= 2");
    const double pi = std::numbers::pi;
    return (wavelength * wavelength) / (16.0 * pi * pi * std::pow(d, upsilon));
}

LinkBudget ris_link_budget(const Scenario& s, double p_over_n0)
{
    require_positive(p_over_n0, "P/N0");
    const Geometry g = derive_geometry(s);
    const double wl = s.wavelength();
    LinkBudget b{};
    b.zeta_SU = indirect_path_loss(wl, g.d_SR, g.d_RU, g.cos_inc, g.cos_ref_U);
    b.zeta_SE = indirect_path_loss(wl, g.d_SR, g.d_RE, g.cos_inc, g.cos_ref_E);
    b.gbar_U = p_over_n0 * b.zeta_SU;
    b.gbar_E = p_over_n0 * b.zeta_SE;
    b.lambda_E = s.eta * s.eta * s.N * b.gbar_E;
    b.rho = std::exp2(s.R_th);
    return b;
}

double path_loss_ratio(const Scenario& s)
{
    const Geometry g = derive_geometry(s);
    const double cu = g.cos_inc + g.cos_ref_U;
    const double ce = g.cos_inc + g.cos_ref_E;
    const double dd = g.d_RE / g.d_RU;
    return (cu * cu) / (ce * ce) * dd * dd;
}

double transmit_snr_from_db(const Scenario& s, double power_db)
{
    return db_to_linear(power_db - s.N0_dB);
}

} // namespace ris_sop
