#pragma once

#include <cmath>

namespace ris_sop {

inline constexpr double kSpeedOfLight = 299792458.0;

// Default geometry:
// 2 GHz, N=512, M=L=10, user plane 900 m and eavesdropper plane 300 m from the source.
struct Scenario {
    double f = 2e9;
    int N = 512;
    int M = 10;
    int L = 10;
    int K = 1;
    double eta = 1.0;
    double R_th = 1.0;
    double N0_dB = -110.0;
    double delta_SR = 200.0;
    double delta_RS = 200.0;
    double delta_SU = 900.0;
    double delta_RU = 200.0;
    double delta_SE = 300.0;
    double delta_RE = 200.0;
    double alpha = 0.5;
    double upsilon = 3.0;

    double wavelength() const { return kSpeedOfLight / f; }

    // Throws std::domain_error when an invariant is violated.
    void validate() const;
};

struct Geometry {
    double d_SR;
    double d_RU;
    double d_RE;
    double d_SU;
    double cos_inc;
    double cos_ref_U;
    double cos_ref_E;
};

struct LinkBudget {
    double zeta_SU;
    double zeta_SE;
    double gbar_U;
    double gbar_E;
    double lambda_E;
    double rho;

    double lambda_E_l(int l) const { return lambda_E / l; }
};

Geometry derive_geometry(const Scenario& s);

double indirect_path_loss(double wavelength, double d1, double d2, double cos_a, double cos_b);
double direct_path_loss(double wavelength, double d, double upsilon);

// RIS budget at linear transmit SNR P/N0; rho = 2^R_th.
LinkBudget ris_link_budget(const Scenario& s, double p_over_n0);

// zeta_SU / zeta_SE; independent of frequency, eta and transmit power.
double path_loss_ratio(const Scenario& s);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Sweep axes are expressed as transmit power in dB; the noise floor N0_dB is
// subtracted once here to obtain the linear P/N0 used by every model.
double transmit_snr_from_db(const Scenario& s, double power_db);

} // namespace ris_sop
