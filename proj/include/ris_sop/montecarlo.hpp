#pragma once

#include "ris_sop/core_model.hpp"
#include "ris_sop/types.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ris_sop {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct TrialBatch {
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::SS;
    ChannelMode channel_mode = ChannelMode::ExactProduct;

    double estimate() const;
    // Wilson score interval; z = 1.96 gives the 95% interval.
    std::pair<double, double> wilson(double z = kWilsonZ95) const;
};

// Unit-variance circularly symmetric complex Gaussian draws for one trial, stored
// set-major: h_SR[k*N + n], h_RU[m*N + n], h_RE[l*N + n].
struct ChannelDraw {
    int N = 0;
    std::vector<std::complex<double>> h_SR;
    std::vector<std::complex<double>> h_RU;
    std::vector<std::complex<double>> h_RE;
};

// Each channel family of each trial has its own RNG stream derived from (seed, trial),
// so user m's and eavesdropper l's draws do not depend on M, L or the worker count.
void draw_channels(const Scenario& s, std::uint64_t seed, std::uint64_t trial, ChannelDraw& out);

struct NomaOptions {
    double power_step = 0.01;
    // Upper bound of the strong user's power share; the weak user keeps at least 1 - this.
    double max_strong_share = 0.5;
    // Bypasses the grid search.
    std::optional<double> forced_strong_share;
};

using ProgressFn = std::function<void(std::uint64_t done, std::uint64_t total)>;

struct RisSimulation {
    Scenario scenario;
    std::vector<double> p_over_n0;   // linear; all points share the same channel draws
    std::vector<Scheme> schemes;     // SingleUser, SS, OS, BestPair, NOMA
    ChannelMode mode = ChannelMode::ExactProduct;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    NomaOptions noma;
    ProgressFn progress;
};

// Result indexed [scheme][point].
std::vector<std::vector<TrialBatch>> run_ris_simulation(const RisSimulation& sim);

TrialBatch simulate_scheduling(const Scenario& s, double p_over_n0, Scheme scheme,
                               ChannelMode mode, std::uint64_t trials, std::uint64_t seed,
                               unsigned workers = 1);
TrialBatch simulate_noma(const Scenario& s, double p_over_n0, std::uint64_t trials,
                         std::uint64_t seed, const NomaOptions& opts = {}, unsigned workers = 1);

struct RelaySimulation {
    Scenario scenario;
    std::vector<double> p_over_n0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    ProgressFn progress;
};

// Result indexed [variant][point] with variant 0 = with direct link, 1 = without.
std::vector<std::vector<TrialBatch>> run_relay_simulation(const RelaySimulation& sim);

TrialBatch simulate_relay(const Scenario& s, double p_over_n0, bool with_direct,
                          std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

// Per-trial SNR of user 1 under its own phase alignment and of eavesdropper 1 under the
// same phase setting, for distribution checks.
struct SnrSamples {
    std::vector<double> user;
    std::vector<double> eve;
};
SnrSamples sample_link_snr(const Scenario& s, double p_over_n0, ChannelMode mode,
                           std::uint64_t trials, std::uint64_t seed);

// Relay SNR draws (user side only) for CDF checks.
std::vector<double> sample_relay_user_snr(const Scenario& s, double p_over_n0, bool with_direct,
                                          std::uint64_t trials, std::uint64_t seed);

} // namespace ris_sop
