#include "ris_sop/montecarlo.hpp"

#include "ris_sop/channel_stats.hpp"
#include "ris_sop/relay_model.hpp"

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace ris_sop {

namespace {

using Engine = std::mt19937_64;

constexpr std::uint64_t kMaxTrials = std::uint64_t{1} << 48;
constexpr std::uint64_t kChunk = 1024;

enum Family : std::uint64_t { kSourceRis = 1, kRisUser = 2, kRisEve = 3, kRelay = 4 };

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial, Family family)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ trial);
    return splitmix64(h ^ family);
}

void check_trials(std::uint64_t trials)
{
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (trials > kMaxTrials) throw std::overflow_error("trial count exceeds the supported range");
}

void fill_complex_normal(Engine& eng, std::complex<double>* out, std::size_t n)
{
    boost::random::normal_distribution<double> nd(0.0, std::numbers::sqrt2 / 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = nd(eng);
        const double im = nd(eng);
        out[i] = {re, im};
    }
}

bool secrecy_outage(double g_user, double g_eve, double rho)
{
    return 1.0 + g_user < rho * (1.0 + g_eve);
}

// Sum secrecy rate of a NOMA pair below threshold.
bool noma_outage(double gs, double gw, double ge, double r_th, const NomaOptions& opt)
{
    double a;
    if (opt.forced_strong_share) {
        a = *opt.forced_strong_share;
    } else {
        // Legitimate sum rate is log2((1 + a gs)(1 + gw) / (1 + a gw)); maximize the monotone part.
        a = opt.power_step;
        double best = -1.0;
        const int steps = static_cast<int>(std::floor(opt.max_strong_share / opt.power_step + 1e-9));
        for (int i = 1; i <= steps; ++i) {
            const double ai = i * opt.power_step;
            const double v = (1.0 + ai * gs) / (1.0 + ai * gw);
            if (v > best) {
                best = v;
                a = ai;
            }
        }
    }
    const double b = 1.0 - a;
    const double r_s = std::log2(1.0 + a * gs);
    const double r_w = std::log2(1.0 + b * gw / (a * gw + 1.0));
    double re_s;
    double re_w;
    if (a > b) {
        re_s = std::log2(1.0 + a * ge / (b * ge + 1.0));
        re_w = std::log2(1.0 + b * ge);
    } else {
        re_w = std::log2(1.0 + b * ge / (a * ge + 1.0));
        re_s = std::log2(1.0 + a * ge);
    }
    const double sum = std::max(0.0, r_s - re_s) + std::max(0.0, r_w - re_w);
    return sum < r_th;
}

struct Flags {
    bool single = false;
    bool ss = false;
    bool os = false;
    bool best_pair = false;
    bool noma = false;
};

// Squared aligned amplitudes (eta included) for one trial.
struct TrialOutcome {
    std::vector<double> yu2;   // user m, source set 0
    std::vector<double> ye2;   // max over eavesdroppers under user m's phases; NaN if unused
    int m_ss = 0;
    double yu2_bp = 0.0;
    double ye2_bp = 0.0;
    double yw2 = 0.0;          // weakest user under the strong user's phases
};

class RisKernel {
public:
    RisKernel(const Scenario& s, ChannelMode mode, std::uint64_t seed, Flags flags)
        : s_(s), mode_(mode), seed_(seed), flags_(flags), clt_(clt_params(s.N, s.eta))
    {
        const auto n = static_cast<std::size_t>(s.N);
        out_.yu2.assign(static_cast<std::size_t>(s.M), 0.0);
        out_.ye2.assign(static_cast<std::size_t>(s.M), 0.0);
        yu_pair_.assign(static_cast<std::size_t>(s.K * s.M), 0.0);
        sr_mag_.resize(n * s.K);
        ru_mag_.resize(n * s.M);
        a_re_.resize(n);
        a_im_.resize(n);
    }

    const TrialOutcome& run(std::uint64_t trial)
    {
        if (mode_ == ChannelMode::ExactProduct) {
            run_exact(trial);
        } else {
            run_surrogate(trial);
        }
        return out_;
    }

private:
    void run_exact(std::uint64_t trial)
    {
        const int N = s_.N;
        const int M = s_.M;
        const int K = s_.K;
        const double eta = s_.eta;
        draw_channels(s_, seed_, trial, draw_);
        for (std::size_t i = 0; i < sr_mag_.size(); ++i) sr_mag_[i] = std::abs(draw_.h_SR[i]);
        for (std::size_t i = 0; i < ru_mag_.size(); ++i) ru_mag_[i] = std::abs(draw_.h_RU[i]);

        const int pairs = flags_.best_pair ? K : 1;
        for (int k = 0; k < pairs; ++k) {
            const double* sr = &sr_mag_[static_cast<std::size_t>(k) * N];
            for (int m = 0; m < M; ++m) {
                const double* ru = &ru_mag_[static_cast<std::size_t>(m) * N];
                double acc = 0.0;
                for (int n = 0; n < N; ++n) acc += ru[n] * sr[n];
                yu_pair_[static_cast<std::size_t>(k) * M + m] = eta * acc;
            }
        }
        for (int m = 0; m < M; ++m) {
            const double y = yu_pair_[static_cast<std::size_t>(m)];
            out_.yu2[m] = y * y;
            out_.ye2[m] = std::numeric_limits<double>::quiet_NaN();
        }
        out_.m_ss = static_cast<int>(std::max_element(out_.yu2.begin(), out_.yu2.end()) - out_.yu2.begin());

        if (flags_.os) {
            for (int m = 0; m < M; ++m) out_.ye2[m] = eve_power(0, m);
        } else {
            if (flags_.single) out_.ye2[0] = eve_power(0, 0);
            if ((flags_.ss || flags_.noma) && std::isnan(out_.ye2[out_.m_ss])) {
                out_.ye2[out_.m_ss] = eve_power(0, out_.m_ss);
            }
        }
        if (flags_.best_pair) {
            const auto best = static_cast<int>(std::max_element(yu_pair_.begin(), yu_pair_.end()) - yu_pair_.begin());
            const int kb = best / M;
            const int mb = best % M;
            out_.yu2_bp = yu_pair_[best] * yu_pair_[best];
            out_.ye2_bp = (kb == 0 && !std::isnan(out_.ye2[mb])) ? out_.ye2[mb] : eve_power(kb, mb);
        }
        if (flags_.noma) {
            // Phases stay aligned to the strong user; weakest cross-aligned user is paired.
            prepare_phase(0, out_.m_ss);
            double weakest = HUGE_VAL;
            for (int w = 0; w < M; ++w) {
                if (w == out_.m_ss) continue;
                weakest = std::min(weakest, projected_power(&draw_.h_RU[static_cast<std::size_t>(w) * N]));
            }
            out_.yw2 = weakest;
        }
    }

    void prepare_phase(int k, int m)
    {
        const int N = s_.N;
        const double* sr = &sr_mag_[static_cast<std::size_t>(k) * N];
        const double* mag = &ru_mag_[static_cast<std::size_t>(m) * N];
        const std::complex<double>* h = &draw_.h_RU[static_cast<std::size_t>(m) * N];
        for (int n = 0; n < N; ++n) {
            const double scale = mag[n] > 0.0 ? sr[n] / mag[n] : 0.0;
            a_re_[n] = scale * h[n].real();
            a_im_[n] = -scale * h[n].imag();
        }
    }

    // eta^2 |sum_n g_n a_n|^2 for the prepared phase vector a.
    double projected_power(const std::complex<double>* g) const
    {
        double sr = 0.0;
        double si = 0.0;
        for (int n = 0; n < s_.N; ++n) {
            const double gr = g[n].real();
            const double gi = g[n].imag();
            sr += gr * a_re_[n] - gi * a_im_[n];
            si += gr * a_im_[n] + gi * a_re_[n];
        }
        return s_.eta * s_.eta * (sr * sr + si * si);
    }

    double eve_power(int k, int m)
    {
        prepare_phase(k, m);
        double best = 0.0;
        for (int l = 0; l < s_.L; ++l) {
            best = std::max(best, projected_power(&draw_.h_RE[static_cast<std::size_t>(l) * s_.N]));
        }
        return best;
    }

    void run_surrogate(std::uint64_t trial)
    {
        const int M = s_.M;
        const int K = s_.K;
        const double mean_e = s_.eta * s_.eta * s_.N;
        Engine ru(stream_seed(seed_, trial, kRisUser));
        Engine re(stream_seed(seed_, trial, kRisEve));
        boost::random::normal_distribution<double> nd(clt_.mu_U, clt_.sigma_U);
        boost::random::exponential_distribution<double> ed(1.0 / mean_e);
        const int pairs = flags_.best_pair ? K : 1;
        for (int i = 0; i < pairs * M; ++i) {
            double y;
            do {
                y = nd(ru);
            } while (y < 0.0);
            yu_pair_[i] = y;
        }
        cross_.resize(static_cast<std::size_t>(M));
        for (int m = 0; m < M; ++m) {
            cross_[m] = ed(ru);
            out_.yu2[m] = yu_pair_[m] * yu_pair_[m];
        }
        out_.m_ss = static_cast<int>(std::max_element(out_.yu2.begin(), out_.yu2.end()) - out_.yu2.begin());
        double weakest = HUGE_VAL;
        for (int m = 0; m < M; ++m) {
            if (m != out_.m_ss) weakest = std::min(weakest, cross_[m]);
        }
        std::vector<double>& eve = eve_pair_;
        eve.assign(static_cast<std::size_t>(pairs * M), 0.0);
        for (int i = 0; i < pairs * M; ++i) {
            double best = 0.0;
            for (int l = 0; l < s_.L; ++l) best = std::max(best, ed(re));
            eve[i] = best;
        }
        for (int m = 0; m < M; ++m) out_.ye2[m] = eve[m];
        if (flags_.best_pair) {
            const auto best = std::max_element(yu_pair_.begin(), yu_pair_.begin() + pairs * M) - yu_pair_.begin();
            out_.yu2_bp = yu_pair_[best] * yu_pair_[best];
            out_.ye2_bp = eve[best];
        }
        out_.yw2 = weakest;
    }

    const Scenario& s_;
    ChannelMode mode_;
    std::uint64_t seed_;
    Flags flags_;
    CltParams clt_;
    ChannelDraw draw_;
    TrialOutcome out_;
    std::vector<double> yu_pair_;
    std::vector<double> eve_pair_;
    std::vector<double> cross_;
    std::vector<double> sr_mag_;
    std::vector<double> ru_mag_;
    std::vector<double> a_re_;
    std::vector<double> a_im_;
};

// Splits [0, trials) into fixed chunks handed to `workers` threads; every worker owns a
// counter vector and the vectors are summed at the end, so the totals do not depend on
// scheduling.
template <typename MakeWorker>
std::vector<std::uint64_t> parallel_count(std::uint64_t trials, unsigned workers, std::size_t slots,
                                          const ProgressFn& progress, MakeWorker make_worker)
{
    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    const unsigned nthreads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(std::max(1u, workers), chunks)));
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;
    std::vector<std::vector<std::uint64_t>> partial(nthreads, std::vector<std::uint64_t>(slots, 0));
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto body = [&](unsigned w) {
        try {
            auto worker = make_worker();
            for (;;) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= chunks) break;
                const std::uint64_t begin = c * kChunk;
                const std::uint64_t end = std::min(trials, begin + kChunk);
                for (std::uint64_t t = begin; t < end; ++t) worker(t, partial[w]);
                const std::uint64_t d = done.fetch_add(end - begin) + (end - begin);
                if (progress) {
                    std::lock_guard<std::mutex> lock(progress_mutex);
                    progress(d, trials);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(chunks);
        }
    };

    if (nthreads == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<std::uint64_t> total(slots, 0);
    for (const auto& p : partial) {
        for (std::size_t i = 0; i < slots; ++i) total[i] += p[i];
    }
    return total;
}

} // namespace

double TrialBatch::estimate() const
{
    return trials == 0 ? 0.0 : static_cast<double>(outages) / static_cast<double>(trials);
}

std::pair<double, double> TrialBatch::wilson(double z) const
{
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = estimate();
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void draw_channels(const Scenario& s, std::uint64_t seed, std::uint64_t trial, ChannelDraw& out)
{
    const auto n = static_cast<std::size_t>(s.N);
    out.N = s.N;
    out.h_SR.resize(n * s.K);
    out.h_RU.resize(n * s.M);
    out.h_RE.resize(n * s.L);
    Engine sr(stream_seed(seed, trial, kSourceRis));
    Engine ru(stream_seed(seed, trial, kRisUser));
    Engine re(stream_seed(seed, trial, kRisEve));
    fill_complex_normal(sr, out.h_SR.data(), out.h_SR.size());
    fill_complex_normal(ru, out.h_RU.data(), out.h_RU.size());
    fill_complex_normal(re, out.h_RE.data(), out.h_RE.size());
}

std::vector<std::vector<TrialBatch>> run_ris_simulation(const RisSimulation& sim)
{
    const Scenario& s = sim.scenario;
    s.validate();
    check_trials(sim.trials);
    if (sim.schemes.empty()) throw std::invalid_argument("no schemes requested");
    if (sim.p_over_n0.empty()) throw std::invalid_argument("no SNR points requested");
    Flags flags;
    for (Scheme sc : sim.schemes) {
        switch (sc) {
        case Scheme::SingleUser: flags.single = true; break;
        case Scheme::SS: flags.ss = true; break;
        case Scheme::OS: flags.os = true; break;
        case Scheme::BestPair: flags.best_pair = true; break;
        case Scheme::NOMA:
            if (s.M < 2) throw std::domain_error("NOMA pairing requires M >= 2");
            flags.noma = true;
            break;
        default: throw std::invalid_argument("scheme is not simulated by the RIS engine");
        }
    }
    const NomaOptions& noma = sim.noma;
    if (noma.forced_strong_share) {
        const double a = *noma.forced_strong_share;
        if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("forced strong share must lie in (0, 1]");
    } else if (!(noma.power_step > 0.0 && noma.max_strong_share >= noma.power_step &&
                 noma.max_strong_share < 1.0)) {
        throw std::domain_error("invalid NOMA power grid");
    }

    const std::size_t P = sim.p_over_n0.size();
    struct PointGains {
        double g_u;
        double g_e;
    };
    std::vector<PointGains> gains;
    double rho = 0.0;
    for (double p : sim.p_over_n0) {
        const LinkBudget b = ris_link_budget(s, p);
        gains.push_back({b.gbar_U, b.gbar_E});
        rho = b.rho;
    }
    const std::size_t S = sim.schemes.size();

    auto make_worker = [&]() {
        return [kernel = std::make_shared<RisKernel>(s, sim.mode, sim.seed, flags), &sim, &gains, rho, P,
                S](std::uint64_t t, std::vector<std::uint64_t>& counts) {
            const TrialOutcome& o = kernel->run(t);
            const Scenario& sc = sim.scenario;
            for (std::size_t ip = 0; ip < P; ++ip) {
                const double gu = gains[ip].g_u;
                const double ge = gains[ip].g_e;
                for (std::size_t is = 0; is < S; ++is) {
                    bool out = false;
                    switch (sim.schemes[is]) {
                    case Scheme::SingleUser:
                        out = secrecy_outage(gu * o.yu2[0], ge * o.ye2[0], rho);
                        break;
                    case Scheme::SS:
                        out = secrecy_outage(gu * o.yu2[o.m_ss], ge * o.ye2[o.m_ss], rho);
                        break;
                    case Scheme::OS:
                        out = true;
                        for (int m = 0; m < sc.M && out; ++m) {
                            out = secrecy_outage(gu * o.yu2[m], ge * o.ye2[m], rho);
                        }
                        break;
                    case Scheme::BestPair:
                        out = secrecy_outage(gu * o.yu2_bp, ge * o.ye2_bp, rho);
                        break;
                    case Scheme::NOMA:
                        out = noma_outage(gu * o.yu2[o.m_ss], gu * o.yw2, ge * o.ye2[o.m_ss],
                                          sc.R_th, sim.noma);
                        break;
                    default: break;
                    }
                    if (out) ++counts[is * P + ip];
                }
            }
        };
    };

    const auto totals = parallel_count(sim.trials, sim.workers, S * P, sim.progress, make_worker);
    std::vector<std::vector<TrialBatch>> result(S, std::vector<TrialBatch>(P));
    for (std::size_t is = 0; is < S; ++is) {
        for (std::size_t ip = 0; ip < P; ++ip) {
            result[is][ip] = {sim.trials, totals[is * P + ip], sim.seed, sim.schemes[is], sim.mode};
        }
    }
    return result;
}

TrialBatch simulate_scheduling(const Scenario& s, double p_over_n0, Scheme scheme, ChannelMode mode,
                               std::uint64_t trials, std::uint64_t seed, unsigned workers)
{
    if (scheme == Scheme::NOMA) throw std::invalid_argument("use simulate_noma for NOMA");
    RisSimulation sim;
    sim.scenario = s;
    sim.p_over_n0 = {p_over_n0};
    sim.schemes = {scheme};
    sim.mode = mode;
    sim.trials = trials;
    sim.seed = seed;
    sim.workers = workers;
    return run_ris_simulation(sim)[0][0];
}

TrialBatch simulate_noma(const Scenario& s, double p_over_n0, std::uint64_t trials, std::uint64_t seed,
                         const NomaOptions& opts, unsigned workers)
{
    RisSimulation sim;
    sim.scenario = s;
    sim.p_over_n0 = {p_over_n0};
    sim.schemes = {Scheme::NOMA};
    sim.trials = trials;
    sim.seed = seed;
    sim.workers = workers;
    sim.noma = opts;
    return run_ris_simulation(sim)[0][0];
}

std::vector<std::vector<TrialBatch>> run_relay_simulation(const RelaySimulation& sim)
{
    const Scenario& s = sim.scenario;
    s.validate();
    check_trials(sim.trials);
    if (sim.p_over_n0.empty()) throw std::invalid_argument("no SNR points requested");
    std::vector<RelayBudget> budgets;
    for (double p : sim.p_over_n0) budgets.push_back(relay_budget(s, p));
    const std::size_t P = budgets.size();

    auto make_worker = [&]() {
        return [&sim, &budgets, P, ru = std::vector<double>(static_cast<std::size_t>(sim.scenario.M)),
                re = std::vector<double>(static_cast<std::size_t>(sim.scenario.L))](
                   std::uint64_t t, std::vector<std::uint64_t>& counts) mutable {
            Engine eng(stream_seed(sim.seed, t, kRelay));
            boost::random::exponential_distribution<double> ed(1.0);
            const double su = ed(eng);
            const double sr = ed(eng);
            for (double& v : ru) v = ed(eng);
            for (double& v : re) v = ed(eng);
            const double ru_max = *std::max_element(ru.begin(), ru.end());
            const double re_max = *std::max_element(re.begin(), re.end());
            for (std::size_t ip = 0; ip < P; ++ip) {
                const RelayBudget& b = budgets[ip];
                const double two_hop = std::min(sr * b.lambda_SR, ru_max * b.lambda_RU);
                const double eve = re_max * b.lambda_E;
                if (secrecy_outage(two_hop + su * b.lambda_SU, eve, b.rho)) ++counts[ip];
                if (secrecy_outage(two_hop, eve, b.rho)) ++counts[P + ip];
            }
        };
    };
    const auto totals = parallel_count(sim.trials, sim.workers, 2 * P, sim.progress, make_worker);
    std::vector<std::vector<TrialBatch>> result(2, std::vector<TrialBatch>(P));
    for (std::size_t v = 0; v < 2; ++v) {
        for (std::size_t ip = 0; ip < P; ++ip) {
            result[v][ip] = {sim.trials, totals[v * P + ip], sim.seed,
                             v == 0 ? Scheme::RelayDL : Scheme::RelayNDL, ChannelMode::ExactProduct};
        }
    }
    return result;
}

TrialBatch simulate_relay(const Scenario& s, double p_over_n0, bool with_direct, std::uint64_t trials,
                          std::uint64_t seed, unsigned workers)
{
    RelaySimulation sim;
    sim.scenario = s;
    sim.p_over_n0 = {p_over_n0};
    sim.trials = trials;
    sim.seed = seed;
    sim.workers = workers;
    return run_relay_simulation(sim)[with_direct ? 0 : 1][0];
}

SnrSamples sample_link_snr(const Scenario& s, double p_over_n0, ChannelMode mode, std::uint64_t trials,
                           std::uint64_t seed)
{
    check_trials(trials);
    Scenario one = s;
    one.M = 1;
    one.L = 1;
    one.K = 1;
    one.validate();
    const LinkBudget b = ris_link_budget(one, p_over_n0);
    Flags flags;
    flags.single = true;
    RisKernel kernel(one, mode, seed, flags);
    SnrSamples out;
    out.user.reserve(trials);
    out.eve.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const TrialOutcome& o = kernel.run(t);
        out.user.push_back(b.gbar_U * o.yu2[0]);
        out.eve.push_back(b.gbar_E * o.ye2[0]);
    }
    return out;
}

std::vector<double> sample_relay_user_snr(const Scenario& s, double p_over_n0, bool with_direct,
                                          std::uint64_t trials, std::uint64_t seed)
{
    check_trials(trials);
    const RelayBudget b = relay_budget(s, p_over_n0);
    std::vector<double> out;
    out.reserve(trials);
    boost::random::exponential_distribution<double> ed(1.0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Engine eng(stream_seed(seed, t, kRelay));
        const double su = ed(eng);
        const double sr = ed(eng);
        double ru_max = 0.0;
        for (int m = 0; m < s.M; ++m) ru_max = std::max(ru_max, ed(eng));
        const double two_hop = std::min(sr * b.lambda_SR, ru_max * b.lambda_RU);
        out.push_back(with_direct ? two_hop + su * b.lambda_SU : two_hop);
    }
    return out;
}

} // namespace ris_sop
