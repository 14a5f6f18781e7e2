#include "ris_sop/experiments.hpp"

#include "ris_sop/sop_analytic.hpp"
#include "ris_sop/sop_asymptotic.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace ris_sop {

namespace {

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool is_relay_scheme(Scheme s) { return s == Scheme::RelayDL || s == Scheme::RelayNDL; }

RelayVariant relay_variant_of(Scheme s)
{
    return s == Scheme::RelayDL ? RelayVariant::DirectLink : RelayVariant::NoDirectLink;
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn)
{
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next++; i < n; i = next++) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!failure) failure = std::current_exception();
                next.store(n);
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// Scenario and linear P/N0 for sweep value x.
struct PointSetting {
    Scenario scenario;
    double p_over_n0;
};

PointSetting point_setting(const SweepSpec& spec, double x)
{
    PointSetting ps{spec.scenario, 0.0};
    switch (spec.variable) {
    case SweepVariable::PowerDb:
        ps.p_over_n0 = transmit_snr_from_db(ps.scenario, x);
        break;
    case SweepVariable::N:
        ps.scenario.N = static_cast<int>(std::lround(x));
        ps.p_over_n0 = transmit_snr_from_db(ps.scenario, spec.fixed_power_db);
        break;
    case SweepVariable::DeltaSE:
        ps.scenario.delta_SE = x;
        ps.p_over_n0 = transmit_snr_from_db(ps.scenario, spec.fixed_power_db);
        break;
    }
    return ps;
}

double analytic_point(Scheme scheme, Method method, const PointSetting& ps)
{
    const Scenario& s = ps.scenario;
    if (is_relay_scheme(scheme)) {
        const RelayBudget rb = relay_budget(s, ps.p_over_n0);
        const RelayVariant v = relay_variant_of(scheme);
        return method == Method::Quadrature ? sop_relay_quadrature(rb, s.M, s.L, v)
                                            : sop_relay(rb, s.M, s.L, v);
    }
    if (method == Method::Asymptotic) {
        switch (scheme) {
        case Scheme::SingleUser: return sop_single_hsnr(s).floor;
        case Scheme::SS: return sop_ss_hsnr(s).floor;
        case Scheme::OS: return sop_os_hsnr(s).floor;
        case Scheme::BestPair: return sop_best_pair_hsnr(s).floor;
        default: break;
        }
        throw ValidationError("no asymptotic expression for this scheme");
    }
    SopQuery q;
    q.scenario = s;
    q.p_over_n0 = ps.p_over_n0;
    q.scheme = scheme;
    q.method = method;
    return sop_value(q);
}

CurvePoint mc_point(double x, const TrialBatch& b)
{
    const auto [lo, hi] = b.wilson();
    return {x, b.estimate(), lo, hi};
}

} // namespace

std::string_view to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::PowerDb: return "P_over_N0_dB";
    case SweepVariable::N: return "N";
    case SweepVariable::DeltaSE: return "delta_SE";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view name)
{
    if (name == "P_over_N0_dB") return SweepVariable::PowerDb;
    if (name == "N") return SweepVariable::N;
    if (name == "delta_SE") return SweepVariable::DeltaSE;
    throw ValidationError("unknown sweep variable: '" + std::string(name) + "'");
}

std::vector<double> SweepRange::values() const
{
    std::vector<double> out;
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) return out;
    const double count = std::floor((stop - start) / step + 1e-9);
    if (count > 1e6) return out;
    for (long i = 0; i <= static_cast<long>(count); ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

bool supports(Scheme scheme, Method method)
{
    if (scheme == Scheme::NOMA) return method == Method::MonteCarlo;
    if (is_relay_scheme(scheme)) return method != Method::Asymptotic;
    return true;
}

void validate(const SweepSpec& spec)
{
    if (spec.schemes.empty()) throw ValidationError("scheme list is empty");
    if (spec.methods.empty()) throw ValidationError("method list is empty");
    try {
        spec.scenario.validate();
    } catch (const std::domain_error& e) {
        throw ValidationError(std::string("invalid scenario: ") + e.what());
    }
    const auto xs = spec.range.values();
    if (xs.empty()) throw ValidationError("sweep range is empty or malformed");
    if (spec.variable == SweepVariable::N) {
        for (double x : xs) {
            if (x < 1.0 || std::fabs(x - std::round(x)) > 1e-9) {
                throw ValidationError("N sweep values must be positive integers");
            }
        }
    }
    if (spec.variable == SweepVariable::DeltaSE) {
        for (double x : xs) {
            if (!(x > 0.0)) throw ValidationError("delta_SE sweep values must be positive");
        }
    }
    for (Scheme s : spec.schemes) {
        for (Method m : spec.methods) {
            if (!supports(s, m)) {
                throw ValidationError("scheme " + std::string(to_string(s)) + " does not support method " +
                                      std::string(to_string(m)));
            }
        }
        if (s == Scheme::BestPair && !spec.k_explicit) {
            throw ValidationError("BestPair requires the source antenna count K to be set");
        }
        if (s == Scheme::NOMA && spec.scenario.M < 2) throw ValidationError("NOMA requires M >= 2");
    }
    const bool mc = std::find(spec.methods.begin(), spec.methods.end(), Method::MonteCarlo) != spec.methods.end();
    if (mc) {
        if (spec.mc_trials < 1) throw ValidationError("Monte Carlo trial count must be positive");
        if (spec.mc_trials < kMinMonteCarloTrials && !spec.allow_low_trials) {
            throw ValidationError("Monte Carlo needs at least 1000 trials (override with allow_low_trials)");
        }
    }
}

std::vector<SopCurve> run_sweep(const SweepSpec& spec, const ProgressFn& progress)
{
    validate(spec);
    const auto xs = spec.range.values();
    const std::size_t P = xs.size();
    const std::string hash = scenario_hash(spec.scenario);
    const std::string stamp = utc_timestamp();

    std::vector<SopCurve> curves;
    for (Scheme s : spec.schemes) {
        for (Method m : spec.methods) {
            SopCurve c{s, m, spec.variable, {}, spec.seed, hash, stamp};
            c.points.resize(P);
            curves.push_back(std::move(c));
        }
    }
    const std::size_t M = spec.methods.size();
    auto curve_at = [&](std::size_t is, Method m) -> SopCurve& {
        const auto im = static_cast<std::size_t>(std::find(spec.methods.begin(), spec.methods.end(), m) - spec.methods.begin());
        return curves[is * M + im];
    };

    std::vector<PointSetting> settings;
    for (double x : xs) settings.push_back(point_setting(spec, x));

    // Analytic curves: independent jobs over (curve, point).
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        if (curves[c].method == Method::MonteCarlo) continue;
        for (std::size_t ip = 0; ip < P; ++ip) jobs.emplace_back(c, ip);
    }
    parallel_for(jobs.size(), spec.workers, [&](std::size_t j) {
        const auto [c, ip] = jobs[j];
        curves[c].points[ip] = {xs[ip], analytic_point(curves[c].scheme, curves[c].method, settings[ip]), {}, {}};
    });

    if (std::find(spec.methods.begin(), spec.methods.end(), Method::MonteCarlo) == spec.methods.end()) {
        return curves;
    }

    std::vector<Scheme> ris_schemes;
    std::vector<std::size_t> ris_index;
    bool any_relay = false;
    for (std::size_t is = 0; is < spec.schemes.size(); ++is) {
        if (is_relay_scheme(spec.schemes[is])) {
            any_relay = true;
        } else {
            ris_schemes.push_back(spec.schemes[is]);
            ris_index.push_back(is);
        }
    }
    auto relay_index = [&](Scheme s) {
        return static_cast<std::size_t>(std::find(spec.schemes.begin(), spec.schemes.end(), s) - spec.schemes.begin());
    };

    // A power sweep shares one set of channel draws across all points; N and delta_SE sweeps
    // reuse the same seed per point.
    const bool shared = spec.variable == SweepVariable::PowerDb;
    const std::size_t groups = shared ? 1 : P;
    for (std::size_t g = 0; g < groups; ++g) {
        std::vector<double> snrs;
        std::vector<std::size_t> points;
        for (std::size_t ip = 0; ip < P; ++ip) {
            if (shared || ip == g) {
                snrs.push_back(settings[ip].p_over_n0);
                points.push_back(ip);
            }
        }
        const Scenario& sc = settings[points.front()].scenario;
        if (!ris_schemes.empty()) {
            RisSimulation sim;
            sim.scenario = sc;
            sim.p_over_n0 = snrs;
            sim.schemes = ris_schemes;
            sim.mode = spec.mc_mode;
            sim.trials = spec.mc_trials;
            sim.seed = spec.seed;
            sim.workers = spec.workers;
            sim.noma = spec.noma;
            sim.progress = progress;
            const auto batches = run_ris_simulation(sim);
            for (std::size_t k = 0; k < ris_schemes.size(); ++k) {
                for (std::size_t j = 0; j < points.size(); ++j) {
                    curve_at(ris_index[k], Method::MonteCarlo).points[points[j]] = mc_point(xs[points[j]], batches[k][j]);
                }
            }
        }
        if (any_relay) {
            RelaySimulation sim;
            sim.scenario = sc;
            sim.p_over_n0 = snrs;
            sim.trials = spec.mc_trials;
            sim.seed = spec.seed;
            sim.workers = spec.workers;
            sim.progress = progress;
            const auto batches = run_relay_simulation(sim);
            for (Scheme rs : {Scheme::RelayDL, Scheme::RelayNDL}) {
                const std::size_t is = relay_index(rs);
                if (is == spec.schemes.size()) continue;
                const std::size_t v = rs == Scheme::RelayDL ? 0 : 1;
                for (std::size_t j = 0; j < points.size(); ++j) {
                    curve_at(is, Method::MonteCarlo).points[points[j]] = mc_point(xs[points[j]], batches[v][j]);
                }
            }
        }
    }
    return curves;
}

std::string canonical_scenario(const Scenario& s)
{
    std::ostringstream os;
    char buf[64];
    auto put = [&](const char* k, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << k << '=' << buf << '\n';
    };
    put("f", s.f);
    os << "N=" << s.N << "\nM=" << s.M << "\nL=" << s.L << "\nK=" << s.K << '\n';
    put("eta", s.eta);
    put("R_th", s.R_th);
    put("N0_dB", s.N0_dB);
    put("delta_SR", s.delta_SR);
    put("delta_RS", s.delta_RS);
    put("delta_SU", s.delta_SU);
    put("delta_RU", s.delta_RU);
    put("delta_SE", s.delta_SE);
    put("delta_RE", s.delta_RE);
    put("alpha", s.alpha);
    put("upsilon", s.upsilon);
    return os.str();
}

std::string scenario_hash(const Scenario& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_scenario(s)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void emit_csv(std::span<const SopCurve> curves, std::ostream& out)
{
    out << "scheme,method,sweep_variable,sweep_value,sop,ci_low,ci_high,seed,scenario_hash\n";
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            out << to_string(c.scheme) << ',' << to_string(c.method) << ',' << to_string(c.variable) << ','
                << format_number(p.x) << ',' << format_number(p.sop) << ','
                << (p.ci_low ? format_number(*p.ci_low) : "") << ','
                << (p.ci_high ? format_number(*p.ci_high) : "") << ',' << c.seed << ','
                << c.scenario_hash << '\n';
        }
    }
}

void emit_csv(std::span<const SopCurve> curves, const std::filesystem::path& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path.string());
    emit_csv(curves, f);
    if (!f) throw std::runtime_error("failed writing output file: " + path.string());
}

std::vector<SopCurve> parse_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
    if (line != "scheme,method,sweep_variable,sweep_value,sop,ci_low,ci_high,seed,scenario_hash") {
        throw std::runtime_error("unexpected CSV header");
    }
    std::vector<SopCurve> curves;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (line.back() == ',') f.emplace_back();
        if (f.size() != 9) throw std::runtime_error("malformed CSV row: " + line);
        const Scheme scheme = parse_scheme(f[0]);
        const Method method = parse_method(f[1]);
        const SweepVariable var = parse_sweep_variable(f[2]);
        const std::uint64_t seed = std::stoull(f[7]);
        if (curves.empty() || curves.back().scheme != scheme || curves.back().method != method ||
            curves.back().variable != var || curves.back().seed != seed ||
            curves.back().scenario_hash != f[8]) {
            curves.push_back({scheme, method, var, {}, seed, f[8], {}});
        }
        CurvePoint p{std::stod(f[3]), std::stod(f[4]), {}, {}};
        if (!f[5].empty()) p.ci_low = std::stod(f[5]);
        if (!f[6].empty()) p.ci_high = std::stod(f[6]);
        curves.back().points.push_back(p);
    }
    return curves;
}

std::vector<CrossoverRow> report_crossover(const Scenario& s, double power_db, Scheme ris_scheme,
                                           RelayVariant variant, std::span<const double> freqs)
{
    std::vector<CrossoverRow> rows;
    for (double f : freqs) {
        Scenario sf = s;
        sf.f = f;
        rows.push_back({f, crossover_n(sf, transmit_snr_from_db(sf, power_db), ris_scheme, variant)});
    }
    return rows;
}

void emit_crossover_csv(std::span<const CrossoverRow> rows, Scheme ris_scheme, RelayVariant variant,
                        std::ostream& out)
{
    out << "f,ris_scheme,relay_variant,found,n_star,ris_sop,relay_sop\n";
    for (const auto& r : rows) {
        out << format_number(r.f) << ',' << to_string(ris_scheme) << ','
            << (variant == RelayVariant::DirectLink ? "RelayDL" : "RelayNDL") << ','
            << (r.result.found ? "true" : "false") << ',' << r.result.n << ','
            << format_number(r.result.ris_sop) << ',' << format_number(r.result.relay_sop) << '\n';
    }
}

Scenario relay_comparison_scenario(double f)
{
    Scenario s;
    s.f = f;
    s.M = 10;
    s.L = 3;
    s.delta_SR = 40.0;
    s.delta_SU = 200.0;
    s.delta_SE = 125.0;
    s.delta_RS = 30.0;
    s.delta_RU = 30.0;
    s.delta_RE = 30.0;
    s.upsilon = 3.0;
    return s;
}

std::vector<SweepSpec> figure_preset(int figure)
{
    std::vector<SweepSpec> out;
    const std::vector<Method> all_ris{Method::ClosedForm, Method::Asymptotic, Method::Quadrature, Method::MonteCarlo};
    switch (figure) {
    case 2:
        for (int n : {512, 1024}) {
            for (auto [m, l] : {std::pair{1, 1}, std::pair{1, 10}, std::pair{10, 10}}) {
                SweepSpec spec;
                spec.scenario.N = n;
                spec.scenario.M = m;
                spec.scenario.L = l;
                spec.range = {0.0, 50.0, 2.5};
                spec.schemes = m == 1 ? std::vector<Scheme>{Scheme::SingleUser}
                                      : std::vector<Scheme>{Scheme::SS, Scheme::OS};
                spec.methods = all_ris;
                out.push_back(spec);
            }
        }
        break;
    case 3:
        for (int n : {512, 1024}) {
            SweepSpec spec;
            spec.scenario.N = n;
            spec.range = {0.0, 40.0, 2.5};
            spec.schemes = {Scheme::SS, Scheme::OS};
            spec.methods = {Method::ClosedForm, Method::MonteCarlo};
            out.push_back(spec);
            spec.schemes = {Scheme::NOMA};
            spec.methods = {Method::MonteCarlo};
            out.push_back(spec);
        }
        break;
    case 4:
        for (double f : {1e9, 2e9}) {
            SweepSpec spec;
            spec.scenario = relay_comparison_scenario(f);
            spec.variable = SweepVariable::N;
            spec.range = {1.0, 200.0, 1.0};
            spec.fixed_power_db = 20.0;
            spec.schemes = {Scheme::SS, Scheme::OS, Scheme::RelayDL, Scheme::RelayNDL};
            spec.methods = {Method::ClosedForm};
            out.push_back(spec);
        }
        break;
    case 5: {
        SweepSpec spec;
        spec.scenario.f = 2e9;
        spec.scenario.N = 64;
        spec.scenario.M = 10;
        spec.scenario.L = 3;
        spec.scenario.delta_SR = 50.0;
        spec.scenario.delta_RS = 70.0;
        spec.scenario.delta_RU = 70.0;
        spec.scenario.delta_RE = 20.0;
        spec.scenario.delta_SU = 200.0;
        spec.scenario.upsilon = 3.0;
        spec.variable = SweepVariable::DeltaSE;
        spec.range = {5.0, 150.0, 5.0};
        spec.fixed_power_db = 20.0;
        spec.schemes = {Scheme::SingleUser, Scheme::SS, Scheme::OS, Scheme::RelayDL, Scheme::RelayNDL};
        spec.methods = {Method::ClosedForm};
        out.push_back(spec);
        break;
    }
    default: throw ValidationError("figure preset must be one of 2, 3, 4, 5");
    }
    return out;
}

} // namespace ris_sop
