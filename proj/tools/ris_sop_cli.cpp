#include "ris_sop/experiments.hpp"
#include "ris_sop/sop_analytic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace ris_sop;

namespace {

struct SweepOptions {
    std::string config;
    std::optional<int> figure;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> workers;
    std::string out;
    bool allow_low_trials = false;
    bool quiet = false;
};

RunPlan build_plan(const SweepOptions& o)
{
    RunPlan plan;
    if (!o.config.empty()) {
        plan = load_run_plan(o.config);
    }
    if (o.figure) {
        plan.figure = *o.figure;
        const SweepSpec base = plan.sweeps.empty() ? SweepSpec{} : plan.sweeps.front();
        plan.sweeps = figure_preset(*o.figure);
        for (auto& s : plan.sweeps) {
            apply_mc_settings(s, base.mc_trials, base.seed, base.workers, base.allow_low_trials);
            s.mc_mode = base.mc_mode;
        }
    }
    if (plan.sweeps.empty()) throw ValidationError("nothing to run: pass --config or --figure");
    for (auto& s : plan.sweeps) {
        if (o.seed) s.seed = *o.seed;
        if (o.trials) s.mc_trials = *o.trials;
        if (o.workers) s.workers = *o.workers;
        if (o.allow_low_trials) s.allow_low_trials = true;
    }
    return plan;
}

int run_sweep_command(const SweepOptions& o)
{
    const RunPlan plan = build_plan(o);
    for (const auto& s : plan.sweeps) validate(s);

    std::vector<SopCurve> curves;
    std::string stamp;
    for (std::size_t i = 0; i < plan.sweeps.size(); ++i) {
        ProgressFn progress;
        if (!o.quiet) {
            progress = [i, n = plan.sweeps.size()](std::uint64_t done, std::uint64_t total) {
                if (done == total || done % (total / 10 + 1) < 1024) {
                    std::cerr << "sweep " << (i + 1) << "/" << n << ": " << done << "/" << total << " trials\r"
                              << (done == total ? "\n" : "") << std::flush;
                }
            };
        }
        auto part = run_sweep(plan.sweeps[i], progress);
        if (!part.empty()) stamp = part.front().timestamp;
        curves.insert(curves.end(), part.begin(), part.end());
    }

    if (o.out.empty() || o.out == "-") {
        emit_csv(curves, std::cout);
    } else {
        emit_csv(curves, std::filesystem::path(o.out));
        std::ofstream meta(o.out + ".meta.ini");
        meta << "; generated " << stamp << "\n" << resolved_config(plan);
        if (!meta) throw std::runtime_error("failed writing metadata file");
        if (!o.quiet) std::cerr << "wrote " << o.out << " and " << o.out << ".meta.ini\n";
    }
    return 0;
}

struct CrossoverOptions {
    std::string config;
    std::string scheme = "SS";
    std::string relay = "RelayDL";
    std::vector<double> freqs{1e9, 2e9};
    double power_db = 20.0;
    std::string out;
};

int run_crossover_command(const CrossoverOptions& o)
{
    Scenario s = relay_comparison_scenario(1e9);
    if (!o.config.empty()) {
        const RunPlan plan = load_run_plan(o.config);
        if (plan.figure) throw ValidationError("crossover takes a scenario config, not a figure preset");
        s = plan.sweeps.front().scenario;
    }
    const Scheme scheme = parse_scheme(o.scheme);
    if (scheme != Scheme::SS && scheme != Scheme::OS && scheme != Scheme::SingleUser) {
        throw ValidationError("crossover RIS scheme must be SingleUser, SS or OS");
    }
    const Scheme relay = parse_scheme(o.relay);
    if (relay != Scheme::RelayDL && relay != Scheme::RelayNDL) {
        throw ValidationError("relay variant must be RelayDL or RelayNDL");
    }
    const RelayVariant variant = relay == Scheme::RelayDL ? RelayVariant::DirectLink : RelayVariant::NoDirectLink;
    const auto rows = report_crossover(s, o.power_db, scheme, variant, o.freqs);
    if (o.out.empty() || o.out == "-") {
        emit_crossover_csv(rows, scheme, variant, std::cout);
    } else {
        std::ofstream f(o.out);
        emit_crossover_csv(rows, scheme, variant, f);
        if (!f) throw std::runtime_error("failed writing " + o.out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Secrecy outage of RIS-aided multi-user wiretap systems"};
    app.require_subcommand(1);

    SweepOptions so;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    sweep->add_option("--config", so.config, "INI config with [scenario], [sweep], [mc] sections")
        ->check(CLI::ExistingFile);
    sweep->add_option("--figure", so.figure, "Use a figure preset")->check(CLI::IsMember({2, 3, 4, 5}));
    sweep->add_option("--seed", so.seed, "Monte Carlo seed");
    sweep->add_option("--trials", so.trials, "Monte Carlo trials per point");
    sweep->add_option("--workers", so.workers, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", so.out, "Output CSV path ('-' for stdout)");
    sweep->add_flag("--allow-low-trials", so.allow_low_trials, "Permit fewer than 1000 Monte Carlo trials");
    sweep->add_flag("--quiet", so.quiet, "Suppress progress output");

    CrossoverOptions co;
    auto* cross = app.add_subcommand("crossover", "Smallest RIS size that beats the DF relay baseline");
    cross->add_option("--config", co.config, "INI config providing the [scenario] section")
        ->check(CLI::ExistingFile);
    cross->add_option("--scheme", co.scheme, "RIS scheme (SingleUser, SS, OS)");
    cross->add_option("--relay", co.relay, "Relay variant (RelayDL, RelayNDL)");
    cross->add_option("--freqs", co.freqs, "Carrier frequencies in Hz")->delimiter(',');
    cross->add_option("--power-db", co.power_db, "Transmit power on the P/N0 axis (dB)");
    cross->add_option("--out", co.out, "Output CSV path ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) return run_sweep_command(so);
        if (*cross) return run_crossover_command(co);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
