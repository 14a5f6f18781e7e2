#pragma once

#include "ris_sop/core_model.hpp"
#include "ris_sop/montecarlo.hpp"
#include "ris_sop/relay_model.hpp"
#include "ris_sop/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ris_sop {

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SweepVariable { PowerDb, N, DeltaSE };

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view name);

struct SweepRange {
    double start = 0.0;
    double stop = 40.0;
    double step = 2.5;

    // start + i*step for every i with value <= stop (within a 1e-9 step slack).
    std::vector<double> values() const;
};

inline constexpr std::uint64_t kMinMonteCarloTrials = 1000;

struct SweepSpec {
    Scenario scenario;
    SweepVariable variable = SweepVariable::PowerDb;
    SweepRange range;
    // Transmit power (dB axis) used when the sweep variable is N or delta_SE.
    double fixed_power_db = 20.0;
    std::vector<Scheme> schemes;
    std::vector<Method> methods;
    ChannelMode mc_mode = ChannelMode::ExactProduct;
    std::uint64_t mc_trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool allow_low_trials = false;
    // BestPair needs an explicitly configured K.
    bool k_explicit = false;
    NomaOptions noma;
};

struct CurvePoint {
    double x;
    double sop;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
};

struct SopCurve {
    Scheme scheme;
    Method method;
    SweepVariable variable;
    std::vector<CurvePoint> points;
    std::uint64_t seed = 0;
    std::string scenario_hash;
    std::string timestamp;   // not serialized to CSV
};

bool supports(Scheme scheme, Method method);

// Throws ValidationError.
void validate(const SweepSpec& spec);

// One curve per (scheme, method) in the order schemes x methods.
std::vector<SopCurve> run_sweep(const SweepSpec& spec, const ProgressFn& progress = {});

// Canonical key=value text of every scenario field and its 64-bit FNV-1a hash.
std::string canonical_scenario(const Scenario& s);
std::string scenario_hash(const Scenario& s);

void emit_csv(std::span<const SopCurve> curves, std::ostream& out);
void emit_csv(std::span<const SopCurve> curves, const std::filesystem::path& path);
std::vector<SopCurve> parse_csv(std::istream& in);

struct CrossoverRow {
    double f;
    CrossoverResult result;
};

std::vector<CrossoverRow> report_crossover(const Scenario& s, double power_db, Scheme ris_scheme,
                                           RelayVariant variant, std::span<const double> freqs);
void emit_crossover_csv(std::span<const CrossoverRow> rows, Scheme ris_scheme,
                        RelayVariant variant, std::ostream& out);

// Parameter sets of the four published figures.
std::vector<SweepSpec> figure_preset(int figure);
// Relay comparison geometry at the given frequency.
Scenario relay_comparison_scenario(double f);

// Config files: INI with [scenario], [sweep], [mc] and optionally [run] figure=<n>.
struct RunPlan {
    std::optional<int> figure;
    std::vector<SweepSpec> sweeps;
};

RunPlan load_run_plan(const std::filesystem::path& path);
RunPlan load_run_plan_text(const std::string& text);
// Applies the [mc] overrides of a preset run after the figure expansion.
void apply_mc_settings(SweepSpec& spec, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                       bool allow_low_trials);
// Resolved, reloadable config text; identical plans reproduce identical CSV output.
std::string resolved_config(const RunPlan& plan);

} // namespace ris_sop
