#include "ris_sop/experiments.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace ris_sop {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void reject_unknown(const pt::ptree& section, const std::string& name, const std::set<std::string>& known)
{
    for (const auto& [key, value] : section) {
        if (!known.count(key)) throw ValidationError("unknown key '" + key + "' in [" + name + "]");
    }
}

template <typename T>
void read(const pt::ptree& section, const char* key, T& target)
{
    if (auto v = section.get_optional<std::string>(key)) {
        std::istringstream is(trim(*v));
        T parsed{};
        is >> parsed;
        if (!is || !(is >> std::ws).eof()) throw ValidationError(std::string("bad value for '") + key + "'");
        target = parsed;
    }
}

void read_bool(const pt::ptree& section, const char* key, bool& target)
{
    if (auto v = section.get_optional<std::string>(key)) {
        const std::string t = trim(*v);
        if (t == "true" || t == "1") {
            target = true;
        } else if (t == "false" || t == "0") {
            target = false;
        } else {
            throw ValidationError(std::string("bad boolean for '") + key + "'");
        }
    }
}

struct McSettings {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool allow_low_trials = false;
    ChannelMode mode = ChannelMode::ExactProduct;
};

McSettings read_mc(const pt::ptree& root)
{
    McSettings mc;
    if (auto sec = root.get_child_optional("mc")) {
        reject_unknown(*sec, "mc", {"trials", "seed", "workers", "allow_low_trials", "mode"});
        read(*sec, "trials", mc.trials);
        read(*sec, "seed", mc.seed);
        read(*sec, "workers", mc.workers);
        read_bool(*sec, "allow_low_trials", mc.allow_low_trials);
        if (auto m = sec->get_optional<std::string>("mode")) mc.mode = parse_channel_mode(trim(*m));
    }
    return mc;
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void apply_mc_settings(SweepSpec& spec, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                       bool allow_low_trials)
{
    spec.mc_trials = trials;
    spec.seed = seed;
    spec.workers = workers;
    spec.allow_low_trials = allow_low_trials;
}

RunPlan load_run_plan_text(const std::string& text)
{
    pt::ptree root;
    std::istringstream is(text);
    try {
        pt::read_ini(is, root);
    } catch (const pt::ini_parser_error& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    for (const auto& [name, sec] : root) {
        if (name != "run" && name != "scenario" && name != "sweep" && name != "mc") {
            throw ValidationError("unknown config section [" + name + "]");
        }
    }
    const McSettings mc = read_mc(root);
    RunPlan plan;
    if (auto run = root.get_child_optional("run")) {
        reject_unknown(*run, "run", {"figure"});
        int fig = 0;
        read(*run, "figure", fig);
        if (fig != 0) {
            plan.figure = fig;
            plan.sweeps = figure_preset(fig);
            for (auto& s : plan.sweeps) {
                apply_mc_settings(s, mc.trials, mc.seed, mc.workers, mc.allow_low_trials);
                s.mc_mode = mc.mode;
            }
            return plan;
        }
    }

    SweepSpec spec;
    if (auto sec = root.get_child_optional("scenario")) {
        reject_unknown(*sec, "scenario",
                       {"f", "N", "M", "L", "K", "eta", "R_th", "N0_dB", "delta_SR", "delta_RS", "delta_SU",
                        "delta_RU", "delta_SE", "delta_RE", "alpha", "upsilon"});
        Scenario& s = spec.scenario;
        read(*sec, "f", s.f);
        read(*sec, "N", s.N);
        read(*sec, "M", s.M);
        read(*sec, "L", s.L);
        read(*sec, "K", s.K);
        spec.k_explicit = sec->get_optional<std::string>("K").has_value();
        read(*sec, "eta", s.eta);
        read(*sec, "R_th", s.R_th);
        read(*sec, "N0_dB", s.N0_dB);
        read(*sec, "delta_SR", s.delta_SR);
        read(*sec, "delta_RS", s.delta_RS);
        read(*sec, "delta_SU", s.delta_SU);
        read(*sec, "delta_RU", s.delta_RU);
        read(*sec, "delta_SE", s.delta_SE);
        read(*sec, "delta_RE", s.delta_RE);
        read(*sec, "alpha", s.alpha);
        read(*sec, "upsilon", s.upsilon);
    }
    if (auto sec = root.get_child_optional("sweep")) {
        reject_unknown(*sec, "sweep",
                       {"variable", "start", "stop", "step", "fixed_power_db", "schemes", "methods",
                        "noma_power_step", "noma_max_strong_share"});
        if (auto v = sec->get_optional<std::string>("variable")) spec.variable = parse_sweep_variable(trim(*v));
        read(*sec, "start", spec.range.start);
        read(*sec, "stop", spec.range.stop);
        read(*sec, "step", spec.range.step);
        read(*sec, "fixed_power_db", spec.fixed_power_db);
        if (auto v = sec->get_optional<std::string>("schemes")) {
            for (const auto& n : split_list(*v)) spec.schemes.push_back(parse_scheme(n));
        }
        if (auto v = sec->get_optional<std::string>("methods")) {
            for (const auto& n : split_list(*v)) spec.methods.push_back(parse_method(n));
        }
        read(*sec, "noma_power_step", spec.noma.power_step);
        read(*sec, "noma_max_strong_share", spec.noma.max_strong_share);
    }
    apply_mc_settings(spec, mc.trials, mc.seed, mc.workers, mc.allow_low_trials);
    spec.mc_mode = mc.mode;
    plan.sweeps.push_back(spec);
    return plan;
}

RunPlan load_run_plan(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return load_run_plan_text(ss.str());
}

std::string resolved_config(const RunPlan& plan)
{
    std::ostringstream os;
    if (plan.sweeps.empty()) return {};
    const SweepSpec& first = plan.sweeps.front();
    if (plan.figure) {
        os << "[run]\nfigure = " << *plan.figure << "\n\n";
    } else {
        const Scenario& s = first.scenario;
        os << "[scenario]\n";
        std::istringstream canon(canonical_scenario(s));
        std::string line;
        while (std::getline(canon, line)) {
            const auto eq = line.find('=');
            os << line.substr(0, eq) << " = " << line.substr(eq + 1) << '\n';
        }
        os << "\n[sweep]\nvariable = " << to_string(first.variable) << "\nstart = " << num(first.range.start)
           << "\nstop = " << num(first.range.stop) << "\nstep = " << num(first.range.step)
           << "\nfixed_power_db = " << num(first.fixed_power_db) << "\nschemes = ";
        for (std::size_t i = 0; i < first.schemes.size(); ++i) os << (i ? "," : "") << to_string(first.schemes[i]);
        os << "\nmethods = ";
        for (std::size_t i = 0; i < first.methods.size(); ++i) os << (i ? "," : "") << to_string(first.methods[i]);
        os << "\nnoma_power_step = " << num(first.noma.power_step)
           << "\nnoma_max_strong_share = " << num(first.noma.max_strong_share) << "\n\n";
    }
    os << "[mc]\ntrials = " << first.mc_trials << "\nseed = " << first.seed << "\nworkers = " << first.workers
       << "\nallow_low_trials = " << (first.allow_low_trials ? "true" : "false")
       << "\nmode = " << to_string(first.mc_mode) << "\n";
    if (plan.figure) {
        os << "\n; expanded sweeps\n";
        for (const auto& s : plan.sweeps) {
            os << "; scenario " << scenario_hash(s.scenario) << ":";
            std::istringstream canon(canonical_scenario(s.scenario));
            std::string line;
            while (std::getline(canon, line)) os << ' ' << line;
            os << '\n';
        }
    }
    return os.str();
}

} // namespace ris_sop
