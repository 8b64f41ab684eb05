// SPDX-License-Identifier: Apache-2.0
#include "authec/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "authec/csv.hpp"
#include "authec/errors.hpp"

namespace authec {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_unsigned(const std::string& text) {
    T v{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) throw ConfigError("not a non-negative integer: '" + text + "'");
    return v;
}

long parse_long(const std::string& text) {
    long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) throw ConfigError("not an integer: '" + text + "'");
    return v;
}

bool parse_bool(const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError("not a boolean: '" + text + "'");
}

std::string list_to_string(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_double(item));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

template <class E>
struct EnumNames {
    std::vector<std::pair<E, std::string>> names;

    std::string to_string(E v) const {
        for (const auto& [e, n] : names)
            if (e == v) return n;
        return "?";
    }
    E parse(const std::string& s) const {
        std::string choices;
        for (const auto& [e, n] : names) {
            if (n == s) return e;
            choices += (choices.empty() ? "" : "|") + n;
        }
        throw ConfigError("expected one of " + choices + ", got '" + s + "'");
    }
};

const EnumNames<FadingModel> kFading{{{FadingModel::Rice, "rice"}, {FadingModel::Multipath, "multipath"},
                                      {FadingModel::Snr, "snr"}}};
const EnumNames<SnrConvention> kConvention{{{SnrConvention::Nominal, "nominal"}, {SnrConvention::Exact, "exact"}}};
const EnumNames<AuthFormula> kFormula{{{AuthFormula::Signed, "signed"}, {AuthFormula::Folded, "folded"}}};
const EnumNames<EveDistanceMode> kEveMode{{{EveDistanceMode::Fixed, "fixed"}, {EveDistanceMode::Redraw, "redraw"}}};
const EnumNames<CostForm> kCostForm{{{CostForm::Standard, "standard"}, {CostForm::PositiveExponent, "positive_exponent"}}};

struct Key {
    std::string name;
    std::string doc;
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

// Accessors are generic lambdas returning a reference into the config.
template <class A>
Key dbl(std::string name, std::string doc, A acc) {
    return {std::move(name), std::move(doc), [acc](const ExperimentConfig& c) { return format_double(acc(c)); },
            [acc](ExperimentConfig& c, const std::string& v) { acc(c) = parse_double(v); }};
}

template <class A>
Key size(std::string name, std::string doc, A acc) {
    return {std::move(name), std::move(doc), [acc](const ExperimentConfig& c) { return std::to_string(acc(c)); },
            [acc](ExperimentConfig& c, const std::string& v) { acc(c) = parse_unsigned<std::size_t>(v); }};
}

template <class A>
Key integer(std::string name, std::string doc, A acc) {
    return {std::move(name), std::move(doc), [acc](const ExperimentConfig& c) { return std::to_string(acc(c)); },
            [acc](ExperimentConfig& c, const std::string& v) { acc(c) = parse_long(v); }};
}

template <class A>
Key flag(std::string name, std::string doc, A acc) {
    return {std::move(name), std::move(doc),
            [acc](const ExperimentConfig& c) { return std::string(acc(c) ? "true" : "false"); },
            [acc](ExperimentConfig& c, const std::string& v) { acc(c) = parse_bool(v); }};
}

template <class A>
Key text(std::string name, std::string doc, A acc) {
    return {std::move(name), std::move(doc), [acc](const ExperimentConfig& c) { return std::string(acc(c)); },
            [acc](ExperimentConfig& c, const std::string& v) { acc(c) = v; }};
}

template <class A>
Key list(std::string name, std::string doc, A acc) {
    return {std::move(name), std::move(doc), [acc](const ExperimentConfig& c) { return list_to_string(acc(c)); },
            [acc](ExperimentConfig& c, const std::string& v) { acc(c) = parse_list(v); }};
}

template <class A>
Key optional_dbl(std::string name, std::string doc, A acc) {
    return {std::move(name), std::move(doc),
            [acc](const ExperimentConfig& c) {
                const auto& o = acc(c);
                return o ? format_double(*o) : std::string("auto");
            },
            [acc](ExperimentConfig& c, const std::string& v) {
                if (v == "auto") acc(c).reset(); else acc(c) = parse_double(v);
            }};
}

template <class E, class A>
Key choice(std::string name, std::string doc, const EnumNames<E>& names, A acc) {
    return {std::move(name), std::move(doc), [acc, &names](const ExperimentConfig& c) { return names.to_string(acc(c)); },
            [acc, &names](ExperimentConfig& c, const std::string& v) { acc(c) = names.parse(v); }};
}

#define ACC(expr) [](auto& c) -> auto& { return c.expr; }

void add_path_keys(std::vector<Key>& keys, const std::string& who, PathConfig ExperimentConfig::*member) {
    auto acc = [member](auto& c) -> auto& { return c.*member; };
    keys.push_back(size(who + ".n_paths", "number of multipath components L",
                        [acc](auto& c) -> auto& { return acc(c).n_paths; }));
    keys.push_back(dbl(who + ".attenuation", "total attenuation A (> 0)",
                       [acc](auto& c) -> auto& { return acc(c).attenuation; }));
    keys.push_back(dbl(who + ".mean_gain", "real mean E{h_l} shared by every path",
                       [acc](auto& c) -> auto& { return acc(c).mean_gain; }));
    keys.push_back(dbl(who + ".delay_step", "path l has delay l*delay_step, s",
                       [acc](auto& c) -> auto& { return acc(c).delay_step; }));
    keys.push_back(dbl(who + ".path_sigma", "per-path standard deviation",
                       [acc](auto& c) -> auto& { return acc(c).path_sigma; }));
    keys.push_back(dbl(who + ".rice_k", "Rice shape K for the direct Rice sampler",
                       [acc](auto& c) -> auto& { return acc(c).rice_k; }));
}

const std::vector<Key>& key_table() {
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        k.push_back({"seed", "master seed",
                     [](const ExperimentConfig& c) { return std::to_string(c.seed); },
                     [](ExperimentConfig& c, const std::string& v) { c.seed = parse_unsigned<std::uint64_t>(v); }});
        k.push_back(size("grid.n_subcarriers", "number of subcarriers N", ACC(n_subcarriers)));
        k.push_back(dbl("grid.slot_t", "OFDM symbol length T, s (delta_f = 1/T)", ACC(slot_t)));
        k.push_back(dbl("grid.guard_t", "guard interval T_g, s", ACC(guard_t)));
        k.push_back(dbl("grid.f0", "first subcarrier frequency, Hz", ACC(f0)));
        k.push_back(dbl("channel.noise_var", "noise variance sigma_n^2", ACC(noise_var)));
        k.push_back(choice("channel.fading", "rice|multipath|snr", kFading, ACC(fading)));
        k.push_back(choice("channel.convention", "nominal|exact SNR law for the multipath model", kConvention,
                           ACC(convention)));
        k.push_back(size("channel.subcarrier", "subcarrier index simulated", ACC(subcarrier)));
        add_path_keys(k, "alice", &ExperimentConfig::alice_path);
        add_path_keys(k, "eve", &ExperimentConfig::eve_path);
        k.push_back(dbl("alice.power", "Alice total power P_A, W", ACC(alice_power)));
        k.push_back(dbl("alice.rate", "Alice rate r_A, bits/s", ACC(alice_rate)));
        k.push_back(dbl("eve.power", "Eve total power P_E, W", ACC(eve_power)));
        k.push_back(dbl("eve.rate", "Eve rate r_E, bits/s", ACC(eve_rate)));
        k.push_back(dbl("auth.d_alice", "Alice distance, m", ACC(auth.d_alice)));
        k.push_back(dbl("auth.sigma", "distance-estimate noise std, m", ACC(auth.sigma)));
        k.push_back(dbl("auth.de_min", "lower end of Eve's distance prior, m", ACC(auth.de_min)));
        k.push_back(dbl("auth.de_max", "upper end of Eve's distance prior, m", ACC(auth.de_max)));
        k.push_back(dbl("auth.pfa", "target false-alarm probability", ACC(auth.pfa_target)));
        k.push_back(choice("auth.formula", "signed|folded test statistic", kFormula, ACC(auth_formula)));
        k.push_back(choice("auth.eve_distance", "fixed|redraw", kEveMode, ACC(eve_mode)));
        k.push_back(dbl("auth.d_eve", "Eve distance in fixed mode, m", ACC(d_eve)));
        k.push_back(dbl("priors.pi_alice", "prior probability that Alice occupies a slot", ACC(pi_alice)));
        k.push_back(dbl("qos.theta", "QoS exponent theta, 1/bit", ACC(theta)));
        k.push_back(optional_dbl("opt.step", "GD step on the normalised scale, or auto", ACC(gd.step)));
        k.push_back(integer("opt.max_iters", "GD iteration cap", ACC(gd.max_iters)));
        k.push_back(dbl("opt.grad_tol", "GD stopping tolerance on the normalised gradient", ACC(gd.grad_tol)));
        k.push_back(optional_dbl("opt.r_init", "GD start rate, bits/s, or auto", ACC(gd.r_init)));
        k.push_back(choice("opt.cost_form", "standard|positive_exponent rate objective", kCostForm, ACC(cost_form)));
        k.push_back(dbl("sweep.r_lo", "lower end of rate sweeps, bits/s", ACC(sweep_r_lo)));
        k.push_back(optional_dbl("sweep.r_hi", "upper end of rate sweeps, bits/s, or auto", ACC(sweep_r_hi)));
        k.push_back(size("sweep.r_points", "rate grid points", ACC(sweep_r_points)));
        k.push_back(list("sweep.thetas", "theta values for EC-vs-rate curves", ACC(sweep_thetas)));
        k.push_back(list("sweep.pfas", "false-alarm targets for sweeps", ACC(sweep_pfas)));
        k.push_back(list("sweep.pi_eves", "Eve priors for the authentication grid", ACC(sweep_pi_eves)));
        k.push_back(size("sim.episodes", "Monte Carlo episodes M", ACC(sim_episodes)));
        k.push_back(size("sim.slots", "slots per episode t", ACC(sim_slots)));
        k.push_back(flag("sim.dump", "write per-episode CSV", ACC(sim_dump)));
        k.push_back(list("dataset.thetas", "theta axis of the label sweep", ACC(dataset.thetas)));
        k.push_back(list("dataset.pi_alices", "pi(A) axis of the label sweep", ACC(dataset.pi_alices)));
        k.push_back(list("dataset.pfas", "P_fa axis of the label sweep", ACC(dataset.pfas)));
        k.push_back(size("dataset.a_per_point", "random a draws per grid point", ACC(dataset.a_per_point)));
        k.push_back(dbl("dataset.a_lo", "lower end of a", ACC(dataset.a_lo)));
        k.push_back(dbl("dataset.a_hi", "upper end of a", ACC(dataset.a_hi)));
        k.push_back(dbl("dataset.scale", "SNR scale used for labels", ACC(dataset.scale)));
        k.push_back(size("dataset.grid_points", "oracle grid points per label check", ACC(dataset.grid_points)));
        k.push_back(dbl("train.lr0", "initial learning rate", ACC(train.lr0)));
        k.push_back(size("train.epochs", "training epochs", ACC(train.epochs)));
        k.push_back(size("train.lr_decay_every", "epochs between learning-rate drops", ACC(train.lr_decay_every)));
        k.push_back(dbl("train.lr_decay_factor", "learning-rate drop factor", ACC(train.lr_decay_factor)));
        k.push_back(dbl("train.split", "training fraction", ACC(train.split)));
        k.push_back(size("train.batch_size", "mini-batch size (0 = full batch)", ACC(train.batch_size)));
        k.push_back(text("train.dataset", "dataset CSV to train on (empty: generate)", ACC(train_dataset)));
        k.push_back(text("predict.model", "model file for predict", ACC(model_path)));
        k.push_back(text("predict.features", "feature CSV for predict (empty: held-out set)", ACC(predict_features)));
        k.push_back(text("csit.gains", "gain file, one |H|^2 per line (empty: random)", ACC(csit_gains)));
        k.push_back(size("csit.n_random", "number of random gains when csit.gains is empty", ACC(csit_n_random)));
        k.push_back(dbl("csit.total_power", "power budget P_T", ACC(csit_total_power)));
        k.push_back(optional_dbl("csit.step", "subgradient step, or auto", ACC(csit_step)));
        k.push_back(integer("csit.max_iters", "subgradient iteration cap", ACC(csit_max_iters)));
        k.push_back(text("manifest.command", "subcommand that produced a manifest", ACC(command)));
        k.push_back(text("manifest.version", "artifact version that produced a manifest", ACC(version)));
        return k;
    }();
    return table;
}

#undef ACC

}  // namespace

MultipathProfile PathConfig::profile() const {
    MultipathProfile p;
    p.n_paths = n_paths;
    p.attenuation = attenuation;
    p.mean_path_gains.assign(n_paths, {mean_gain, 0.0});
    p.path_delays.resize(n_paths);
    for (std::size_t l = 0; l < n_paths; ++l) p.path_delays[l] = delay_step * static_cast<double>(l);
    p.path_sigma = path_sigma;
    p.rice_k = rice_k;
    return p;
}

Scenario ExperimentConfig::scenario() const {
    Scenario s;
    s.auth = auth;
    s.auth_formula = auth_formula;
    s.eve_mode = eve_mode;
    s.d_eve = d_eve;
    s.priors.pi_alice = pi_alice;
    s.grid = OfdmGrid::from_slot(n_subcarriers, slot_t, guard_t, f0);
    s.alice_path = alice_path.profile();
    s.eve_path = eve_path.profile();
    s.alice = {alice_power, alice_rate, Transmitter::Alice};
    s.eve = {eve_power, eve_rate, Transmitter::Eve};
    s.noise_var = noise_var;
    s.theta = theta;
    s.fading = fading;
    s.convention = convention;
    s.subcarrier = subcarrier;
    return s;
}

SimConfig ExperimentConfig::sim_config() const { return {sim_episodes, sim_slots, seed, scenario()}; }

SweepSpec ExperimentConfig::sweep_spec() const {
    SweepSpec s = dataset;
    s.delta_f = 1.0 / slot_t;
    s.ts = slot_t + guard_t;
    return s;
}

TrainConfig ExperimentConfig::train_config() const {
    TrainConfig t = train;
    t.seed = seed;
    return t;
}

void ExperimentConfig::validate() const {
    try {
        if (!(slot_t > 0.0)) throw DomainError("grid.slot_t must be > 0");
        if (n_subcarriers < 1) throw DomainError("grid.n_subcarriers must be >= 1");
        if (alice_path.n_paths < 1 || eve_path.n_paths < 1) throw DomainError("n_paths must be >= 1");
        scenario().validate();
        gd.validate();
        if (sweep_r_points < 2) throw DomainError("sweep.r_points must be >= 2");
        if (!(sweep_r_lo >= 0.0)) throw DomainError("sweep.r_lo must be >= 0");
        if (sweep_r_hi && !(*sweep_r_hi > sweep_r_lo)) throw DomainError("sweep.r_hi must exceed sweep.r_lo");
        for (double t : sweep_thetas)
            if (!(t > 0.0)) throw DomainError("sweep.thetas must be > 0");
        for (double p : sweep_pfas)
            if (!(p > 0.0 && p < 1.0)) throw DomainError("sweep.pfas must lie in (0,1)");
        for (double p : sweep_pi_eves)
            if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sweep.pi_eves must lie in [0,1]");
        if (sim_episodes < 1 || sim_slots < 1) throw DomainError("sim.episodes and sim.slots must be >= 1");
        sweep_spec().validate();
        train_config().validate();
        if (csit_n_random < 1) throw DomainError("csit.n_random must be >= 1");
        if (!(csit_total_power > 0.0)) throw DomainError("csit.total_power must be > 0");
        if (csit_step && !(*csit_step > 0.0)) throw DomainError("csit.step must be > 0");
        if (csit_max_iters < 1) throw DomainError("csit.max_iters must be >= 1");
    } catch (const NumericError& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
}

void apply_assignment(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& k : key_table()) {
        if (k.name == key) {
            try {
                k.set(cfg, value);
            } catch (const ConfigError& e) {
                throw ConfigError(key + ": " + e.what());
            }
            return;
        }
    }
    throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_assignment(ExperimentConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
    apply_assignment(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        try {
            apply_assignment(cfg, t);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& k : key_table()) out += k.name + "=" + k.get(cfg) + "\n";
    return out;
}

std::vector<ConfigKeyDoc> config_keys() {
    std::vector<ConfigKeyDoc> out;
    for (const auto& k : key_table()) out.push_back({k.name, k.doc});
    return out;
}

}  // namespace authec
