// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "authec/csit.hpp"
#include "authec/montecarlo.hpp"
#include "authec/rate_opt.hpp"
#include "authec/scenario.hpp"
#include "authec/surrogate.hpp"

namespace authec {

/// Per-transmitter multipath keys. Every path shares the real mean gain;
/// path l has delay l * delay_step.
struct PathConfig {
    std::size_t n_paths = 1;
    double attenuation = 1.0;
    double mean_gain = 1.0;
    double delay_step = 0.0;
    double path_sigma = 1.0;
    double rice_k = 1.0;

    MultipathProfile profile() const;
};

/// Every tunable of every subcommand, with the defaults used by the
/// bundled experiments.
struct ExperimentConfig {
    std::uint64_t seed = 1;

    // grid
    std::size_t n_subcarriers = 256;
    double slot_t = 0.050;
    double guard_t = 0.016;
    double f0 = 10000.0;

    // channel
    double noise_var = 1.0;
    FadingModel fading = FadingModel::Rice;
    SnrConvention convention = SnrConvention::Nominal;
    std::size_t subcarrier = 0;
    PathConfig alice_path;
    PathConfig eve_path;
    double alice_power = 256.0;
    double alice_rate = 35.0;
    double eve_power = 256.0;
    double eve_rate = 30.0;

    // authentication and priors
    AuthModel auth;
    AuthFormula auth_formula = AuthFormula::Signed;
    EveDistanceMode eve_mode = EveDistanceMode::Fixed;
    double d_eve = 105.0;
    double pi_alice = 0.5;

    double theta = 0.01;

    // optimizer
    GdConfig gd;
    CostForm cost_form = CostForm::Standard;

    // sweeps
    double sweep_r_lo = 0.0;
    std::optional<double> sweep_r_hi;
    std::size_t sweep_r_points = 401;
    std::vector<double> sweep_thetas{0.01, 0.1};
    std::vector<double> sweep_pfas{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> sweep_pi_eves{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

    // simulation
    std::size_t sim_episodes = 100000;
    std::size_t sim_slots = 1;
    bool sim_dump = false;

    // surrogate
    SweepSpec dataset;
    TrainConfig train;  // its seed is taken from `seed`
    std::string train_dataset;    // empty: generate in memory
    std::string model_path;       // predict: model file
    std::string predict_features; // predict: CSV with theta,a,pfa,pi_alice; empty: held-out set

    // known-CSIT power allocation
    std::string csit_gains;  // one gain per line; empty: draw csit_n_random Rice gains
    std::size_t csit_n_random = 8;
    double csit_total_power = 8.0;
    std::optional<double> csit_step;
    long csit_max_iters = 200000;

    // manifest echo
    std::string command;
    std::string version = AUTHEC_VERSION;

    Scenario scenario() const;
    SimConfig sim_config() const;
    SweepSpec sweep_spec() const;
    TrainConfig train_config() const;

    /// Throws ConfigError on any invalid field.
    void validate() const;
};

/// Applies one "key=value" assignment. Throws ConfigError on unknown keys or
/// unparsable values.
void apply_assignment(ExperimentConfig& cfg, const std::string& assignment);
void apply_assignment(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses flat "dotted.key=value" text on top of the defaults. Blank lines
/// and lines starting with '#' are ignored.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Writes every key, one per line, in a fixed order; parse_config of the
/// result reproduces the config exactly.
std::string serialize_config(const ExperimentConfig& cfg);

/// All recognised keys with their documentation line.
struct ConfigKeyDoc {
    std::string key;
    std::string doc;
};
std::vector<ConfigKeyDoc> config_keys();

}  // namespace authec
