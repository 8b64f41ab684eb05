// SPDX-License-Identifier: Apache-2.0
#include <omp.h>

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "authec/config.hpp"
#include "authec/errors.hpp"
#include "authec/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonFlags {
    std::string config;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "flat key=value config file (a manifest works too)");
    cmd->add_option("--set", f.overrides, "override one key, e.g. --set qos.theta=0.1 (repeatable)");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--out", f.out, "output directory")->capture_default_str();
    cmd->add_option("--workers", f.workers, "worker threads (0 = all processors)")->capture_default_str();
}

// One line, key=value fields, message quoted last.
void error_record(const char* kind, int code, const std::string& msg) {
    std::string clean;
    for (char c : msg) clean += (c == '"') ? '\'' : (c == '\n' ? ' ' : c);
    std::cerr << "error kind=" << kind << " exit=" << code << " message=\"" << clean << "\"\n";
}

int run(const std::string& name, const CommonFlags& f) {
    authec::ExperimentConfig cfg = f.config.empty() ? authec::ExperimentConfig{} : authec::load_config(f.config);
    for (const auto& kv : f.overrides) authec::apply_assignment(cfg, kv);
    if (f.seed) cfg.seed = *f.seed;
    if (f.workers < 0) throw authec::ConfigError("--workers must be >= 0");
    if (f.workers > 0) omp_set_num_threads(f.workers);
    for (const auto& path : authec::run_subcommand(name, cfg, f.out)) std::cout << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Effective capacity of an authenticated multipath OFDM link: sweeps, optimisation, surrogate, "
                 "simulation"};
    app.set_version_flag("--version", std::string(AUTHEC_VERSION));
    app.require_subcommand(1);

    std::string selected;
    CommonFlags flags;
    for (const auto& sc : authec::subcommands()) {
        auto* cmd = app.add_subcommand(sc.name, sc.summary);
        add_common(cmd, flags);
        cmd->callback([&selected, name = sc.name] { selected = name; });
    }

    std::string manifest;
    CommonFlags rerun_flags;
    auto* rerun = app.add_subcommand("rerun", "repeat the run recorded in a manifest");
    rerun->add_option("manifest", manifest, "manifest file")->required();
    rerun->add_option("--out", rerun_flags.out, "output directory")->capture_default_str();
    rerun->add_option("--workers", rerun_flags.workers, "worker threads (0 = all processors)");

    auto* keys = app.add_subcommand("keys", "list configuration keys with defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (keys->parsed()) {
            const authec::ExperimentConfig defaults;
            const auto text = authec::serialize_config(defaults);
            std::size_t pos = 0;
            for (const auto& k : authec::config_keys()) {
                const auto end = text.find('\n', pos);
                std::cout << text.substr(pos, end - pos) << "    # " << k.doc << "\n";
                pos = end + 1;
            }
            return 0;
        }
        if (rerun->parsed()) {
            const auto cfg = authec::load_config(manifest);
            if (cfg.command.empty()) throw authec::ConfigError("manifest has no manifest.command entry");
            rerun_flags.config = manifest;
            return run(cfg.command, rerun_flags);
        }
        return run(selected, flags);
    } catch (const authec::ConfigError& e) {
        error_record("config", kExitConfig, e.what());
        return kExitConfig;
    } catch (const authec::NumericError& e) {
        error_record("numeric", kExitNumeric, e.what());
        return kExitNumeric;
    }
}
