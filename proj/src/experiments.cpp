// SPDX-License-Identifier: Apache-2.0
#include "authec/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "authec/csv.hpp"
#include "authec/errors.hpp"

namespace authec {

namespace {

namespace fs = std::filesystem;

using Files = std::vector<std::string>;

std::string join(const std::string& dir, const std::string& file) { return (fs::path(dir) / file).string(); }

std::vector<double> rate_grid(const ExperimentConfig& cfg, const EcContext& ctx) {
    const double hi = cfg.sweep_r_hi.value_or(rate_search_upper(ctx.alice, ctx.delta_f));
    const std::size_t n = cfg.sweep_r_points;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = cfg.sweep_r_lo + (hi - cfg.sweep_r_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return r;
}

Scenario with_pfa(Scenario s, double pfa) {
    s.auth.pfa_target = pfa;
    return s;
}

Files auth_stats_cmd(const ExperimentConfig& cfg, const std::string& dir) {
    const auto sc = cfg.scenario();
    const std::string path = join(dir, "auth_stats.csv");
    CsvWriter w(path, {"pfa_target", "epsilon", "pfa", "d_eve", "pmd_at_d_eve", "expected_pmd", "kld_signed",
                       "kld_numeric"});
    std::vector<double> targets{cfg.auth.pfa_target};
    targets.insert(targets.end(), cfg.sweep_pfas.begin(), cfg.sweep_pfas.end());
    for (double p : targets) {
        AuthModel m = sc.auth;
        m.pfa_target = p;
        const auto st = auth_stats(m, sc.d_eve, sc.auth_formula);
        w.cell(p).cell(st.epsilon).cell(st.pfa).cell(st.d_eve).cell(st.pmd_at_d_eve).cell(st.expected_pmd);
        w.cell(st.kld_signed).cell(st.kld_numeric).end_row();
    }
    return {path};
}

Files ec_sweep_cmd(const ExperimentConfig& cfg, const std::string& dir) {
    const auto base = cfg.scenario();
    const std::string curve_path = join(dir, "ec_vs_rate.csv");
    const std::string argmax_path = join(dir, "ec_argmax.csv");
    const std::string grid_path = join(dir, "ec_auth_grid.csv");
    CsvWriter curve(curve_path, {"r", "theta", "pfa", "pi_eve", "ec"});
    CsvWriter argmax(argmax_path, {"theta", "pfa", "pi_eve", "r_star", "ec_star", "grid_step"});
    for (double theta : cfg.sweep_thetas) {
        for (double pfa : cfg.sweep_pfas) {
            auto sc = with_pfa(base, pfa);
            sc.theta = theta;
            const auto ctx = sc.ec_context();
            const auto rates = rate_grid(cfg, ctx);
            const auto ec = ec_curve(rates.front(), rates.back(), rates.size(), ctx);
            std::size_t best = 0;
            for (std::size_t i = 0; i < rates.size(); ++i) {
                curve.cell(rates[i]).cell(theta).cell(pfa).cell(sc.priors.pi_eve()).cell(ec[i]).end_row();
                if (ec[i] > ec[best]) best = i;
            }
            argmax.cell(theta).cell(pfa).cell(sc.priors.pi_eve()).cell(rates[best]).cell(ec[best]);
            argmax.cell(rates[1] - rates[0]).end_row();
        }
    }
    CsvWriter grid(grid_path, {"r", "theta", "pfa", "pi_eve", "ec"});
    for (double pfa : cfg.sweep_pfas) {
        for (double pi_eve : cfg.sweep_pi_eves) {
            auto sc = with_pfa(base, pfa);
            sc.priors.pi_alice = 1.0 - pi_eve;
            grid.cell(sc.alice.rate).cell(sc.theta).cell(pfa).cell(pi_eve).cell(sc.closed_form_ec()).end_row();
        }
    }
    return {curve_path, argmax_path, grid_path};
}

Files rate_opt_cmd(const ExperimentConfig& cfg, const std::string& dir) {
    const auto base = cfg.scenario();
    const std::string summary_path = join(dir, "rate_opt_summary.csv");
    const std::string trace_path = join(dir, "rate_opt_trace.csv");
    CsvWriter summary(summary_path, {"theta", "pfa", "pi_alice", "lambda", "scale", "r_gd", "r_grid", "grid_step",
                                     "ec_gd", "ec_grid", "converged", "iterations", "step"});
    CsvWriter trace(trace_path, {"theta", "iter", "r", "cost", "gradient", "normalized_gradient"});
    for (double theta : cfg.sweep_thetas) {
        auto sc = base;
        sc.theta = theta;
        const auto ctx = sc.ec_context();
        const auto gd = gd_optimize(cfg.gd, ctx.rate_problem(cfg.cost_form));
        const auto rates = rate_grid(cfg, ctx);
        const auto oracle = grid_search_rate(rates.front(), rates.back(), rates.size(), ctx);
        summary.cell(theta).cell(ctx.pfa).cell(ctx.priors.pi_alice).cell(ctx.alice.lambda).cell(ctx.alice.scale);
        summary.cell(gd.r_star).cell(oracle.r_star).cell(oracle.step).cell(ctx.ec(gd.r_star)).cell(oracle.ec_star);
        summary.cell(gd.converged ? 1 : 0).cell(gd.iterations).cell(gd.step).end_row();
        for (std::size_t m = 0; m < gd.iterates.size(); ++m) {
            const auto& it = gd.iterates[m];
            trace.cell(theta).cell(static_cast<std::uint64_t>(m)).cell(it.r).cell(it.cost).cell(it.gradient);
            trace.cell(it.normalized_gradient).end_row();
        }
        if (!gd.converged) std::cerr << "rate-opt: gradient descent hit max_iters at theta=" << theta << "\n";
    }
    return {summary_path, trace_path};
}

DatasetReport make_dataset(const ExperimentConfig& cfg, std::uint64_t seed) {
    auto rep = generate_dataset(cfg.sweep_spec(), cfg.gd, seed);
    for (const auto& msg : rep.messages) std::cerr << "gen-dataset: dropped " << msg << "\n";
    return rep;
}

Files gen_dataset_cmd(const ExperimentConfig& cfg, const std::string& dir) {
    const auto rep = make_dataset(cfg, cfg.seed);
    const std::string path = join(dir, "dataset.csv");
    save_dataset(path, rep.data);
    return {path};
}

double label_variance(const RateDataset& d) {
    double mean = 0.0;
    for (double y : d.labels) mean += y;
    mean /= static_cast<double>(d.size());
    double var = 0.0;
    for (double y : d.labels) var += (y - mean) * (y - mean);
    return var / static_cast<double>(d.size());
}

Files train_cmd(const ExperimentConfig& cfg, const std::string& dir) {
    const RateDataset data = cfg.train_dataset.empty() ? make_dataset(cfg, cfg.seed).data : load_dataset(cfg.train_dataset);
    const RateDataset test = make_dataset(cfg, cfg.seed + 1).data;
    const auto res = train(data, cfg.train_config());

    const std::string model_path = join(dir, "model.txt");
    const std::string log_path = join(dir, "train_log.csv");
    const std::string eval_path = join(dir, "surrogate_eval.csv");
    save_model(model_path, res.model);
    CsvWriter log(log_path, {"epoch", "learning_rate", "train_mse", "val_mse"});
    for (const auto& e : res.history) {
        log.cell(static_cast<std::uint64_t>(e.epoch)).cell(e.learning_rate).cell(e.train_mse).cell(e.val_mse).end_row();
    }
    const double test_mse = loss(res.model, test);
    const double var = label_variance(test);
    CsvWriter eval(eval_path, {"n_train", "n_val", "n_test", "test_mse", "label_variance", "mse_over_variance", "r2"});
    eval.cell(static_cast<std::uint64_t>(res.train_indices.size()))
        .cell(static_cast<std::uint64_t>(res.val_indices.size()))
        .cell(static_cast<std::uint64_t>(test.size()))
        .cell(test_mse)
        .cell(var)
        .cell(test_mse / var)
        .cell(1.0 - test_mse / var)
        .end_row();
    return {model_path, log_path, eval_path};
}

Files predict_cmd(const ExperimentConfig& cfg, const std::string& dir) {
    if (cfg.model_path.empty()) throw ConfigError("predict requires predict.model");
    const auto model = load_model(cfg.model_path);
    std::vector<Features> xs;
    if (cfg.predict_features.empty()) {
        xs = make_dataset(cfg, cfg.seed + 1).data.features;
    } else {
        const auto t = read_csv(cfg.predict_features);
        const auto theta = t.numeric("theta");
        const auto a = t.numeric("a");
        const auto pfa = t.numeric("pfa");
        const auto pi = t.numeric("pi_alice");
        for (std::size_t k = 0; k < theta.size(); ++k) xs.push_back({theta[k], a[k], pfa[k], pi[k]});
    }
    const auto spec = cfg.sweep_spec();
    const std::string path = join(dir, "predictions.csv");
    CsvWriter w(path, {"theta", "a", "pfa", "pi_alice", "r_pred", "r_gd"});
    for (const auto& x : xs) {
        for (double v : x) w.cell(v);
        w.cell(predict(model, x)).cell(optimal_rate_label(spec, cfg.gd, x)).end_row();
    }
    return {path};
}

Files simulate_cmd(const ExperimentConfig& cfg, const std::string& dir) {
    const auto sim = cfg.sim_config();
    std::vector<EpisodeRecord> episodes;
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = empirical_ec(sim, cfg.sim_dump ? &episodes : nullptr);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "simulate: " << s.n_slots << " slots in " << secs << " s\n";

    const auto& sc = sim.scenario;
    const auto row = sc.row();
    const std::string path = join(dir, "simulate_summary.csv");
    CsvWriter w(path, {"metric", "simulated", "std_error", "closed_form", "difference"});
    const double n = static_cast<double>(s.n_slots);
    for (std::size_t k = 0; k < kNumStates; ++k) {
        const double f = s.state_frequencies[k];
        const std::string name = "state_" + std::to_string(k + 1);
        w.cell(name).cell(f).cell(std::sqrt(row.p[k] * (1.0 - row.p[k]) / n)).cell(row.p[k]).cell(f - row.p[k]).end_row();
    }
    const double ec = sc.closed_form_ec();
    w.cell("ec").cell(s.empirical_ec).cell(s.std_error).cell(ec).cell(s.empirical_ec - ec).end_row();
    const double mean = ec_small_theta_limit(row, sc.alice.rate, sc.eve.rate);
    w.cell("mean_rate").cell(s.mean_service_rate).cell(s.mean_rate_std_error).cell(mean);
    w.cell(s.mean_service_rate - mean).end_row();
    w.cell("degenerate").cell(s.degenerate ? 1.0 : 0.0).cell(0.0).cell(0.0).cell(0.0).end_row();

    Files files{path};
    if (cfg.sim_dump) {
        const std::string dump = join(dir, "sim_episodes.csv");
        write_episode_csv(dump, episodes);
        files.push_back(dump);
    }
    return files;
}

Files csit_cmd(const ExperimentConfig& cfg, const std::string& dir) {
    const auto sc = cfg.scenario();
    CsitPowerProblem prob;
    if (!cfg.csit_gains.empty()) {
        prob.gains = read_number_column(cfg.csit_gains);
    } else {
        CounterRng rng(cfg.seed, 0);
        for (std::size_t i = 0; i < cfg.csit_n_random; ++i) {
            prob.gains.push_back(std::norm(sample_rice_gain(cfg.alice_path.rice_k, cfg.alice_path.path_sigma, rng)) /
                                 cfg.noise_var);
        }
    }
    prob.total_power = cfg.csit_total_power;
    prob.theta = cfg.theta;
    prob.p_accept = sc.priors.pi_alice * (1.0 - sc.pfa());
    DualConfig dc;
    dc.step = cfg.csit_step;
    dc.max_iters = cfg.csit_max_iters;
    const auto sol = solve_power_dual(prob, dc);
    if (!sol.converged) std::cerr << "csit-power: subgradient hit max_iters before meeting the budget tolerance\n";

    const std::string alloc_path = join(dir, "csit_allocation.csv");
    const std::string summary_path = join(dir, "csit_summary.csv");
    CsvWriter alloc(alloc_path, {"subcarrier", "gain", "power"});
    double used = 0.0;
    for (std::size_t i = 0; i < prob.gains.size(); ++i) {
        alloc.cell(static_cast<std::uint64_t>(i)).cell(prob.gains[i]).cell(sol.allocation[i]).end_row();
        used += sol.allocation[i];
    }
    const auto dist = sc.snr_distribution(Transmitter::Alice);
    CsvWriter summary(summary_path, {"total_power", "allocated", "residual", "kappa", "water_level", "iterations",
                                     "converged", "p_accept", "ec_known_csit", "ec_known_csit_mean_rate"});
    summary.cell(prob.total_power).cell(used).cell(prob.total_power - used).cell(sol.kappa);
    summary.cell(prob.level_constant() / sol.kappa).cell(sol.iterations).cell(sol.converged ? 1 : 0);
    summary.cell(prob.p_accept).cell(ec_known_csit(dist, sc.qos(), sc.grid.delta_f, prob.p_accept));
    summary.cell(ec_known_csit_mean_rate(dist, sc.grid.delta_f, prob.p_accept)).end_row();
    return {alloc_path, summary_path};
}

using Runner = Files (*)(const ExperimentConfig&, const std::string&);

struct Entry {
    SubcommandInfo info;
    Runner run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r{
        {{"auth-stats", "threshold, error probabilities and KLD per false-alarm target"}, auth_stats_cmd},
        {{"ec-sweep", "EC versus rate and versus the (P_fa, pi(E)) grid"}, ec_sweep_cmd},
        {{"rate-opt", "gradient-descent rate with its trace and the grid oracle"}, rate_opt_cmd},
        {{"gen-dataset", "optimal-rate labels for the surrogate"}, gen_dataset_cmd},
        {{"train-surrogate", "train the 4-4-1 rate surrogate"}, train_cmd},
        {{"predict", "surrogate predictions next to gradient-descent labels"}, predict_cmd},
        {{"simulate", "Monte Carlo slot simulation against the closed form"}, simulate_cmd},
        {{"csit-power", "known-CSIT power allocation by dual subgradient"}, csit_cmd},
    };
    return r;
}

}  // namespace

const std::vector<SubcommandInfo>& subcommands() {
    static const std::vector<SubcommandInfo> names = [] {
        std::vector<SubcommandInfo> v;
        for (const auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return names;
}

std::vector<std::string> run_subcommand(const std::string& name, ExperimentConfig cfg, const std::string& out_dir) {
    const Entry* entry = nullptr;
    for (const auto& e : registry())
        if (e.info.name == name) entry = &e;
    if (!entry) throw ConfigError("unknown subcommand '" + name + "'");
    if (!cfg.command.empty() && cfg.command != name) {
        throw ConfigError("manifest was written by '" + cfg.command + "', not '" + name + "'");
    }
    cfg.command = name;
    cfg.version = AUTHEC_VERSION;
    cfg.validate();

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + out_dir + ": " + ec.message());

    auto files = entry->run(cfg, out_dir);
    const std::string manifest = join(out_dir, name + ".manifest");
    std::ofstream m(manifest);
    if (!m) throw ConfigError("cannot write manifest " + manifest);
    m << "# authec run manifest; rerun with: authec " << name << " --config <this file>\n";
    m << serialize_config(cfg);
    files.push_back(manifest);
    return files;
}

}  // namespace authec
