// SPDX-License-Identifier: Apache-2.0
#include "authec/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "authec/csv.hpp"
#include "authec/errors.hpp"
#include "authec/reference.hpp"

namespace authec {

void SimConfig::validate() const {
    if (n_episodes < 1) throw DomainError("simulation: n_episodes must be >= 1");
    if (slots_per_episode < 1) throw DomainError("simulation: slots_per_episode must be >= 1");
    scenario.validate();
}

SlotSimulator::SlotSimulator(const Scenario& scenario)
    : scenario_(scenario),
      epsilon_(scenario.epsilon()),
      snr_alice_(scenario.snr_distribution(Transmitter::Alice)),
      snr_eve_(scenario.snr_distribution(Transmitter::Eve)),
      power_alice_(scenario.alice.per_subcarrier_power(scenario.grid.n_subcarriers)),
      power_eve_(scenario.eve.per_subcarrier_power(scenario.grid.n_subcarriers)),
      threshold_alice_(std::expm1(scenario.alice.rate / scenario.grid.delta_f * std::numbers::ln2)),
      threshold_eve_(std::expm1(scenario.eve.rate / scenario.grid.delta_f * std::numbers::ln2)) {}

SlotOutcome SlotSimulator::operator()(CounterRng& rng) const {
    const Scenario& sc = scenario_;
    const bool alice = rng.uniform() < sc.priors.pi_alice;
    const double noise = sc.auth.sigma * rng.normal();

    double offset = 0.0;  // true distance minus d_alice
    if (!alice) {
        const double d = (sc.eve_mode == EveDistanceMode::Redraw) ? rng.uniform(sc.auth.de_min, sc.auth.de_max)
                                                                  : sc.d_eve;
        offset = d - sc.auth.d_alice;
    }
    const double stat = offset + noise;
    const bool accepted = (sc.auth_formula == AuthFormula::Signed) ? stat < epsilon_ : std::fabs(stat) < epsilon_;

    const auto& path = alice ? sc.alice_path : sc.eve_path;
    double gamma = 0.0;
    switch (sc.fading) {
        case FadingModel::Rice: {
            const auto h = sample_rice_gain(path.rice_k, path.path_sigma, rng);
            gamma = (alice ? power_alice_ : power_eve_) * std::norm(h) / sc.noise_var;
            break;
        }
        case FadingModel::Multipath: {
            const auto h = sample_cfr(path, sc.grid, sc.subcarrier, rng);
            gamma = (alice ? power_alice_ : power_eve_) * std::norm(h) / sc.noise_var;
            break;
        }
        case FadingModel::Snr:
            gamma = sample_snr(alice ? snr_alice_ : snr_eve_, rng);
            break;
    }
    const bool on = gamma > (alice ? threshold_alice_ : threshold_eve_);

    const double ts = sc.grid.ts();
    if (alice) {
        if (accepted) return on ? SlotOutcome{1, sc.alice.rate * ts} : SlotOutcome{2, 0.0};
        return {on ? 5 : 6, 0.0};
    }
    if (accepted) return on ? SlotOutcome{7, sc.eve.rate * ts} : SlotOutcome{8, 0.0};
    return {on ? 3 : 4, 0.0};
}

SlotOutcome simulate_slot(const Scenario& scenario, CounterRng& rng) { return SlotSimulator(scenario)(rng); }

namespace {

EpisodeRecord run_episode(const SlotSimulator& sim, const SimConfig& cfg, std::size_t episode) {
    CounterRng rng(cfg.seed, episode);
    EpisodeRecord rec;
    for (std::size_t t = 0; t < cfg.slots_per_episode; ++t) {
        const auto out = sim(rng);
        rec.service_bits += out.bits;
        ++rec.state_counts[static_cast<std::size_t>(out.state - 1)];
    }
    return rec;
}

}  // namespace

SimSummary summarize(const SimConfig& cfg, const std::vector<double>& service_bits,
                     const std::array<std::uint64_t, kNumStates>& state_counts) {
    const auto& sc = cfg.scenario;
    const double theta = sc.theta;
    const double ts = sc.grid.ts();
    const double m = static_cast<double>(service_bits.size());
    const double horizon = static_cast<double>(cfg.slots_per_episode) * ts;

    SimSummary s;
    s.state_counts = state_counts;
    s.n_slots = 0;
    for (auto c : state_counts) s.n_slots += c;
    for (std::size_t k = 0; k < kNumStates; ++k) {
        s.state_frequencies[k] = static_cast<double>(state_counts[k]) / static_cast<double>(s.n_slots);
    }
    if (state_counts[0] > 0) s.per_state_bits[0] = sc.alice.rate * ts;
    if (state_counts[6] > 0) s.per_state_bits[6] = sc.eve.rate * ts;

    // log-mean-exp of -theta S_m, shifted by the largest exponent.
    double x_max = -INFINITY;
    for (double b : service_bits) x_max = std::max(x_max, -theta * b);
    double w_sum = 0.0;
    double w_sq = 0.0;
    double s_sum = 0.0;
    double s_sq = 0.0;
    for (double b : service_bits) {
        const double w = std::exp(-theta * b - x_max);
        w_sum += w;
        w_sq += w * w;
        s_sum += b;
        s_sq += b * b;
    }
    const double w_mean = w_sum / m;
    const double log_mgf = x_max + std::log(w_mean);
    s.empirical_ec = -log_mgf / (theta * horizon);

    const double s_mean = s_sum / m;
    s.mean_service_rate = s_mean / horizon;
    s.degenerate = std::all_of(service_bits.begin(), service_bits.end(),
                               [&](double b) { return b == service_bits.front(); });
    if (m > 1.0 && !s.degenerate) {
        const double w_var = std::max(0.0, (w_sq - m * w_mean * w_mean) / (m - 1.0));
        s.std_error = std::sqrt(w_var / m) / w_mean / (theta * horizon);
        const double s_var = std::max(0.0, (s_sq - m * s_mean * s_mean) / (m - 1.0));
        s.mean_rate_std_error = std::sqrt(s_var / m) / horizon;
    }
    return s;
}

SimSummary empirical_ec(const SimConfig& cfg, std::vector<EpisodeRecord>* episodes) {
    cfg.validate();
    const SlotSimulator sim(cfg.scenario);
    const long m = static_cast<long>(cfg.n_episodes);
    std::vector<double> service(cfg.n_episodes);
    if (episodes) episodes->assign(cfg.n_episodes, EpisodeRecord{});
    std::array<std::uint64_t, kNumStates> counts{};

#pragma omp parallel
    {
        std::array<std::uint64_t, kNumStates> local{};
#pragma omp for schedule(static)
        for (long e = 0; e < m; ++e) {
            const auto idx = static_cast<std::size_t>(e);
            const auto rec = run_episode(sim, cfg, idx);
            service[idx] = rec.service_bits;
            for (std::size_t k = 0; k < kNumStates; ++k) local[k] += rec.state_counts[k];
            if (episodes) (*episodes)[idx] = rec;
        }
        // Integer sums: exact in any order.
#pragma omp critical
        for (std::size_t k = 0; k < kNumStates; ++k) counts[k] += local[k];
    }
    return summarize(cfg, service, counts);
}

void write_episode_csv(const std::string& path, const std::vector<EpisodeRecord>& episodes) {
    CsvWriter w(path, {"episode", "S_t_bits", "state_count_1", "state_count_2", "state_count_3", "state_count_4",
                       "state_count_5", "state_count_6", "state_count_7", "state_count_8"});
    for (std::size_t e = 0; e < episodes.size(); ++e) {
        w.cell(static_cast<std::uint64_t>(e)).cell(episodes[e].service_bits);
        for (auto c : episodes[e].state_counts) w.cell(c);
        w.end_row();
    }
}

namespace reference {

SimSummary empirical_ec(const SimConfig& cfg) {
    cfg.validate();
    std::vector<double> service;
    service.reserve(cfg.n_episodes);
    std::array<std::uint64_t, kNumStates> counts{};
    const SlotSimulator sim(cfg.scenario);
    for (std::size_t e = 0; e < cfg.n_episodes; ++e) {
        CounterRng rng(cfg.seed, e);
        double bits = 0.0;
        for (std::size_t t = 0; t < cfg.slots_per_episode; ++t) {
            const auto out = sim(rng);
            bits += out.bits;
            ++counts[static_cast<std::size_t>(out.state - 1)];
        }
        service.push_back(bits);
    }
    return summarize(cfg, service, counts);
}

}  // namespace reference

}  // namespace authec
