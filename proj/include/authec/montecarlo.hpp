// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "authec/markov_ec.hpp"
#include "authec/rng.hpp"
#include "authec/scenario.hpp"

namespace authec {

struct SimConfig {
    std::size_t n_episodes = 100000;
    std::size_t slots_per_episode = 1;
    std::uint64_t seed = 1;
    Scenario scenario;

    void validate() const;
};

struct SlotOutcome {
    int state;    // 1..8
    double bits;  // service delivered in the slot
};

struct EpisodeRecord {
    double service_bits = 0.0;
    std::array<std::uint64_t, kNumStates> state_counts{};
};

struct SimSummary {
    std::array<double, kNumStates> state_frequencies{};
    std::array<std::uint64_t, kNumStates> state_counts{};
    std::array<double, kNumStates> per_state_bits{};  // mean bits per slot spent in the state
    double empirical_ec = 0.0;                        // bits/s
    double std_error = 0.0;                           // bits/s, delta method
    double mean_service_rate = 0.0;                   // bits/s
    double mean_rate_std_error = 0.0;                 // bits/s
    std::uint64_t n_slots = 0;
    bool degenerate = false;  // every episode delivered the same service
};

/// One slot: occupant, authentication, fading, ON/OFF. Draw order is fixed:
/// occupant uniform, distance-noise normal, Eve distance uniform (Redraw mode,
/// Eve slots only), then the channel draws.
SlotOutcome simulate_slot(const Scenario& scenario, CounterRng& rng);

/// Slot simulation with precomputed per-run constants; same stream usage as
/// simulate_slot.
class SlotSimulator {
public:
    explicit SlotSimulator(const Scenario& scenario);
    SlotOutcome operator()(CounterRng& rng) const;

private:
    const Scenario& scenario_;
    double epsilon_;
    SnrDistribution snr_alice_;
    SnrDistribution snr_eve_;
    double power_alice_;
    double power_eve_;
    double threshold_alice_;  // SNR the link needs to carry the rate
    double threshold_eve_;
};

/// Empirical EC over independent episodes, one RNG substream per episode.
/// Episodes run in parallel; the reduction runs in episode order so the
/// summary does not depend on the thread count. When `episodes` is non-null
/// it receives one record per episode.
SimSummary empirical_ec(const SimConfig& cfg, std::vector<EpisodeRecord>* episodes = nullptr);

/// Estimator shared by the parallel and serial paths.
SimSummary summarize(const SimConfig& cfg, const std::vector<double>& service_bits,
                     const std::array<std::uint64_t, kNumStates>& state_counts);

void write_episode_csv(const std::string& path, const std::vector<EpisodeRecord>& episodes);

}  // namespace authec
