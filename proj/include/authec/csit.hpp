// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "authec/channel.hpp"
#include "authec/markov_ec.hpp"
#include "authec/specialfn.hpp"

namespace authec {

/// Known-CSIT extension: Alice adapts the rate to the instantaneous capacity,
/// so an accepted slot serves T_s delta_f log2(1 + gamma) bits.
///
/// Which moment-generating function enters the EC.
///   Standard:         E[(1+gamma)^{-theta T_s delta_f / ln 2}], the service
///                     MGF at -theta, consistent with the fixed-rate EC.
///   PositiveExponent: E[(1+gamma)^{+theta / ln 2}]; reports only, it yields
///                     a negative EC.
enum class CsitMgfForm { Standard, PositiveExponent };

/// Per-slot service MGF of the accepted-and-ON state.
double csit_service_mgf(const SnrDistribution& dist, const QosParams& qos, double delta_f,
                        CsitMgfForm form = CsitMgfForm::Standard, const Tolerance& tol = {1e-13, 1e-11, 4000000});

/// EC with capacity-adapted rate, bits/s:
/// -(1/(theta T_s)) ln(p_accept MGF + 1 - p_accept). The non-serving mass
/// 1 - p_accept collects the false-alarm and Eve outcomes. A zero scale means
/// gamma is identically 0 and returns 0.
double ec_known_csit(const SnrDistribution& dist, const QosParams& qos, double delta_f, double p_accept,
                     CsitMgfForm form = CsitMgfForm::Standard);

/// theta -> 0 limit: p_accept delta_f E[log2(1 + gamma)].
double ec_known_csit_mean_rate(const SnrDistribution& dist, double delta_f, double p_accept);

struct CsitPowerProblem {
    std::vector<double> gains;  // |H_i|^2 (noise-normalised), > 0
    double total_power = 1.0;   // P_T
    double theta = 0.01;
    double p_accept = 0.45;     // pi(A)(1 - P_fa)

    void validate() const;
    /// Numerator of the water level: theta / ln 2 + 1, over p_accept.
    double level_constant() const;
};

/// P_i = (c / kappa - 1/g_i)^+ with c = level_constant().
std::vector<double> optimal_power(const CsitPowerProblem& problem, double kappa);

struct DualIterate {
    double kappa;
    double residual;  // P_T - sum P_i
};

struct PowerSolution {
    std::vector<double> allocation;
    double kappa = 0.0;
    std::vector<DualIterate> trace;
    bool converged = false;
    long iterations = 0;
};

struct DualConfig {
    std::optional<double> step;  // subgradient step; default kappa0^2 / (N c)
    long max_iters = 200000;
    double residual_tol = 1e-9;  // relative to P_T
};

/// Projected subgradient on the dual variable:
/// kappa <- max(kappa_floor, kappa - step (P_T - sum P_i(kappa))).
/// The start kappa0 puts the water level where every subcarrier is active.
/// kappa_floor is a tiny positive fraction of kappa0 so the allocation stays
/// finite.
PowerSolution solve_power_dual(const CsitPowerProblem& problem, const DualConfig& cfg = {});

}  // namespace authec
