// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "authec/auth.hpp"
#include "authec/channel.hpp"
#include "authec/markov_ec.hpp"
#include "authec/rate_opt.hpp"

namespace authec {

/// How the simulator draws the per-subcarrier channel.
///   Rice:      |H| ~ Rice(K) per transmitter, sigma = path_sigma.
///   Multipath: H ~ CN(sum c_l E{h_l}, sum |c_l|^2 sigma^2).
///   Snr:       gamma drawn directly from the closed-form SnrDistribution.
enum class FadingModel { Rice, Multipath, Snr };

/// Fixed: Eve sits at d_eve for the whole run (chain uses P_md(d_eve)).
/// Redraw: Eve's distance is drawn from U(de_min, de_max) every Eve slot
/// (chain uses the averaged P_md).
enum class EveDistanceMode { Fixed, Redraw };

/// Everything one subcarrier of the system depends on.
struct Scenario {
    AuthModel auth;
    AuthFormula auth_formula = AuthFormula::Signed;
    EveDistanceMode eve_mode = EveDistanceMode::Fixed;
    double d_eve = 105.0;

    Priors priors;
    OfdmGrid grid;
    MultipathProfile alice_path;
    MultipathProfile eve_path;
    TransmitterProfile alice{256.0, 35.0, Transmitter::Alice};
    TransmitterProfile eve{256.0, 30.0, Transmitter::Eve};
    double noise_var = 1.0;
    double theta = 0.01;

    FadingModel fading = FadingModel::Rice;
    SnrConvention convention = SnrConvention::Nominal;
    std::size_t subcarrier = 0;

    void validate() const;

    QosParams qos() const { return {theta, grid.ts()}; }
    double epsilon() const;
    double pfa() const;
    /// P_md the chain uses under the configured Eve distance mode.
    double pmd() const;

    /// Closed-form SNR law of the given transmitter on subcarrier i. The Rice
    /// sampler always has an exact closed form; the multipath sampler matches
    /// it under SnrConvention::Exact.
    SnrDistribution snr_distribution(Transmitter who, std::size_t i) const;
    SnrDistribution snr_distribution(Transmitter who) const { return snr_distribution(who, subcarrier); }

    MarkovRow row() const;
    double closed_form_ec() const;
    EcContext ec_context() const;
};

}  // namespace authec
