// SPDX-License-Identifier: Apache-2.0
#include "authec/scenario.hpp"

#include "authec/errors.hpp"

namespace authec {

void Scenario::validate() const {
    auth.validate();
    priors.validate();
    grid.validate();
    alice_path.validate();
    eve_path.validate();
    alice.validate();
    eve.validate();
    qos().validate();
    if (!(noise_var > 0.0)) throw DomainError("scenario: noise_var must be > 0");
    if (subcarrier >= grid.n_subcarriers) throw DomainError("scenario: subcarrier index out of range");
    if (eve_mode == EveDistanceMode::Fixed && !(d_eve > 0.0)) throw DomainError("scenario: d_eve must be > 0");
}

double Scenario::epsilon() const { return threshold_for_pfa(auth, auth_formula); }

double Scenario::pfa() const { return false_alarm_prob(epsilon(), auth.sigma, auth_formula); }

double Scenario::pmd() const {
    const double eps = epsilon();
    if (eve_mode == EveDistanceMode::Redraw) return expected_missed_detection(auth, eps, auth_formula);
    return missed_detection_prob(eps, auth.sigma, d_eve, auth.d_alice, auth_formula);
}

SnrDistribution Scenario::snr_distribution(Transmitter who, std::size_t i) const {
    const auto& path = (who == Transmitter::Alice) ? alice_path : eve_path;
    const auto& tx = (who == Transmitter::Alice) ? alice : eve;
    const double power = tx.per_subcarrier_power(grid.n_subcarriers);
    if (fading == FadingModel::Rice) return rice_snr_distribution(path.rice_k, path.path_sigma, power, noise_var);
    return noncentrality(path, power, noise_var, subcarrier_frequency(grid, i), convention);
}

MarkovRow Scenario::row() const {
    const double q_alice = link_on_prob(snr_distribution(Transmitter::Alice), alice.rate, grid.delta_f);
    const double q_eve = link_on_prob(snr_distribution(Transmitter::Eve), eve.rate, grid.delta_f);
    return transition_row(priors, pfa(), pmd(), q_alice, q_eve);
}

double Scenario::closed_form_ec() const { return ec_subcarrier(row(), qos(), alice.rate, eve.rate); }

EcContext Scenario::ec_context() const {
    EcContext ctx;
    ctx.priors = priors;
    ctx.pfa = pfa();
    ctx.pmd = pmd();
    ctx.alice = snr_distribution(Transmitter::Alice);
    ctx.eve = snr_distribution(Transmitter::Eve);
    ctx.delta_f = grid.delta_f;
    ctx.qos = qos();
    ctx.r_eve = eve.rate;
    return ctx;
}

}  // namespace authec
