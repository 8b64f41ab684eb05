// SPDX-License-Identifier: Apache-2.0
#include "authec/markov_ec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "authec/errors.hpp"
#include "authec/reference.hpp"

namespace authec {

namespace {

void require_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(std::string("transition_row: ") + name + " must lie in [0,1]");
    }
}

}  // namespace

void Priors::validate() const { require_probability(pi_alice, "pi_alice"); }

double MarkovRow::sum() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

void MarkovRow::validate() const {
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError("markov row: entries must lie in [0,1]");
    }
    if (std::fabs(sum() - 1.0) > 1e-12) throw DomainError("markov row: entries must sum to 1");
}

void QosParams::validate() const {
    if (!(theta > 0.0)) throw DomainError("qos: theta must be > 0");
    if (!(ts > 0.0)) throw DomainError("qos: ts must be > 0");
}

MarkovRow transition_row(const Priors& priors, double pfa, double pmd, double q_alice, double q_eve) {
    require_probability(priors.pi_alice, "pi_alice");
    require_probability(pfa, "pfa");
    require_probability(pmd, "pmd");
    require_probability(q_alice, "q_alice");
    require_probability(q_eve, "q_eve");
    const double pa = priors.pi_alice;
    const double pe = priors.pi_eve();
    MarkovRow row;
    row.p = {pa * (1.0 - pfa) * q_alice, pa * (1.0 - pfa) * (1.0 - q_alice),
             pe * (1.0 - pmd) * q_eve,   pe * (1.0 - pmd) * (1.0 - q_eve),
             pa * pfa * q_alice,         pa * pfa * (1.0 - q_alice),
             pe * pmd * q_eve,           pe * pmd * (1.0 - q_eve)};
    return row;
}

double ec_subcarrier(const MarkovRow& row, const QosParams& qos, double r_alice, double r_eve, EcSign sign) {
    qos.validate();
    if (!(r_alice >= 0.0) || !(r_eve >= 0.0)) throw DomainError("ec_subcarrier: rates must be >= 0");
    const double s = (sign == EcSign::Standard) ? -1.0 : 1.0;
    const double x_alice = s * qos.theta * r_alice * qos.ts;
    const double x_eve = s * qos.theta * r_eve * qos.ts;
    const auto& p = row.p;
    // With sum(p) = 1 the MGF trace is 1 + p1 (e^{x_A} - 1) + p7 (e^{x_E} - 1);
    // log1p/expm1 keep precision when theta is tiny.
    const double excess = p[0] * std::expm1(x_alice) + p[6] * std::expm1(x_eve);
    const double log_mgf = std::log1p(excess);
    const double ec = -log_mgf / (qos.theta * qos.ts);
    return (sign == EcSign::Standard) ? std::max(ec, 0.0) : ec;
}

EcResult ec_total(std::span<const SubcarrierInputs> inputs, const QosParams& qos) {
    qos.validate();
    EcResult out;
    out.per_subcarrier.assign(inputs.size(), 0.0);
    for (const auto& in : inputs) {
        if (!(in.r_alice >= 0.0) || !(in.r_eve >= 0.0)) throw DomainError("ec_total: rates must be >= 0");
    }
    const long n = static_cast<long>(inputs.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        const auto& in = inputs[static_cast<std::size_t>(i)];
        out.per_subcarrier[static_cast<std::size_t>(i)] = ec_subcarrier(in.row, qos, in.r_alice, in.r_eve);
    }
    for (double v : out.per_subcarrier) out.total += v;
    return out;
}

double ec_small_theta_limit(const MarkovRow& row, double r_alice, double r_eve) {
    return row.p[0] * r_alice + row.p[6] * r_eve;
}

namespace reference {

EcResult ec_total(std::span<const SubcarrierInputs> inputs, const QosParams& qos) {
    EcResult out;
    out.per_subcarrier.reserve(inputs.size());
    for (const auto& in : inputs) {
        out.per_subcarrier.push_back(ec_subcarrier(in.row, qos, in.r_alice, in.r_eve));
        out.total += out.per_subcarrier.back();
    }
    return out;
}

}  // namespace reference

}  // namespace authec
