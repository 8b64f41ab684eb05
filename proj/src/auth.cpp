// SPDX-License-Identifier: Apache-2.0
#include "authec/auth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "authec/errors.hpp"

namespace authec {

namespace {

// log(cosh(z)) without overflow.
double log_cosh(double z) {
    const double a = std::fabs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

void require_sigma(double sigma) {
    if (!(sigma > 0.0)) throw DomainError("auth: sigma must be > 0");
}

}  // namespace

void AuthModel::validate() const {
    if (!(d_alice > 0.0)) throw DomainError("auth: d_alice must be > 0");
    require_sigma(sigma);
    if (!(de_min <= de_max)) throw DomainError("auth: de_min must not exceed de_max");
    if (!(pfa_target > 0.0 && pfa_target < 1.0)) throw DomainError("auth: pfa_target must lie in (0,1)");
}

double threshold_for_pfa(const AuthModel& model, AuthFormula formula) {
    require_sigma(model.sigma);
    if (formula == AuthFormula::Folded) return model.sigma * gaussian_q_inv(0.5 * model.pfa_target);
    return model.sigma * gaussian_q_inv(model.pfa_target);
}

double false_alarm_prob(double epsilon, double sigma, AuthFormula formula) {
    require_sigma(sigma);
    if (formula == AuthFormula::Signed) return gaussian_q(epsilon / sigma);
    if (epsilon <= 0.0) return 1.0;
    return 2.0 * gaussian_q(epsilon / sigma);
}

double missed_detection_prob(double epsilon, double sigma, double d_eve, double d_alice,
                             AuthFormula formula) {
    require_sigma(sigma);
    const double m = d_eve - d_alice;
    if (formula == AuthFormula::Signed) return 1.0 - gaussian_q((epsilon - m) / sigma);
    if (epsilon <= 0.0) return 0.0;
    // P(-eps < T < eps) with T ~ N(m, sigma^2).
    return gaussian_q((-epsilon - m) / sigma) - gaussian_q((epsilon - m) / sigma);
}

double expected_missed_detection(const AuthModel& model, double epsilon, AuthFormula formula) {
    model.validate();
    auto pmd = [&](double d) {
        return missed_detection_prob(epsilon, model.sigma, d, model.d_alice, formula);
    };
    const double span = model.de_max - model.de_min;
    if (span == 0.0) return pmd(model.de_min);
    return integrate(pmd, model.de_min, model.de_max, {1e-13, 1e-12, 2000000}) / span;
}

KldDiagnostic kld_diagnostic(const AuthModel& model, double d_eve) {
    require_sigma(model.sigma);
    const double sigma = model.sigma;
    const double m = d_eve - model.d_alice;
    KldDiagnostic out{-m / (sigma * sigma), 0.0};
    if (m == 0.0) return out;

    // p1/p0 = exp(-m^2 / 2 sigma^2) cosh(tau m / sigma^2) for folded normals.
    const double s2 = sigma * sigma;
    auto integrand = [&](double tau) {
        const double p1 = (normal_pdf((tau - m) / sigma) + normal_pdf((tau + m) / sigma)) / sigma;
        return p1 * (-0.5 * m * m / s2 + log_cosh(tau * m / s2));
    };
    const double upper = std::fabs(m) + 40.0 * sigma;
    out.kld_numeric = std::max(0.0, integrate(integrand, 0.0, upper, {1e-13, 1e-11, 4000000}));
    return out;
}

AuthStats auth_stats(const AuthModel& model, double d_eve, AuthFormula formula) {
    model.validate();
    AuthStats s;
    s.epsilon = threshold_for_pfa(model, formula);
    s.pfa = false_alarm_prob(s.epsilon, model.sigma, formula);
    s.d_eve = d_eve;
    s.pmd_at_d_eve = missed_detection_prob(s.epsilon, model.sigma, d_eve, model.d_alice, formula);
    s.expected_pmd = expected_missed_detection(model, s.epsilon, formula);
    const auto kld = kld_diagnostic(model, d_eve);
    s.kld_signed = kld.kld_signed;
    s.kld_numeric = kld.kld_numeric;
    return s;
}

}  // namespace authec
