// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "authec/specialfn.hpp"

namespace authec {

/// Geometry and noise of the distance-threshold authentication test at the
/// receiver. Eve's distance prior is Uniform(de_min, de_max).
struct AuthModel {
    double d_alice = 100.0;   // m
    double sigma = 1.0;       // std. dev. of the distance estimation error, m
    double de_min = 100.0;    // m
    double de_max = 110.0;    // m
    double pfa_target = 0.1;

    void validate() const;
};

/// Which test statistic the error probabilities refer to.
///   Signed:  signed offset T = d_n - d_alice, accept when T < epsilon.
///            P_fa = Q(eps/sigma), P_md = 1 - Q((eps - m)/sigma).
///   Folded:  tau = |T|, accept when tau < epsilon (exact two-sided test).
enum class AuthFormula { Signed, Folded };

struct AuthStats {
    double epsilon = 0.0;
    double pfa = 0.0;
    double d_eve = 0.0;
    double pmd_at_d_eve = 0.0;
    double expected_pmd = 0.0;
    double kld_signed = 0.0;
    double kld_numeric = 0.0;
};

/// Neyman-Pearson threshold meeting pfa_target: sigma * Q^{-1}(pfa_target) for
/// the signed statistic, sigma * Q^{-1}(pfa_target / 2) for the folded one.
double threshold_for_pfa(const AuthModel& model, AuthFormula formula = AuthFormula::Signed);

double false_alarm_prob(double epsilon, double sigma, AuthFormula formula = AuthFormula::Signed);

/// Probability that Eve at d_eve passes the test (m = d_eve - d_alice).
double missed_detection_prob(double epsilon, double sigma, double d_eve, double d_alice,
                             AuthFormula formula = AuthFormula::Signed);

/// Mean of missed_detection_prob over d_eve ~ Uniform(de_min, de_max).
double expected_missed_detection(const AuthModel& model, double epsilon,
                                 AuthFormula formula = AuthFormula::Signed);

struct KldDiagnostic {
    double kld_signed;   // -m / sigma^2 from the signed statistic
    double kld_numeric;  // D(p(tau|H1) || p(tau|H0)) for folded normals, nats
};

KldDiagnostic kld_diagnostic(const AuthModel& model, double d_eve);

/// All of the above for one model; d_eve is the point used for P_md and KLD.
AuthStats auth_stats(const AuthModel& model, double d_eve, AuthFormula formula = AuthFormula::Signed);

}  // namespace authec
