// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "authec/auth.hpp"
#include "authec/errors.hpp"

using namespace authec;

namespace {
bool close_rel(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::fabs(b); }
}  // namespace

TEST_CASE("threshold meets the false-alarm target") {
    AuthModel m;
    CHECK(close_rel(threshold_for_pfa(m), 1.2815515655446004, 1e-13));
    CHECK(close_rel(threshold_for_pfa(m, AuthFormula::Folded), 1.6448536269514729, 1e-13));
    for (double p : {0.01, 0.1, 0.3, 0.5}) {
        m.pfa_target = p;
        m.sigma = 2.5;
        for (auto f : {AuthFormula::Signed, AuthFormula::Folded}) {
            CHECK(close_rel(false_alarm_prob(threshold_for_pfa(m, f), m.sigma, f), p, 1e-12));
        }
    }
}

TEST_CASE("missed detection at a point") {
    const double eps = 1.2815515655446004;
    CHECK(close_rel(missed_detection_prob(eps, 1.0, 105.0, 100.0), 0.00010022509950924352, 1e-9));
    CHECK(close_rel(missed_detection_prob(1.6448536269514729, 1.0, 105.0, 100.0, AuthFormula::Folded),
                    0.0003966149893502857, 1e-9));
    // Eve at Alice's distance is indistinguishable: P_md = 1 - P_fa.
    CHECK(close_rel(missed_detection_prob(eps, 1.0, 100.0, 100.0), 0.9, 1e-13));
}

TEST_CASE("missed detection falls as Eve moves away") {
    double prev = 1.0;
    for (double d = 100.0; d <= 110.0; d += 0.5) {
        const double p = missed_detection_prob(1.28, 1.0, d, 100.0);
        CHECK(p <= prev);
        prev = p;
    }
}

TEST_CASE("expected missed detection over the Eve prior") {
    AuthModel m;
    CHECK(close_rel(expected_missed_detection(m, threshold_for_pfa(m)), 0.13288947409226276, 1e-10));
    CHECK(close_rel(expected_missed_detection(m, threshold_for_pfa(m, AuthFormula::Folded), AuthFormula::Folded),
                    0.16448536269514724, 1e-10));
    m.de_min = m.de_max = 103.0;
    CHECK(expected_missed_detection(m, 1.0) == missed_detection_prob(1.0, 1.0, 103.0, 100.0));
}

TEST_CASE("KLD diagnostic") {
    AuthModel m;
    const auto k2 = kld_diagnostic(m, 102.0);
    CHECK(k2.kld_signed == -2.0);
    CHECK(close_rel(k2.kld_numeric, 1.3672798062631330, 1e-9));
    const auto k5 = kld_diagnostic(m, 105.0);
    CHECK(close_rel(k5.kld_numeric, 11.806853682606016, 1e-9));
    CHECK(kld_diagnostic(m, 100.0).kld_numeric == 0.0);
}

TEST_CASE("auth_stats bundles the pieces") {
    AuthModel m;
    const auto s = auth_stats(m, 105.0);
    CHECK(s.epsilon == threshold_for_pfa(m));
    CHECK(close_rel(s.pfa, 0.1, 1e-12));
    CHECK(s.pmd_at_d_eve == missed_detection_prob(s.epsilon, 1.0, 105.0, 100.0));
    CHECK(s.expected_pmd == expected_missed_detection(m, s.epsilon));
}

TEST_CASE("invalid models are rejected") {
    AuthModel m;
    m.sigma = 0.0;
    CHECK_THROWS_AS(m.validate(), DomainError);
    m = AuthModel{};
    m.de_min = 120.0;
    CHECK_THROWS_AS(m.validate(), DomainError);
    m = AuthModel{};
    m.pfa_target = 1.0;
    CHECK_THROWS_AS(m.validate(), DomainError);
}
