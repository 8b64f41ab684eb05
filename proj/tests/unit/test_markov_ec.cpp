// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "authec/errors.hpp"
#include "authec/markov_ec.hpp"
#include "authec/reference.hpp"
#include "authec/rng.hpp"

using namespace authec;

namespace {

MarkovRow derived_row() { return transition_row({0.5}, 0.1, 0.2, 0.8, 0.6); }

// Spectral radius of diag(mgf) * P for the rank-1 P with every row equal to p.
double spectral_radius(const MarkovRow& row, const std::array<double, kNumStates>& mgf) {
    std::array<double, kNumStates> v{};
    v.fill(1.0);
    double rho = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::array<double, kNumStates> w{};
        for (std::size_t i = 0; i < kNumStates; ++i) {
            for (std::size_t j = 0; j < kNumStates; ++j) w[i] += mgf[i] * row.p[j] * v[j];
        }
        double norm = 0.0;
        for (double x : w) norm = std::max(norm, std::fabs(x));
        for (std::size_t i = 0; i < kNumStates; ++i) v[i] = w[i] / norm;
        rho = norm;
    }
    return rho;
}

}  // namespace

TEST_CASE("transition row: hand-multiplied example") {
    const auto r = derived_row();
    const double expected[] = {0.36, 0.09, 0.24, 0.16, 0.04, 0.01, 0.06, 0.04};
    for (std::size_t k = 0; k < kNumStates; ++k) CHECK(r.p[k] == doctest::Approx(expected[k]).epsilon(1e-15));
    CHECK(std::fabs(r.sum() - 1.0) <= 1e-15);
}

TEST_CASE("transition row: no Eve, no false alarms") {
    const auto r = transition_row({1.0}, 0.0, 0.3, 0.7, 0.2);
    CHECK(r.p[0] == doctest::Approx(0.7));
    CHECK(r.p[1] == doctest::Approx(0.3));
    for (std::size_t k = 2; k < kNumStates; ++k) CHECK(r.p[k] == 0.0);
}

TEST_CASE("transition row: partition of unity and marginals") {
    CounterRng rng(4, 0);
    for (int i = 0; i < 200; ++i) {
        const double pa = rng.uniform(), pfa = rng.uniform(), pmd = rng.uniform(), qa = rng.uniform(),
                     qe = rng.uniform();
        const auto r = transition_row({pa}, pfa, pmd, qa, qe);
        CHECK_NOTHROW(r.validate());
        CHECK(r.p[0] + r.p[1] == doctest::Approx(pa * (1 - pfa)));
        CHECK(r.p[2] + r.p[3] == doctest::Approx((1 - pa) * (1 - pmd)));
        CHECK(r.p[4] + r.p[5] == doctest::Approx(pa * pfa));
        CHECK(r.p[6] + r.p[7] == doctest::Approx((1 - pa) * pmd));
    }
    CHECK_THROWS_AS(transition_row({0.5}, 1.2, 0.1, 0.1, 0.1), DomainError);
    CHECK_THROWS_AS(transition_row({-0.1}, 0.1, 0.1, 0.1, 0.1), DomainError);
}

TEST_CASE("EC of trivial chains") {
    const QosParams q;
    CHECK(ec_subcarrier(derived_row(), q, 0.0, 0.0) == 0.0);
    MarkovRow on;
    on.p[0] = 1.0;
    CHECK(ec_subcarrier(on, q, 42.0, 7.0) == doctest::Approx(42.0).epsilon(1e-13));
}

TEST_CASE("EC of the derived example") {
    CHECK(ec_subcarrier(derived_row(), {0.01, 0.066}, 2000.0, 1500.0) ==
          doctest::Approx(543.7464064635424).epsilon(1e-13));
}

TEST_CASE("small-theta limit") {
    const auto r = derived_row();
    CHECK(ec_small_theta_limit(r, 2000.0, 1500.0) == doctest::Approx(810.0).epsilon(1e-15));
    CHECK(ec_subcarrier(r, {1e-8, 0.066}, 2000.0, 1500.0) == doctest::Approx(810.0).epsilon(1e-5));
    MarkovRow none;
    none.p[1] = 1.0;
    CHECK(ec_small_theta_limit(none, 5.0, 5.0) == 0.0);
}

TEST_CASE("EC lies below the mean rate and falls with theta") {
    const auto r = derived_row();
    double prev = ec_small_theta_limit(r, 40.0, 30.0);
    for (double theta = 1e-4; theta < 10.0; theta *= 1.5) {
        const double ec = ec_subcarrier(r, {theta, 0.066}, 40.0, 30.0);
        CHECK(ec >= 0.0);
        CHECK(ec <= prev * (1 + 1e-12));
        prev = ec;
    }
}

TEST_CASE("EC is non-increasing in P_fa") {
    double prev = INFINITY;
    for (double pfa = 0.0; pfa <= 1.0; pfa += 0.05) {
        const double ec = ec_subcarrier(transition_row({0.6}, pfa, 0.05, 0.7, 0.6), {0.05, 0.066}, 35.0, 30.0);
        CHECK(ec <= prev);
        prev = ec;
    }
}

TEST_CASE("trace expression equals the spectral radius") {
    const auto r = derived_row();
    const QosParams q{0.01, 0.066};
    const double ra = 40.0, re = 25.0;
    std::array<double, kNumStates> mgf{};
    mgf.fill(1.0);
    mgf[0] = std::exp(-q.theta * ra * q.ts);
    mgf[6] = std::exp(-q.theta * re * q.ts);
    const double rho = spectral_radius(r, mgf);
    const double ec = -std::log(rho) / (q.theta * q.ts);
    CHECK(std::fabs(ec - ec_subcarrier(r, q, ra, re)) <= 1e-10 * ec);
}

TEST_CASE("the row is the stationary law") {
    const auto r = derived_row();
    std::array<double, kNumStates> next{};
    for (std::size_t j = 0; j < kNumStates; ++j) {
        for (std::size_t i = 0; i < kNumStates; ++i) next[j] += r.p[i] * r.p[j];
    }
    for (std::size_t j = 0; j < kNumStates; ++j) CHECK(next[j] == doctest::Approx(r.p[j]).epsilon(1e-15));
}

TEST_CASE("positive-exponent sign gives a negative value") {
    CHECK(ec_subcarrier(derived_row(), {0.01, 0.066}, 50.0, 30.0, EcSign::PositiveExponent) < 0.0);
}

TEST_CASE("EC total over subcarriers") {
    const QosParams q;
    std::vector<SubcarrierInputs> same(256, {derived_row(), 40.0, 30.0});
    const auto one = ec_subcarrier(derived_row(), q, 40.0, 30.0);
    const auto tot = ec_total(same, q);
    CHECK(tot.per_subcarrier.size() == 256);
    CHECK(tot.total == doctest::Approx(256.0 * one).epsilon(1e-13));
    CHECK(ec_total(std::span(same.data(), 1), q).total == one);

    CounterRng rng(8, 0);
    std::vector<SubcarrierInputs> mixed;
    for (int i = 0; i < 300; ++i) {
        mixed.push_back({transition_row({rng.uniform()}, rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()),
                         rng.uniform(0, 80), rng.uniform(0, 80)});
    }
    const auto par = ec_total(mixed, q);
    const auto ser = reference::ec_total(mixed, q);
    CHECK(par.total == ser.total);
    CHECK(par.per_subcarrier == ser.per_subcarrier);
}

TEST_CASE("invalid EC inputs") {
    CHECK_THROWS_AS(ec_subcarrier(derived_row(), {0.0, 0.066}, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ec_subcarrier(derived_row(), {0.01, 0.066}, -1.0, 1.0), DomainError);
}
