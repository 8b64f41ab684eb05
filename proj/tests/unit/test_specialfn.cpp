// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "authec/errors.hpp"
#include "authec/specialfn.hpp"

using namespace authec;
using doctest::Approx;

namespace {
bool close_rel(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::fabs(b); }
}  // namespace

TEST_CASE("gaussian tail matches reference values") {
    CHECK(close_rel(gaussian_q(1.0), 0.15865525393145707, 1e-14));
    CHECK(close_rel(gaussian_q(5.0), 2.866515718791933e-07, 1e-13));
    CHECK(close_rel(gaussian_q(-2.0), 0.9772498680518208, 1e-15));
    CHECK(gaussian_q(0.0) == 0.5);
}

TEST_CASE("gaussian tail inverse") {
    CHECK(close_rel(gaussian_q_inv(0.1), 1.2815515655446004, 1e-13));
    CHECK(close_rel(gaussian_q_inv(0.9), -1.2815515655446004, 1e-13));
    CHECK(close_rel(gaussian_q_inv(1e-6), 4.753424308822899, 1e-13));
    CHECK(gaussian_q_inv(0.5) == 0.0);
    for (double p : {1e-12, 1e-4, 0.03, 0.37, 0.81, 0.999}) {
        CHECK(close_rel(gaussian_q(gaussian_q_inv(p)), p, 1e-12));
    }
    CHECK_THROWS_AS(gaussian_q_inv(0.0), DomainError);
    CHECK_THROWS_AS(gaussian_q_inv(1.0), DomainError);
    CHECK_THROWS_AS(gaussian_q_inv(std::nan("")), DomainError);
}

TEST_CASE("modified Bessel I0") {
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(close_rel(bessel_i0(0.5), 1.0634833707413234, 1e-14));
    CHECK(close_rel(bessel_i0(1.0), 1.2660658777520082, 1e-14));
    CHECK(close_rel(bessel_i0(10.0), 2815.716628466254, 1e-13));
    CHECK(close_rel(bessel_i0(30.0), 781672297823.9775, 1e-13));
    CHECK(close_rel(bessel_i0_scaled(50.0), 0.056561626647454184, 1e-13));
    // Both branches agree near the switch point.
    CHECK(close_rel(bessel_i0_scaled(30.0), bessel_i0(30.0) * std::exp(-30.0), 1e-13));
    CHECK(close_rel(bessel_i0(30.5) * std::exp(-30.5), bessel_i0_scaled(30.5), 1e-13));
    CHECK_THROWS_AS(bessel_i0(800.0), OverflowError);
    CHECK(std::isfinite(bessel_i0_scaled(1e6)));
    CHECK_THROWS_AS(bessel_i0(-1.0), DomainError);
}

TEST_CASE("Marcum Q1 identities and reference values") {
    for (double a : {0.1, 1.0, 3.0, 7.5}) CHECK(marcum_q1(a, 0.0) == 1.0);
    for (double b : {0.1, 1.0, 2.5, 6.0}) CHECK(std::fabs(marcum_q1(0.0, b) - std::exp(-0.5 * b * b)) <= 1e-12);
    CHECK(marcum_q1(2.0, INFINITY) == 0.0);
    CHECK(close_rel(marcum_q1(1.0, 1.0), 0.7328798037968203, 1e-12));
    CHECK(close_rel(marcum_q1(std::sqrt(2.0), 1.0), 0.8193099727251615, 1e-12));
    CHECK(close_rel(marcum_q1(3.0, 2.0), 0.8867207544023924, 1e-12));
    CHECK(close_rel(marcum_q1(0.5, 5.0), 1.1690765011687958e-05, 1e-9));
    CHECK_THROWS_AS(marcum_q1(-1.0, 1.0), DomainError);
}

TEST_CASE("non-central chi-squared tail against reference values") {
    struct Row {
        double x, lambda, expected;
    };
    const Row rows[] = {{0.5, 1.0, 0.8576340861306335}, {3.0, 2.0, 0.512054316683796},
                        {10.0, 5.0, 0.2313084493401366}, {20.0, 10.0, 0.11979375231607833},
                        {1e-3, 0.3, 0.9995697374492576}, {50.0, 30.0, 0.06509163222011531}};
    const Tolerance tight{0.0, 1e-14, 100000};
    for (const auto& r : rows) {
        CHECK(close_rel(noncentral_chi2_ccdf(r.x, r.lambda, tight), r.expected, 1e-11));
        CHECK(std::fabs(noncentral_chi2_ccdf(r.x, r.lambda) - r.expected) <= 2e-12 + 1e-12 * r.expected);
    }
}

TEST_CASE("Marcum Q1 is monotone in each argument") {
    double prev = 1.0;
    for (double b = 0.0; b < 8.0; b += 0.25) {
        const double q = marcum_q1(1.5, b);
        CHECK(q <= prev);
        prev = q;
    }
    prev = 0.0;
    for (double a = 0.0; a < 8.0; a += 0.25) {
        const double q = marcum_q1(a, 2.0);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("non-central chi-squared density integrates to the tail") {
    const double lambda = 3.0;
    const double x = 4.0;
    const double mass = integrate([&](double t) { return noncentral_chi2_pdf(t, lambda); }, x, 200.0);
    CHECK(close_rel(mass, noncentral_chi2_ccdf(x, lambda), 1e-9));
}

TEST_CASE("Marcum Q1 convergence failure is reported") {
    CHECK_THROWS_AS(marcum_q1(20.0, 20.0, {1e-15, 0.0, 3}), ConvergenceError);
    CHECK_THROWS_AS(marcum_q1(1.0, 1.0, {0.0, 0.0, 10}), DomainError);
}

TEST_CASE("adaptive quadrature") {
    CHECK(integrate([](double t) { return t * t; }, 0.0, 3.0) == Approx(9.0).epsilon(1e-14));
    CHECK(integrate([](double t) { return std::exp(-t); }, 0.0, 40.0) == Approx(1.0 - std::exp(-40.0)).epsilon(1e-11));
    // Narrow peak away from the panel midpoints.
    const double peak = integrate([](double t) { return std::exp(-0.5 * (t - 7.3) * (t - 7.3) / 1e-4); }, 0.0, 20.0);
    CHECK(peak == Approx(std::sqrt(2.0 * M_PI) * 1e-2).epsilon(1e-9));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(integrate([](double t) { return std::sin(1.0 / (t + 1e-9)); }, 0.0, 1.0, {1e-14, 1e-14, 500}),
                    ConvergenceError);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), DomainError);
}
