// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace authec {

/// Stopping rule shared by the series and quadrature routines. A result is
/// accepted once the estimated remainder is below abs_tol + rel_tol * |value|.
struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    long max_terms = 100000;

    void validate() const;
};

/// Gaussian tail Q(x) = P(Z > x) for Z ~ N(0,1).
double gaussian_q(double x);

/// Inverse of gaussian_q on (0,1). Throws DomainError outside the open interval.
double gaussian_q_inv(double p);

/// Standard normal density.
double normal_pdf(double x);

/// Modified Bessel function of the first kind, order zero.
/// Throws OverflowError once the result leaves the double range.
double bessel_i0(double x);

/// exp(-x) * I0(x); finite for every x >= 0.
double bessel_i0_scaled(double x);

/// First-order Marcum Q function Q1(alpha, beta). Arguments are the Marcum
/// arguments themselves (already square-rooted), i.e. Q1(alpha, beta) is the
/// tail P(X > beta^2) of a non-central chi-squared law with 2 degrees of
/// freedom and non-centrality alpha^2.
double marcum_q1(double alpha, double beta, const Tolerance& tol = {});

/// Tail probability of chi-squared(2 dof, noncentrality lambda) at x.
double noncentral_chi2_ccdf(double x, double lambda, const Tolerance& tol = {});

/// Density of chi-squared(2 dof, noncentrality lambda) at x >= 0.
double noncentral_chi2_pdf(double x, double lambda);

/// Adaptive Simpson quadrature of f over [lo, hi]. The interval is first cut
/// into a fixed number of panels so narrow peaks are not skipped; each panel
/// is then bisected until the Richardson error estimate meets its share of
/// the tolerance. max_terms caps the total number of integrand evaluations.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {1e-10, 1e-10, 2000000});

}  // namespace authec
