// SPDX-License-Identifier: Apache-2.0
#include "authec/specialfn.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "authec/errors.hpp"

namespace authec {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Above this argument the asymptotic expansion of I0 is used.
constexpr double kBesselSeriesLimit = 30.0;

double bessel_i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// sum_k [(2k-1)!!]^2 / (k! (8x)^k), the bracket of the large-x expansion.
double bessel_i0_asymptotic_bracket(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (8.0 * k * x);
        if (next > term) break;  // series starts diverging
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

}  // namespace

void Tolerance::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol + rel_tol > 0.0)) {
        throw DomainError("tolerance requires abs_tol, rel_tol >= 0 with a positive sum");
    }
    if (max_terms < 1) throw DomainError("tolerance requires max_terms >= 1");
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double gaussian_q_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("gaussian_q_inv: probability must lie in (0,1), got " + std::to_string(p));
    }
    if (p == 0.5) return 0.0;
    // Q is strictly decreasing: Q(lo) > p > Q(hi).
    double lo = -40.0;
    double hi = 40.0;
    while (hi - lo > 0.5) {
        const double mid = 0.5 * (lo + hi);
        if (gaussian_q(mid) > p) lo = mid; else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = gaussian_q(x) - p;
        if (f > 0.0) lo = x; else hi = x;
        const double slope = -normal_pdf(x);
        double next = (slope != 0.0) ? x - f / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double dx = next - x;
        x = next;
        if (std::fabs(dx) <= 1e-15 * (1.0 + std::fabs(x))) break;
    }
    return x;
}

double bessel_i0(double x) {
    if (!(x >= 0.0)) throw DomainError("bessel_i0: argument must be >= 0");
    if (x <= kBesselSeriesLimit) return bessel_i0_series(x);
    const double bracket = bessel_i0_asymptotic_bracket(x);
    const double log_value = x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(bracket);
    if (log_value >= std::log(DBL_MAX)) {
        throw OverflowError("bessel_i0: result overflows double at x = " + std::to_string(x));
    }
    return std::exp(log_value);
}

double bessel_i0_scaled(double x) {
    if (!(x >= 0.0)) throw DomainError("bessel_i0_scaled: argument must be >= 0");
    if (x <= kBesselSeriesLimit) return bessel_i0_series(x) * std::exp(-x);
    return bessel_i0_asymptotic_bracket(x) / std::sqrt(2.0 * std::numbers::pi * x);
}

double marcum_q1(double alpha, double beta, const Tolerance& tol) {
    tol.validate();
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
        throw DomainError("marcum_q1: arguments must be >= 0");
    }
    if (beta == 0.0) return 1.0;
    if (std::isinf(beta)) return 0.0;
    if (alpha == 0.0) return std::exp(-0.5 * beta * beta);

    // Q1(a,b) = sum_j Pois(j; a^2/2) * P(Pois(b^2/2) <= j).
    const double x = 0.5 * alpha * alpha;
    const double y = 0.5 * beta * beta;
    const double log_x = std::log(x);
    const double log_y = std::log(y);

    double sum = 0.0;
    double poisson_cdf_y = 0.0;
    for (long j = 0; j < tol.max_terms; ++j) {
        const double lg = std::lgamma(static_cast<double>(j) + 1.0);
        poisson_cdf_y += std::exp(-y + j * log_y - lg);
        if (poisson_cdf_y > 1.0) poisson_cdf_y = 1.0;
        const double weight = std::exp(-x + j * log_x - lg);
        sum += weight * poisson_cdf_y;

        const double next = static_cast<double>(j) + 1.0;
        if (next + 1.0 > x) {
            // Geometric bound on the Poisson(x) tail beyond j.
            const double w_next = weight * x / next;
            const double remainder = w_next / (1.0 - x / (next + 1.0));
            if (remainder <= tol.abs_tol + tol.rel_tol * sum) return std::min(sum, 1.0);
        }
    }
    throw ConvergenceError("marcum_q1: series did not converge within " +
                           std::to_string(tol.max_terms) + " terms");
}

double noncentral_chi2_ccdf(double x, double lambda, const Tolerance& tol) {
    if (!(x >= 0.0) || !(lambda >= 0.0)) {
        throw DomainError("noncentral_chi2_ccdf: arguments must be >= 0");
    }
    return marcum_q1(std::sqrt(lambda), std::sqrt(x), tol);
}

double noncentral_chi2_pdf(double x, double lambda) {
    if (!(x >= 0.0) || !(lambda >= 0.0)) {
        throw DomainError("noncentral_chi2_pdf: arguments must be >= 0");
    }
    // 0.5 exp(-(x+lambda)/2) I0(sqrt(lambda x)), written with the scaled Bessel.
    const double root = std::sqrt(lambda * x);
    const double gap = std::sqrt(x) - std::sqrt(lambda);
    return 0.5 * std::exp(-0.5 * gap * gap) * bessel_i0_scaled(root);
}

double integrate(const std::function<double(double)>& f, double lo, double hi, const Tolerance& tol) {
    tol.validate();
    if (!(lo <= hi)) throw DomainError("integrate: requires lo <= hi");
    if (lo == hi) return 0.0;

    struct Panel {
        double a, b, fa, fm, fb, whole, eps;
        int depth;
    };
    constexpr int kPanels = 32;
    constexpr int kMaxDepth = 50;

    long evaluations = 0;
    auto eval = [&](double t) {
        ++evaluations;
        const double v = f(t);
        if (!std::isfinite(v)) throw DomainError("integrate: integrand is not finite");
        return v;
    };

    const double width = (hi - lo) / kPanels;
    std::vector<Panel> stack;
    stack.reserve(256);
    double coarse = 0.0;
    double f_left = eval(lo);
    for (int i = 0; i < kPanels; ++i) {
        const double a = lo + width * i;
        const double b = (i + 1 == kPanels) ? hi : lo + width * (i + 1);
        const double fm = eval(0.5 * (a + b));
        const double fb = eval(b);
        const double s = (b - a) / 6.0 * (f_left + 4.0 * fm + fb);
        coarse += s;
        stack.push_back({a, b, f_left, fm, fb, s, 0.0, 0});
        f_left = fb;
    }
    const double total_eps = tol.abs_tol + tol.rel_tol * std::fabs(coarse);
    for (auto& p : stack) p.eps = total_eps / kPanels;

    double result = 0.0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double m = 0.5 * (p.a + p.b);
        const double lm = eval(0.5 * (p.a + m));
        const double rm = eval(0.5 * (m + p.b));
        const double left = (m - p.a) / 6.0 * (p.fa + 4.0 * lm + p.fm);
        const double right = (p.b - m) / 6.0 * (p.fm + 4.0 * rm + p.fb);
        const double delta = left + right - p.whole;
        if (std::fabs(delta) <= 15.0 * p.eps) {
            result += left + right + delta / 15.0;
            continue;
        }
        if (p.depth >= kMaxDepth || evaluations >= tol.max_terms) {
            throw ConvergenceError("integrate: adaptive Simpson did not reach tolerance");
        }
        stack.push_back({p.a, m, p.fa, lm, p.fm, left, 0.5 * p.eps, p.depth + 1});
        stack.push_back({m, p.b, p.fm, rm, p.fb, right, 0.5 * p.eps, p.depth + 1});
    }
    return result;
}

}  // namespace authec
