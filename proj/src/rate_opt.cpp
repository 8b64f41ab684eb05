// SPDX-License-Identifier: Apache-2.0
#include "authec/rate_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "authec/errors.hpp"
#include "authec/reference.hpp"

namespace authec {

namespace {

constexpr int kDivergencePatience = 10;
constexpr double kMinCurvature = 0.05;
// Relative-only accuracy keeps finite differences meaningful in the tail.
constexpr Tolerance kCostTolerance{0.0, 1e-14, 100000};

double normalization(std::span<const RateProblem> problems) {
    double s = 0.0;
    for (const auto& p : problems) s += p.p_ca * p.qos.theta * p.qos.ts;
    return s;
}

CostGradient summed(double r, std::span<const RateProblem> problems) {
    CostGradient total{0.0, 0.0};
    for (const auto& p : problems) {
        const auto cg = cost_and_gradient(r, p);
        total.cost += cg.cost;
        total.gradient += cg.gradient;
    }
    return total;
}

constexpr int kCoarsePoints = 65;

// Best point of a coarse scan of the summed cost.
double default_start(std::span<const RateProblem> problems) {
    const auto& first = problems.front();
    const double hi = rate_search_upper(first.alice, first.delta_f);
    double best_r = 0.0;
    double best_cost = summed(0.0, problems).cost;
    for (int k = 1; k < kCoarsePoints; ++k) {
        const double r = hi * k / (kCoarsePoints - 1);
        const double c = summed(r, problems).cost;
        if (c < best_cost) {
            best_cost = c;
            best_r = r;
        }
    }
    return best_r;
}

}  // namespace

CostGradient cost_and_gradient(double r, const RateProblem& problem) {
    if (!(r >= 0.0)) throw DomainError("cost_and_gradient: rate must be >= 0");
    problem.qos.validate();
    if (!(problem.p_ca >= 0.0 && problem.p_ca <= 1.0)) throw DomainError("cost_and_gradient: p_ca must lie in [0,1]");
    if (problem.p_ca == 0.0) return {0.0, 0.0};

    const double c = problem.qos.theta * problem.qos.ts;
    const double q = link_on_prob(problem.alice, r, problem.delta_f, kCostTolerance);
    const double dq = link_on_prob_rate_derivative(problem.alice, r, problem.delta_f);
    if (problem.form == CostForm::Standard) {
        const double growth = std::expm1(-c * r);  // e^{-cr} - 1
        return {problem.p_ca * q * growth, problem.p_ca * (dq * growth - q * c * std::exp(-c * r))};
    }
    const double growth = std::expm1(c * r);  // e^{cr} - 1
    return {problem.p_ca * q * growth, problem.p_ca * (dq * growth + q * c * std::exp(c * r))};
}

CostGradient cost_and_gradient(double r, const QosParams& qos, const SnrDistribution& dist, double delta_f,
                               double p_ca) {
    return cost_and_gradient(r, RateProblem{dist, delta_f, qos, p_ca, CostForm::Standard});
}

void GdConfig::validate() const {
    if (step && !(*step > 0.0)) throw DomainError("gd: step must be > 0");
    if (!(grad_tol > 0.0)) throw DomainError("gd: grad_tol must be > 0");
    if (max_iters < 1) throw DomainError("gd: max_iters must be >= 1");
    if (r_init && !(*r_init >= 0.0)) throw DomainError("gd: r_init must be >= 0");
}

GdTrace gd_optimize(const GdConfig& cfg, std::span<const RateProblem> problems) {
    cfg.validate();
    if (problems.empty()) throw DomainError("gd_optimize: no rate problems");
    const double delta_f = problems.front().delta_f;
    for (const auto& p : problems) {
        if (p.delta_f != delta_f) throw DomainError("gd_optimize: problems must share delta_f");
    }

    GdTrace trace;
    const double r0 = cfg.r_init ? *cfg.r_init : default_start(problems);
    const double norm = normalization(problems);
    if (norm == 0.0) {
        trace.degenerate = true;
        trace.r_star = r0;
        trace.iterates.push_back({r0, 0.0, 0.0, 0.0});
        return trace;
    }

    // Work in u = r / delta_f on the cost C / norm.
    auto normalized_gradient = [&](double u) { return summed(u * delta_f, problems).gradient * delta_f / norm; };

    double step = 0.0;
    if (cfg.step) {
        step = *cfg.step;
    } else {
        const double u0 = r0 / delta_f;
        const double h = 1e-4;
        const double lo = std::max(0.0, u0 - h);
        const double curvature = (normalized_gradient(u0 + h) - normalized_gradient(lo)) / (u0 + h - lo);
        step = 1.0 / std::max(curvature, kMinCurvature);
    }
    trace.step = step;

    double u = r0 / delta_f;
    double previous_cost = 0.0;
    int rising = 0;
    for (long m = 0;; ++m) {
        const auto cg = summed(u * delta_f, problems);
        const double g = cg.gradient * delta_f / norm;
        trace.iterates.push_back({u * delta_f, cg.cost, cg.gradient, g});
        if (!std::isfinite(cg.cost) || !std::isfinite(g)) {
            throw DivergenceError("gd_optimize: objective became non-finite");
        }
        if (m > 0) {
            rising = (cg.cost > previous_cost) ? rising + 1 : 0;
            if (rising >= kDivergencePatience) {
                throw DivergenceError("gd_optimize: cost increased for 10 consecutive steps; step too large");
            }
        }
        previous_cost = cg.cost;
        if (std::fabs(g) <= cfg.grad_tol) {
            trace.converged = true;
            break;
        }
        if (m >= cfg.max_iters) break;
        u = std::max(0.0, u - step * g);
        ++trace.iterations;
    }
    trace.r_star = u * delta_f;
    return trace;
}

GdTrace gd_optimize(const GdConfig& cfg, const RateProblem& problem) {
    return gd_optimize(cfg, std::span<const RateProblem>(&problem, 1));
}

MarkovRow EcContext::row(double r_alice) const {
    const double q_alice = link_on_prob(alice, r_alice, delta_f);
    const double q_eve = link_on_prob(eve, r_eve, delta_f);
    return transition_row(priors, pfa, pmd, q_alice, q_eve);
}

double EcContext::ec(double r_alice) const { return ec_subcarrier(row(r_alice), qos, r_alice, r_eve, sign); }

RateProblem EcContext::rate_problem(CostForm form) const {
    return RateProblem{alice, delta_f, qos, priors.pi_alice * (1.0 - pfa), form};
}

std::vector<double> ec_curve(double lo, double hi, std::size_t n_points, const EcContext& ctx) {
    if (!(lo < hi) || n_points < 2) throw DomainError("grid search requires lo < hi and n_points >= 2");
    if (!(lo >= 0.0)) throw DomainError("grid search requires lo >= 0");
    std::vector<double> values(n_points);
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    const long n = static_cast<long>(n_points);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = ctx.ec(lo + step * static_cast<double>(i));
    return values;
}

GridSearchResult grid_search_rate(double lo, double hi, std::size_t n_points, const EcContext& ctx) {
    const auto values = ec_curve(lo, hi, n_points, ctx);
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return {lo + step * static_cast<double>(best), values[best], step};
}

GridSearchResult grid_search_common_rate(double lo, double hi, std::size_t n_points,
                                         std::span<const EcContext> contexts) {
    if (contexts.empty()) throw DomainError("grid_search_common_rate: no subcarriers");
    std::vector<double> total(n_points, 0.0);
    for (const auto& ctx : contexts) {
        const auto values = ec_curve(lo, hi, n_points, ctx);
        for (std::size_t i = 0; i < n_points; ++i) total[i] += values[i];
    }
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    std::size_t best = 0;
    for (std::size_t i = 1; i < total.size(); ++i) {
        if (total[i] > total[best]) best = i;
    }
    return {lo + step * static_cast<double>(best), total[best], step};
}

double rate_search_upper(const SnrDistribution& dist, double delta_f) {
    dist.validate();
    const double gamma_hi = dist.scale * (dist.lambda + 50.0 + 10.0 * std::sqrt(dist.lambda));
    return delta_f * std::ceil(std::log2(1.0 + gamma_hi));
}

namespace reference {

GridSearchResult grid_search_rate(double lo, double hi, std::size_t n_points, const EcContext& ctx) {
    if (!(lo < hi) || n_points < 2) throw DomainError("grid search requires lo < hi and n_points >= 2");
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    GridSearchResult best{lo, ctx.ec(lo), step};
    for (std::size_t i = 1; i < n_points; ++i) {
        const double r = lo + step * static_cast<double>(i);
        const double v = ctx.ec(r);
        if (v > best.ec_star) best = {r, v, step};
    }
    return best;
}

}  // namespace reference

}  // namespace authec
