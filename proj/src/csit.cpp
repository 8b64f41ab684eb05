// SPDX-License-Identifier: Apache-2.0
#include "authec/csit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "authec/errors.hpp"

namespace authec {

namespace {

// Effective upper end of the chi2_2(lambda) support for quadrature.
double support_upper(double lambda) {
    const double r = std::sqrt(lambda) + 9.0;
    return r * r;
}

// E[g(gamma)] under gamma = scale * chi2_2(lambda), split at the mode region.
template <class F>
double expectation(const SnrDistribution& dist, F g, const Tolerance& tol) {
    auto integrand = [&](double x) { return g(dist.scale * x) * noncentral_chi2_pdf(x, dist.lambda); };
    const double hi = support_upper(dist.lambda);
    const double mid = std::max(4.0, dist.lambda);
    return integrate(integrand, 0.0, mid, tol) + integrate(integrand, mid, hi, tol);
}

double exponent(const QosParams& qos, double delta_f, CsitMgfForm form) {
    if (form == CsitMgfForm::PositiveExponent) return qos.theta / std::numbers::ln2;
    return -qos.theta * qos.ts * delta_f / std::numbers::ln2;
}

// E[(1+gamma)^k] - 1, accurate for small k.
double mgf_excess(const SnrDistribution& dist, const QosParams& qos, double delta_f, CsitMgfForm form,
                  const Tolerance& tol) {
    const double k = exponent(qos, delta_f, form);
    return expectation(dist, [k](double gamma) { return std::expm1(k * std::log1p(gamma)); }, tol);
}

}  // namespace

double csit_service_mgf(const SnrDistribution& dist, const QosParams& qos, double delta_f, CsitMgfForm form,
                        const Tolerance& tol) {
    dist.validate();
    qos.validate();
    if (!(delta_f > 0.0)) throw DomainError("csit: delta_f must be > 0");
    return 1.0 + mgf_excess(dist, qos, delta_f, form, tol);
}

double ec_known_csit(const SnrDistribution& dist, const QosParams& qos, double delta_f, double p_accept,
                     CsitMgfForm form) {
    qos.validate();
    if (!(p_accept >= 0.0 && p_accept <= 1.0)) throw DomainError("csit: p_accept must lie in [0,1]");
    if (!(delta_f > 0.0)) throw DomainError("csit: delta_f must be > 0");
    if (dist.scale == 0.0) return 0.0;
    dist.validate();
    const double excess = mgf_excess(dist, qos, delta_f, form, {1e-13, 1e-11, 4000000});
    return -std::log1p(p_accept * excess) / (qos.theta * qos.ts);
}

double ec_known_csit_mean_rate(const SnrDistribution& dist, double delta_f, double p_accept) {
    if (dist.scale == 0.0) return 0.0;
    dist.validate();
    const double mean_log = expectation(dist, [](double gamma) { return std::log2(1.0 + gamma); },
                                        {1e-13, 1e-11, 4000000});
    return p_accept * delta_f * mean_log;
}

void CsitPowerProblem::validate() const {
    if (gains.empty()) throw DomainError("csit: at least one gain is required");
    for (double g : gains) {
        if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("csit: gains must be finite and > 0");
    }
    if (!(total_power > 0.0)) throw DomainError("csit: total_power must be > 0");
    if (!(theta > 0.0)) throw DomainError("csit: theta must be > 0");
    if (!(p_accept > 0.0 && p_accept <= 1.0)) throw DomainError("csit: p_accept must lie in (0,1]");
}

double CsitPowerProblem::level_constant() const { return (theta / std::numbers::ln2 + 1.0) / p_accept; }

std::vector<double> optimal_power(const CsitPowerProblem& problem, double kappa) {
    problem.validate();
    if (!(kappa > 0.0)) throw DomainError("optimal_power: kappa must be > 0");
    const double level = problem.level_constant() / kappa;
    std::vector<double> p(problem.gains.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::max(0.0, level - 1.0 / problem.gains[i]);
    return p;
}

PowerSolution solve_power_dual(const CsitPowerProblem& problem, const DualConfig& cfg) {
    problem.validate();
    if (cfg.step && !(*cfg.step > 0.0)) throw DomainError("solve_power_dual: step must be > 0");
    if (cfg.max_iters < 1) throw DomainError("solve_power_dual: max_iters must be >= 1");

    const double n = static_cast<double>(problem.gains.size());
    const double c = problem.level_constant();
    double inverse_sum = 0.0;
    for (double g : problem.gains) inverse_sum += 1.0 / g;
    const double kappa0 = c * n / (problem.total_power + inverse_sum);
    const double step = cfg.step.value_or(kappa0 * kappa0 / (n * c));
    const double floor = 1e-12 * kappa0;
    const double tol = cfg.residual_tol * problem.total_power;

    PowerSolution sol;
    double kappa = kappa0;
    for (long m = 0;; ++m) {
        auto alloc = optimal_power(problem, kappa);
        double used = 0.0;
        for (double p : alloc) used += p;
        const double residual = problem.total_power - used;
        sol.trace.push_back({kappa, residual});
        sol.allocation = std::move(alloc);
        sol.kappa = kappa;
        if (std::fabs(residual) <= tol) {
            sol.converged = true;
            break;
        }
        if (m >= cfg.max_iters) break;
        kappa = std::max(floor, kappa - step * residual);
        ++sol.iterations;
    }
    return sol;
}

}  // namespace authec
