// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "authec/channel.hpp"
#include "authec/markov_ec.hpp"

namespace authec {

/// Which rate objective is minimised.
///   Standard:         C(r) = P_cA Q1(a,b) (exp(-theta r T_s) - 1), whose minimiser
///                     is the EC maximiser.
///   PositiveExponent: C(r) = P_cA (exp(+theta r T_s) - 1) Q1(a,b), for
///                     comparisons only; it has no interior minimum.
enum class CostForm { Standard, PositiveExponent };

/// Alice's side of one subcarrier: everything the rate objective depends on.
struct RateProblem {
    SnrDistribution alice;
    double delta_f = 20.0;
    QosParams qos;
    double p_ca = 0.45;  // pi(A) (1 - P_fa)
    CostForm form = CostForm::Standard;
};

struct CostGradient {
    double cost;
    double gradient;  // dC/dr, per bit/s
};

CostGradient cost_and_gradient(double r, const RateProblem& problem);

CostGradient cost_and_gradient(double r, const QosParams& qos, const SnrDistribution& dist, double delta_f,
                               double p_ca);

/// Gradient descent settings. The descent runs on the normalised rate
/// u = r / delta_f and the normalised cost C / (P_cA theta T_s); grad_tol is
/// measured on that scale. Without an explicit step the step is set once,
/// before the first update, to the inverse curvature at the start point.
/// Without an explicit start the descent begins at the best point of a
/// 65-point scan of [0, rate_search_upper].
struct GdConfig {
    std::optional<double> step;
    long max_iters = 10000;
    double grad_tol = 1e-6;
    std::optional<double> r_init;

    void validate() const;
};

struct GdIterate {
    double r;
    double cost;
    double gradient;             // dC/dr
    double normalized_gradient;  // the quantity compared against grad_tol
};

struct GdTrace {
    std::vector<GdIterate> iterates;
    bool converged = false;
    bool degenerate = false;  // p_ca == 0: the objective is identically zero
    double r_star = 0.0;
    double step = 0.0;
    long iterations = 0;  // number of updates applied
};

/// Minimise the summed objective over a single common rate. With one problem
/// this is the per-subcarrier optimiser. Throws DivergenceError when the cost
/// rises for 10 consecutive updates.
GdTrace gd_optimize(const GdConfig& cfg, std::span<const RateProblem> problems);
GdTrace gd_optimize(const GdConfig& cfg, const RateProblem& problem);

/// Full per-subcarrier EC context: Alice's rate is the free variable.
struct EcContext {
    Priors priors;
    double pfa = 0.1;
    double pmd = 0.1;
    SnrDistribution alice{2.0, 1.0};
    SnrDistribution eve{2.0, 1.0};
    double delta_f = 20.0;
    QosParams qos;
    double r_eve = 30.0;
    EcSign sign = EcSign::Standard;

    MarkovRow row(double r_alice) const;
    double ec(double r_alice) const;
    RateProblem rate_problem(CostForm form = CostForm::Standard) const;
};

struct GridSearchResult {
    double r_star;
    double ec_star;
    double step;
};

/// Exhaustive search of EC over n_points uniformly spaced rates in [lo, hi];
/// ties go to the smaller rate. Points are evaluated in parallel.
GridSearchResult grid_search_rate(double lo, double hi, std::size_t n_points, const EcContext& ctx);

/// Same search for one rate shared by several subcarriers (sum of EC).
GridSearchResult grid_search_common_rate(double lo, double hi, std::size_t n_points,
                                         std::span<const EcContext> contexts);

/// EC sampled on the grid, in grid order.
std::vector<double> ec_curve(double lo, double hi, std::size_t n_points, const EcContext& ctx);

/// Default upper end for rate searches: the rate at which the link is ON with
/// probability below 1e-9 or so, rounded to a whole number of delta_f.
double rate_search_upper(const SnrDistribution& dist, double delta_f);

}  // namespace authec
