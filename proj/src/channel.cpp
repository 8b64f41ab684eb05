// SPDX-License-Identifier: Apache-2.0
#include "authec/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "authec/errors.hpp"

namespace authec {

void OfdmGrid::validate() const {
    if (n_subcarriers < 1) throw DomainError("grid: n_subcarriers must be >= 1");
    if (!(slot_t > 0.0) || !(guard_t >= 0.0)) throw DomainError("grid: slot_t > 0 and guard_t >= 0 required");
    if (!(delta_f > 0.0) || std::fabs(delta_f * slot_t - 1.0) > 1e-9) {
        throw DomainError("grid: delta_f must equal 1/slot_t");
    }
}

OfdmGrid OfdmGrid::from_slot(std::size_t n, double slot_t, double guard_t, double f0) {
    OfdmGrid g;
    g.n_subcarriers = n;
    g.slot_t = slot_t;
    g.guard_t = guard_t;
    g.delta_f = 1.0 / slot_t;
    g.f0 = f0;
    g.validate();
    return g;
}

void MultipathProfile::validate() const {
    if (n_paths < 1) throw DomainError("profile: n_paths must be >= 1");
    if (mean_path_gains.size() != n_paths || path_delays.size() != n_paths) {
        throw DomainError("profile: gain and delay sequences must have n_paths entries");
    }
    if (!(attenuation > 0.0)) throw DomainError("profile: attenuation must be > 0");
    if (!(path_sigma > 0.0)) throw DomainError("profile: path_sigma must be > 0");
    if (!(rice_k >= 0.0)) throw DomainError("profile: rice_k must be >= 0");
}

double TransmitterProfile::per_subcarrier_power(std::size_t n_subcarriers) const {
    return total_power / static_cast<double>(n_subcarriers);
}

void TransmitterProfile::validate() const {
    if (!(total_power >= 0.0)) throw DomainError("transmitter: total_power must be >= 0");
    if (!(rate >= 0.0)) throw DomainError("transmitter: rate must be >= 0");
}

void SnrDistribution::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("snr: lambda must be finite and >= 0");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("snr: scale must be finite and > 0");
}

double subcarrier_frequency(const OfdmGrid& grid, std::size_t i) {
    if (i >= grid.n_subcarriers) {
        throw DomainError("subcarrier index " + std::to_string(i) + " out of range");
    }
    return grid.f0 + static_cast<double>(i) * grid.delta_f;
}

std::vector<std::complex<double>> path_coefficients(const MultipathProfile& profile, double f) {
    profile.validate();
    const double magnitude = 1.0 / std::sqrt(profile.attenuation);
    std::vector<std::complex<double>> c(profile.n_paths);
    for (std::size_t l = 0; l < profile.n_paths; ++l) {
        c[l] = std::polar(magnitude, -2.0 * std::numbers::pi * f * profile.path_delays[l]);
    }
    return c;
}

std::complex<double> cfr_mean(const MultipathProfile& profile, double f) {
    const auto c = path_coefficients(profile, f);
    std::complex<double> mean{0.0, 0.0};
    for (std::size_t l = 0; l < c.size(); ++l) mean += c[l] * profile.mean_path_gains[l];
    return mean;
}

double cfr_variance(const MultipathProfile& profile, double f) {
    const auto c = path_coefficients(profile, f);
    double var = 0.0;
    for (const auto& cl : c) var += std::norm(cl) * profile.path_sigma * profile.path_sigma;
    return var;
}

SnrDistribution noncentrality(const MultipathProfile& profile, double per_sc_power, double noise_var,
                              double f, SnrConvention convention) {
    if (!(noise_var > 0.0)) throw DomainError("noncentrality: noise_var must be > 0");
    const double mean_sq = std::norm(cfr_mean(profile, f));
    const double var = cfr_variance(profile, f);
    if (convention == SnrConvention::Nominal) {
        const double lambda = 2.0 * per_sc_power * profile.attenuation /
                              (noise_var * static_cast<double>(profile.n_paths)) * mean_sq;
        return {lambda, 1.0};
    }
    return {2.0 * mean_sq / var, per_sc_power * var / (2.0 * noise_var)};
}

SnrDistribution rice_snr_distribution(double rice_k, double sigma, double per_sc_power, double noise_var) {
    if (!(rice_k >= 0.0) || !(sigma > 0.0) || !(noise_var > 0.0) || !(per_sc_power > 0.0)) {
        throw DomainError("rice_snr_distribution: invalid parameters");
    }
    return {2.0 * rice_k, per_sc_power * sigma * sigma / noise_var};
}

double link_on_prob(const SnrDistribution& dist, double rate, double delta_f, const Tolerance& tol) {
    dist.validate();
    if (!(rate >= 0.0)) throw DomainError("link_on_prob: rate must be >= 0");
    if (!(delta_f > 0.0)) throw DomainError("link_on_prob: delta_f must be > 0");
    if (rate == 0.0) return 1.0;
    const double snr_threshold = std::expm1(rate / delta_f * std::numbers::ln2);
    if (!std::isfinite(snr_threshold)) return 0.0;
    return marcum_q1(std::sqrt(dist.lambda), std::sqrt(snr_threshold / dist.scale), tol);
}

double link_on_prob_rate_derivative(const SnrDistribution& dist, double rate, double delta_f) {
    dist.validate();
    if (!(rate >= 0.0)) throw DomainError("link_on_prob_rate_derivative: rate must be >= 0");
    const double growth = std::exp2(rate / delta_f);
    if (!std::isfinite(growth)) return 0.0;
    const double a = std::sqrt(dist.lambda);
    const double b = std::sqrt(std::expm1(rate / delta_f * std::numbers::ln2) / dist.scale);
    // I0(ab) exp(-(a^2+b^2)/2) = I0e(ab) exp(-(a-b)^2/2).
    const double kernel = bessel_i0_scaled(a * b) * std::exp(-0.5 * (a - b) * (a - b));
    return -kernel * std::numbers::ln2 * growth / (2.0 * delta_f * dist.scale);
}

std::complex<double> sample_cfr(const MultipathProfile& profile, const OfdmGrid& grid, std::size_t i,
                                CounterRng& rng) {
    const double f = subcarrier_frequency(grid, i);
    const auto mean = cfr_mean(profile, f);
    const double component_sd = std::sqrt(0.5 * cfr_variance(profile, f));
    const double re = rng.normal();
    const double im = rng.normal();
    return mean + std::complex<double>{component_sd * re, component_sd * im};
}

std::complex<double> sample_rice_gain(double rice_k, double sigma, CounterRng& rng) {
    const double nu = sigma * std::sqrt(2.0 * rice_k);
    const double re = rng.normal();
    const double im = rng.normal();
    return {nu + sigma * re, sigma * im};
}

double sample_snr(const SnrDistribution& dist, CounterRng& rng) {
    const double x = rng.normal() + std::sqrt(dist.lambda);
    const double y = rng.normal();
    return dist.scale * (x * x + y * y);
}

}  // namespace authec
