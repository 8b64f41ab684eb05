// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "authec/rng.hpp"
#include "authec/specialfn.hpp"

namespace authec {

/// OFDM time-frequency grid. The subcarrier spacing is tied to the symbol
/// length (delta_f = 1/slot_t); the effective slot includes the guard.
struct OfdmGrid {
    std::size_t n_subcarriers = 256;
    double delta_f = 20.0;    // Hz
    double slot_t = 0.050;    // s
    double guard_t = 0.016;   // s
    double f0 = 10000.0;      // Hz

    double ts() const { return slot_t + guard_t; }
    void validate() const;

    static OfdmGrid from_slot(std::size_t n, double slot_t, double guard_t, double f0);
};

/// Statistical multipath description: L paths with complex mean gains, delays
/// and a common per-path standard deviation, behind a total attenuation.
struct MultipathProfile {
    std::size_t n_paths = 1;
    double attenuation = 1.0;
    std::vector<std::complex<double>> mean_path_gains{{1.0, 0.0}};
    std::vector<double> path_delays{0.0};
    double path_sigma = 1.0;
    double rice_k = 1.0;  // shape of the direct Rice marginal sampler

    void validate() const;
};

enum class Transmitter { Alice, Eve };

struct TransmitterProfile {
    double total_power = 256.0;  // W, split equally over subcarriers
    double rate = 0.0;           // bits/s on every subcarrier
    Transmitter label = Transmitter::Alice;

    double per_subcarrier_power(std::size_t n_subcarriers) const;
    void validate() const;
};

/// Law of the per-subcarrier SNR: gamma = scale * X with X ~ chi2_2(lambda).
struct SnrDistribution {
    double lambda = 0.0;
    double scale = 1.0;

    void validate() const;
};

/// Nominal: lambda from the nominal path model, unit scale.
/// Exact: the law actually induced by the complex Gaussian channel,
///        lambda = 2|mean|^2 / var, scale = P var / (2 noise_var).
enum class SnrConvention { Nominal, Exact };

double subcarrier_frequency(const OfdmGrid& grid, std::size_t i);

/// c_l = exp(-j 2 pi f xi_l) / sqrt(A).
std::vector<std::complex<double>> path_coefficients(const MultipathProfile& profile, double f);

/// sum_l c_l E{h_l}.
std::complex<double> cfr_mean(const MultipathProfile& profile, double f);

/// sum_l |c_l|^2 sigma_l^2 = L sigma^2 / A.
double cfr_variance(const MultipathProfile& profile, double f);

SnrDistribution noncentrality(const MultipathProfile& profile, double per_sc_power, double noise_var,
                              double f, SnrConvention convention = SnrConvention::Nominal);

/// SNR law when |H| is drawn directly as Rice(K) with per-component std sigma:
/// |H|^2 / sigma^2 ~ chi2_2(2K), so lambda = 2K and scale = P sigma^2 / noise_var.
SnrDistribution rice_snr_distribution(double rice_k, double sigma, double per_sc_power, double noise_var);

/// Probability that the fixed rate is below the instantaneous capacity
/// delta_f * log2(1 + gamma): Q1(sqrt(lambda), sqrt((2^{r/df} - 1) / scale)).
double link_on_prob(const SnrDistribution& dist, double rate, double delta_f, const Tolerance& tol = {});

/// d/d(rate) of link_on_prob:
/// -I0(ab) exp(-(a^2+b^2)/2) ln2 2^{r/df} / (2 df scale).
double link_on_prob_rate_derivative(const SnrDistribution& dist, double rate, double delta_f);

/// Draw H^{(i)} ~ CN(sum c_l E{h_l}, sum |c_l|^2 sigma_l^2).
std::complex<double> sample_cfr(const MultipathProfile& profile, const OfdmGrid& grid, std::size_t i,
                                CounterRng& rng);

/// Draw a complex gain whose magnitude is Rice(K) with per-component std sigma.
std::complex<double> sample_rice_gain(double rice_k, double sigma, CounterRng& rng);

/// Draw gamma from an SnrDistribution directly.
double sample_snr(const SnrDistribution& dist, CounterRng& rng);

}  // namespace authec
