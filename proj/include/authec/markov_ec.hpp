// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace authec {

/// Prior occupancy of a slot. Eve only transmits in slots Alice leaves idle.
struct Priors {
    double pi_alice = 0.5;

    double pi_eve() const { return 1.0 - pi_alice; }
    void validate() const;
};

/// States of the per-subcarrier service chain (1-based in reports):
///   1 Alice accepted, link ON  (serves r_A T_s bits)
///   2 Alice accepted, link OFF
///   3 Eve rejected,   link ON
///   4 Eve rejected,   link OFF
///   5 Alice rejected, link ON
///   6 Alice rejected, link OFF
///   7 Eve accepted,   link ON  (serves r_E T_s bits)
///   8 Eve accepted,   link OFF
inline constexpr std::size_t kNumStates = 8;

/// One row of the rank-1 transition matrix: every row is identical, so the
/// row is also the stationary law.
struct MarkovRow {
    std::array<double, kNumStates> p{};

    double sum() const;
    void validate() const;
};

struct QosParams {
    double theta = 0.01;  // QoS exponent, 1/bit
    double ts = 0.066;    // effective slot length, s

    void validate() const;
};

/// Sign used inside the log-MGF. Standard follows EC = -Lambda(-theta)/theta
/// (service enters as exp(-theta s)); PositiveExponent uses exp(+theta s)
/// and yields negative values; it exists only for side-by-side reports.
enum class EcSign { Standard, PositiveExponent };

struct SubcarrierInputs {
    MarkovRow row;
    double r_alice = 0.0;
    double r_eve = 0.0;
};

struct EcResult {
    std::vector<double> per_subcarrier;
    double total = 0.0;
};

/// Build the row from priors, authentication errors and link-ON probabilities
/// (q_alice = P{r_A < C_A}, q_eve = P{r_E < C_E}).
MarkovRow transition_row(const Priors& priors, double pfa, double pmd, double q_alice, double q_eve);

/// Per-subcarrier effective capacity, bits/s:
/// -(1/(theta T_s)) ln(p1 e^{-theta r_A T_s} + p2..p6 + p7 e^{-theta r_E T_s} + p8).
double ec_subcarrier(const MarkovRow& row, const QosParams& qos, double r_alice, double r_eve,
                     EcSign sign = EcSign::Standard);

/// Sum over subcarriers, evaluated in parallel. Per-subcarrier values are
/// independent of the thread count and the total is accumulated in index
/// order, so results are bit-identical to reference::ec_total.
EcResult ec_total(std::span<const SubcarrierInputs> inputs, const QosParams& qos);

/// theta -> 0 limit: mean service rate p1 r_A + p7 r_E.
double ec_small_theta_limit(const MarkovRow& row, double r_alice, double r_eve);

}  // namespace authec
