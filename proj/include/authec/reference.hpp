// SPDX-License-Identifier: Apache-2.0
#pragma once

// Serial reference versions of the OpenMP kernels. They share the numerical
// core with the parallel versions and must produce bit-identical results;
// tests and the benchmark compare the two.

#include <span>

#include "authec/markov_ec.hpp"
#include "authec/montecarlo.hpp"
#include "authec/rate_opt.hpp"
#include "authec/surrogate.hpp"

namespace authec::reference {

EcResult ec_total(std::span<const SubcarrierInputs> inputs, const QosParams& qos);

GridSearchResult grid_search_rate(double lo, double hi, std::size_t n_points, const EcContext& ctx);

SimSummary empirical_ec(const SimConfig& cfg);

DatasetReport generate_dataset(const SweepSpec& spec, const GdConfig& gd, std::uint64_t seed);

}  // namespace authec::reference
