// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "authec/rate_opt.hpp"
#include "authec/rng.hpp"

namespace authec {

inline constexpr std::size_t kInputs = 4;
inline constexpr std::size_t kHidden = 4;
inline constexpr std::size_t kNumParams = kHidden * kInputs + kHidden + kHidden + 1;  // 25

/// Feature record: (theta, a = lambda, P_fa, pi(A)).
using Features = std::array<double, kInputs>;

/// 4-4-1 network, ReLU hidden layer, identity output.
struct MlpModel {
    std::array<std::array<double, kInputs>, kHidden> w_hidden{};  // row j feeds hidden unit j
    std::array<double, kHidden> b_hidden{};
    std::array<double, kHidden> w_out{};
    double b_out = 0.0;

    /// Parameters in serialization order: w_hidden row-major, b_hidden, w_out, b_out.
    std::array<double, kNumParams> params() const;
    static MlpModel from_params(std::span<const double> p);

    /// Uniform(-0.5, 0.5) initialization from the given stream.
    static MlpModel random(CounterRng& rng);

    void validate() const;
};

double forward(const MlpModel& model, const Features& x);

/// Rate prediction: forward output clamped to >= 0.
double predict(const MlpModel& model, const Features& x);

struct RateDataset {
    std::vector<Features> features;
    std::vector<double> labels;

    std::size_t size() const { return labels.size(); }
    void validate() const;
};

/// Mean squared error over samples [begin, end) of the index list.
double loss(const MlpModel& model, const RateDataset& data, std::span<const std::size_t> indices);
double loss(const MlpModel& model, const RateDataset& data);

/// Exact MSE gradient over the batch, in params() order. ReLU'(0) = 0.
std::array<double, kNumParams> backward(const MlpModel& model, const RateDataset& data,
                                        std::span<const std::size_t> indices);

/// Grid of operating points for label generation. Every (theta, pi_alice,
/// pfa) triple is combined with a_per_point values of a drawn uniformly from
/// [a_lo, a_hi].
struct SweepSpec {
    std::vector<double> thetas{0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> pi_alices{0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<double> pfas{0.1, 0.2, 0.3, 0.4, 0.5};
    std::size_t a_per_point = 8;
    double a_lo = 0.5;
    double a_hi = 10.0;
    double scale = 1.0;
    double delta_f = 20.0;
    double ts = 0.066;
    std::size_t grid_points = 2001;  // oracle grid used to verify each label

    void validate() const;
    std::size_t size() const { return thetas.size() * pi_alices.size() * pfas.size() * a_per_point; }
};

struct DatasetReport {
    RateDataset data;
    std::size_t dropped = 0;
    std::vector<std::string> messages;  // one line per dropped sample
};

/// Labels come from gd_optimize and are kept only if they land within one
/// grid step of grid_search_rate. Sample k draws a from substream k of seed,
/// so the result does not depend on the thread count.
DatasetReport generate_dataset(const SweepSpec& spec, const GdConfig& gd, std::uint64_t seed);

/// Label for one operating point; throws on optimizer failure.
double optimal_rate_label(const SweepSpec& spec, const GdConfig& gd, const Features& x);

struct TrainConfig {
    double lr0 = 0.001;
    std::size_t epochs = 150;
    std::size_t lr_decay_every = 25;
    double lr_decay_factor = 10.0;
    double split = 0.8;
    std::size_t batch_size = 1;  // 0 means full batch
    std::uint64_t seed = 1;

    void validate() const;
    double learning_rate(std::size_t epoch) const;
};

struct EpochLoss {
    std::size_t epoch;
    double learning_rate;
    double train_mse;  // raw label units
    double val_mse;
};

struct TrainResult {
    MlpModel model;  // acts on raw features
    std::vector<EpochLoss> history;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> val_indices;
};

/// Standardizes features and labels with training-split statistics, trains
/// with shuffled mini-batch gradient descent, then folds the standardization
/// into the weights. Single-threaded and deterministic for a given seed.
TrainResult train(const MlpModel& init, const RateDataset& data, const TrainConfig& cfg);

/// Convenience: initialize from the config seed and train.
TrainResult train(const RateDataset& data, const TrainConfig& cfg);

void save_model(const std::string& path, const MlpModel& model);
MlpModel load_model(const std::string& path);
std::string serialize_model(const MlpModel& model);
MlpModel parse_model(const std::string& text);

void save_dataset(const std::string& path, const RateDataset& data);
RateDataset load_dataset(const std::string& path);

}  // namespace authec
