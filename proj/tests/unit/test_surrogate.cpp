// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "authec/errors.hpp"
#include "authec/reference.hpp"
#include "authec/surrogate.hpp"

using namespace authec;

namespace {

MlpModel sample_model() {
    std::array<double, kNumParams> p{};
    for (std::size_t i = 0; i < kNumParams; ++i) p[i] = 0.1 * static_cast<double>(static_cast<int>(i % 7) - 3);
    return MlpModel::from_params(p);
}

RateDataset toy_dataset(std::size_t n, std::uint64_t seed) {
    RateDataset d;
    CounterRng rng(seed, 3);
    for (std::size_t i = 0; i < n; ++i) {
        Features x{rng.uniform(0.1, 0.5), rng.uniform(0.5, 10.0), rng.uniform(0.1, 0.5), rng.uniform(0.5, 0.9)};
        d.features.push_back(x);
        d.labels.push_back(20.0 + 3.0 * x[1] - 10.0 * x[0]);
    }
    return d;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

TEST_CASE("forward pass on hand-computed examples") {
    MlpModel m;
    m.w_hidden[0] = {1.0, 0.0, 0.0, 0.0};
    m.w_hidden[1] = {0.0, -1.0, 0.0, 0.0};
    m.b_hidden = {0.0, 0.5, 0.0, 0.0};
    m.w_out = {2.0, 3.0, 0.0, 0.0};
    m.b_out = 1.0;
    CHECK(forward(m, {1.0, 0.25, 0.0, 0.0}) == doctest::Approx(2.0 * 1.0 + 3.0 * 0.25 + 1.0));
    CHECK(forward(m, {-1.0, 2.0, 0.0, 0.0}) == doctest::Approx(1.0));  // both units inactive
    m.b_out = -5.0;
    CHECK(forward(m, {-1.0, 2.0, 0.0, 0.0}) == -5.0);
    CHECK(predict(m, {-1.0, 2.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("parameter vector round trip") {
    const auto m = sample_model();
    const auto p = m.params();
    CHECK(p.size() == 25);
    const auto m2 = MlpModel::from_params(p);
    CHECK(m2.params() == p);
    CHECK(p[0] == m.w_hidden[0][0]);
    CHECK(p[kHidden * kInputs] == m.b_hidden[0]);
    CHECK(p[kNumParams - 1] == m.b_out);
    std::vector<double> short_p(24, 0.0);
    CHECK_THROWS(MlpModel::from_params(short_p));
}

TEST_CASE("loss is zero on a model's own outputs") {
    const auto m = sample_model();
    auto d = toy_dataset(30, 1);
    for (std::size_t i = 0; i < d.size(); ++i) d.labels[i] = forward(m, d.features[i]);
    CHECK(loss(m, d) == doctest::Approx(0.0).epsilon(1e-15));
    const auto g = backward(m, d, all_indices(d.size()));
    for (double v : g) CHECK(std::fabs(v) < 1e-12);
}

TEST_CASE("backward matches finite differences") {
    CounterRng rng(5, 0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto m = MlpModel::random(rng);
        const auto d = toy_dataset(16, 10 + static_cast<std::uint64_t>(trial));
        const auto idx = all_indices(d.size());
        const auto g = backward(m, d, idx);
        auto p = m.params();
        for (std::size_t i = 0; i < kNumParams; ++i) {
            const double h = 1e-6;
            auto pp = p, pm = p;
            pp[i] += h;
            pm[i] -= h;
            const double fd = (loss(MlpModel::from_params(pp), d, idx) - loss(MlpModel::from_params(pm), d, idx)) /
                              (2.0 * h);
            CHECK_MESSAGE(std::fabs(g[i] - fd) <= 1e-5 * std::max(1.0, std::fabs(fd)),
                          "param " << i << " analytic " << g[i] << " fd " << fd);
        }
    }
}

TEST_CASE("single-sample output-bias gradient has the closed form 2 (f - y)") {
    const auto m = sample_model();
    RateDataset d;
    d.features.push_back({0.2, 3.0, 0.3, 0.7});
    d.labels.push_back(4.0);
    const std::vector<std::size_t> idx{0};
    const auto g = backward(m, d, idx);
    const double f = forward(m, d.features[0]);
    CHECK(g[kNumParams - 1] == doctest::Approx(2.0 * (f - 4.0)));
}

TEST_CASE("learning-rate schedule is a step decay") {
    TrainConfig c;
    CHECK(c.learning_rate(0) == doctest::Approx(1e-3));
    CHECK(c.learning_rate(24) == doctest::Approx(1e-3));
    CHECK(c.learning_rate(25) == doctest::Approx(1e-4));
    CHECK(c.learning_rate(50) == doctest::Approx(1e-5));
    CHECK(c.learning_rate(149) == doctest::Approx(1e-8));
}

TEST_CASE("training is deterministic for a seed") {
    const auto d = toy_dataset(120, 2);
    TrainConfig c;
    c.epochs = 20;
    c.seed = 9;
    const auto a = train(d, c);
    const auto b = train(d, c);
    CHECK(a.model.params() == b.model.params());
    CHECK(a.history.size() == 20);
    CHECK(a.train_indices.size() == 96);
    CHECK(a.val_indices.size() == 24);
    c.seed = 10;
    CHECK(train(d, c).model.params() != a.model.params());
}

TEST_CASE("a constant label is learned almost exactly") {
    auto d = toy_dataset(200, 3);
    for (auto& y : d.labels) y = 42.0;
    TrainConfig c;
    c.epochs = 60;
    c.lr0 = 0.01;
    const auto r = train(d, c);
    for (const auto& x : d.features) CHECK(predict(r.model, x) == doctest::Approx(42.0).epsilon(1e-3));
}

TEST_CASE("training reduces the loss on a linear target") {
    const auto d = toy_dataset(400, 4);
    TrainConfig c;
    c.epochs = 50;
    const auto r = train(d, c);
    CHECK(r.history.back().train_mse < r.history.front().train_mse);
    double mean = 0.0, var = 0.0;
    for (double y : d.labels) mean += y;
    mean /= static_cast<double>(d.size());
    for (double y : d.labels) var += (y - mean) * (y - mean);
    var /= static_cast<double>(d.size());
    CHECK(r.history.back().val_mse < 0.05 * var);
}

TEST_CASE("validation loss falls during the first 25 epochs") {
    const auto d = toy_dataset(300, 12);
    TrainConfig c;
    c.epochs = 25;
    const auto r = train(d, c);
    CHECK(r.history.back().val_mse < r.history.front().val_mse);
}

TEST_CASE("a runaway learning rate is reported as divergence") {
    const auto d = toy_dataset(100, 13);
    TrainConfig c;
    c.epochs = 50;
    c.lr0 = 1e6;
    CHECK_THROWS_AS(train(d, c), DivergenceError);
}

TEST_CASE("full-batch training runs") {
    const auto d = toy_dataset(50, 5);
    TrainConfig c;
    c.batch_size = 0;
    c.epochs = 5;
    c.lr0 = 0.05;
    const auto r = train(d, c);
    CHECK(r.history.size() == 5);
    CHECK(std::isfinite(r.history.back().val_mse));
}

TEST_CASE("model serialization round trip is exact") {
    CounterRng rng(8, 0);
    const auto m = MlpModel::random(rng);
    CHECK(parse_model(serialize_model(m)).params() == m.params());
    const std::string path = "test_surrogate_model.txt";
    save_model(path, m);
    CHECK(load_model(path).params() == m.params());
    std::remove(path.c_str());
    CHECK_THROWS_AS(parse_model("4 4 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_model("4 4 1\n1 2 3\n"), ConfigError);
}

TEST_CASE("dataset save and load") {
    const auto d = toy_dataset(10, 6);
    const std::string path = "test_surrogate_dataset.csv";
    save_dataset(path, d);
    const auto e = load_dataset(path);
    std::remove(path.c_str());
    REQUIRE(e.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(e.features[i] == d.features[i]);
        CHECK(e.labels[i] == d.labels[i]);
    }
}

TEST_CASE("one-point dataset") {
    SweepSpec s;
    s.thetas = {0.2};
    s.pi_alices = {0.7};
    s.pfas = {0.3};
    s.a_per_point = 1;
    const auto rep = generate_dataset(s, GdConfig{}, 1);
    REQUIRE(rep.data.size() == 1);
    CHECK(rep.dropped == 0);
    const auto& x = rep.data.features[0];
    CHECK(x[0] == 0.2);
    CHECK(x[2] == 0.3);
    CHECK(x[3] == 0.7);
    CHECK(x[1] >= 0.5);
    CHECK(x[1] <= 10.0);
    CHECK(rep.data.labels[0] == doctest::Approx(optimal_rate_label(s, GdConfig{}, x)));
}

TEST_CASE("parallel dataset equals the serial reference") {
    SweepSpec s;
    s.thetas = {0.1, 0.4};
    s.pi_alices = {0.5, 0.9};
    s.pfas = {0.1, 0.5};
    s.a_per_point = 3;
    s.grid_points = 801;
    const auto a = generate_dataset(s, GdConfig{}, 11);
    const auto b = reference::generate_dataset(s, GdConfig{}, 11);
    CHECK(a.dropped == b.dropped);
    CHECK(a.data.features == b.data.features);
    CHECK(a.data.labels == b.data.labels);
    CHECK(a.data.size() + a.dropped == s.size());
}

TEST_CASE("labels grow with the mean SNR") {
    SweepSpec s;
    double prev = -1.0;
    for (double a : {0.5, 2.0, 5.0, 10.0}) {
        const double r = optimal_rate_label(s, GdConfig{}, {0.2, a, 0.2, 0.7});
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("invalid training settings") {
    TrainConfig c;
    c.split = 1.0;
    CHECK_THROWS(c.validate());
    c = TrainConfig{};
    c.lr0 = 0.0;
    CHECK_THROWS(c.validate());
    c = TrainConfig{};
    c.lr_decay_factor = 0.5;
    CHECK_THROWS(c.validate());
    SweepSpec s;
    s.thetas.clear();
    CHECK_THROWS_AS(s.validate(), DomainError);
}
