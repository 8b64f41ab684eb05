// SPDX-License-Identifier: Apache-2.0
#include "authec/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "authec/csv.hpp"
#include "authec/errors.hpp"
#include "authec/reference.hpp"

namespace authec {

std::array<double, kNumParams> MlpModel::params() const {
    std::array<double, kNumParams> p{};
    std::size_t k = 0;
    for (const auto& row : w_hidden)
        for (double w : row) p[k++] = w;
    for (double b : b_hidden) p[k++] = b;
    for (double w : w_out) p[k++] = w;
    p[k] = b_out;
    return p;
}

MlpModel MlpModel::from_params(std::span<const double> p) {
    if (p.size() != kNumParams) throw DomainError("mlp: expected 25 parameters");
    MlpModel m;
    std::size_t k = 0;
    for (auto& row : m.w_hidden)
        for (double& w : row) w = p[k++];
    for (double& b : m.b_hidden) b = p[k++];
    for (double& w : m.w_out) w = p[k++];
    m.b_out = p[k];
    return m;
}

MlpModel MlpModel::random(CounterRng& rng) {
    std::array<double, kNumParams> p{};
    for (double& v : p) v = rng.uniform(-0.5, 0.5);
    return from_params(p);
}

void MlpModel::validate() const {
    for (double v : params()) {
        if (!std::isfinite(v)) throw DomainError("mlp: non-finite parameter");
    }
}

double forward(const MlpModel& model, const Features& x) {
    double out = model.b_out;
    for (std::size_t j = 0; j < kHidden; ++j) {
        double z = model.b_hidden[j];
        for (std::size_t i = 0; i < kInputs; ++i) z += model.w_hidden[j][i] * x[i];
        out += model.w_out[j] * std::max(0.0, z);
    }
    return out;
}

double predict(const MlpModel& model, const Features& x) { return std::max(0.0, forward(model, x)); }

void RateDataset::validate() const {
    if (features.size() != labels.size()) throw DomainError("dataset: features and labels differ in length");
    for (double y : labels) {
        if (!(y >= 0.0)) throw DomainError("dataset: labels must be >= 0");
    }
}

double loss(const MlpModel& model, const RateDataset& data, std::span<const std::size_t> indices) {
    if (indices.empty()) throw DomainError("loss: empty slice");
    double sum = 0.0;
    for (auto i : indices) {
        const double r = forward(model, data.features[i]) - data.labels[i];
        sum += r * r;
    }
    return sum / static_cast<double>(indices.size());
}

double loss(const MlpModel& model, const RateDataset& data) {
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return loss(model, data, all);
}

std::array<double, kNumParams> backward(const MlpModel& model, const RateDataset& data,
                                        std::span<const std::size_t> indices) {
    if (indices.empty()) throw DomainError("backward: empty batch");
    MlpModel g;
    const double inv_n = 1.0 / static_cast<double>(indices.size());
    for (auto idx : indices) {
        const auto& x = data.features[idx];
        std::array<double, kHidden> z{};
        double out = model.b_out;
        for (std::size_t j = 0; j < kHidden; ++j) {
            z[j] = model.b_hidden[j];
            for (std::size_t i = 0; i < kInputs; ++i) z[j] += model.w_hidden[j][i] * x[i];
            out += model.w_out[j] * std::max(0.0, z[j]);
        }
        const double d_out = 2.0 * (out - data.labels[idx]) * inv_n;
        g.b_out += d_out;
        for (std::size_t j = 0; j < kHidden; ++j) {
            if (z[j] <= 0.0) continue;
            g.w_out[j] += d_out * z[j];
            const double d_z = d_out * model.w_out[j];
            g.b_hidden[j] += d_z;
            for (std::size_t i = 0; i < kInputs; ++i) g.w_hidden[j][i] += d_z * x[i];
        }
    }
    return g.params();
}

void SweepSpec::validate() const {
    if (thetas.empty() || pi_alices.empty() || pfas.empty()) throw DomainError("sweep: empty axis");
    for (double t : thetas)
        if (!(t > 0.0)) throw DomainError("sweep: theta must be > 0");
    for (double p : pi_alices)
        if (!(p > 0.0 && p <= 1.0)) throw DomainError("sweep: pi_alice must lie in (0,1]");
    for (double p : pfas)
        if (!(p >= 0.0 && p < 1.0)) throw DomainError("sweep: pfa must lie in [0,1)");
    if (a_per_point < 1) throw DomainError("sweep: a_per_point must be >= 1");
    if (!(a_lo >= 0.0 && a_lo <= a_hi)) throw DomainError("sweep: need 0 <= a_lo <= a_hi");
    if (!(scale > 0.0) || !(delta_f > 0.0) || !(ts > 0.0)) throw DomainError("sweep: scale, delta_f, ts must be > 0");
    if (grid_points < 2) throw DomainError("sweep: grid_points must be >= 2");
}

namespace {

EcContext label_context(const SweepSpec& spec, const Features& x) {
    EcContext ctx;
    ctx.priors.pi_alice = x[3];
    ctx.pfa = x[2];
    ctx.alice = {x[1], spec.scale};
    ctx.eve = ctx.alice;
    ctx.delta_f = spec.delta_f;
    ctx.qos = {x[0], spec.ts};
    return ctx;
}

Features sample_features(const SweepSpec& spec, std::size_t k, std::uint64_t seed) {
    const std::size_t n_a = spec.a_per_point;
    const std::size_t n_pfa = spec.pfas.size();
    const std::size_t n_pi = spec.pi_alices.size();
    const std::size_t point = k / n_a;
    const double theta = spec.thetas[point / (n_pi * n_pfa)];
    const double pi_alice = spec.pi_alices[(point / n_pfa) % n_pi];
    const double pfa = spec.pfas[point % n_pfa];
    CounterRng rng(seed, k);
    return {theta, rng.uniform(spec.a_lo, spec.a_hi), pfa, pi_alice};
}

struct LabelOutcome {
    Features x{};
    double label = 0.0;
    bool ok = false;
    std::string message;
};

LabelOutcome label_sample(const SweepSpec& spec, const GdConfig& gd, std::size_t k, std::uint64_t seed) {
    LabelOutcome out;
    out.x = sample_features(spec, k, seed);
    try {
        const auto ctx = label_context(spec, out.x);
        const auto trace = gd_optimize(gd, ctx.rate_problem());
        if (!trace.converged) {
            out.message = "sample " + std::to_string(k) + ": gradient descent did not converge";
            return out;
        }
        const auto oracle = reference::grid_search_rate(0.0, rate_search_upper(ctx.alice, ctx.delta_f),
                                                        spec.grid_points, ctx);
        if (std::fabs(trace.r_star - oracle.r_star) > oracle.step) {
            out.message = "sample " + std::to_string(k) + ": label disagrees with grid oracle";
            return out;
        }
        out.label = trace.r_star;
        out.ok = true;
    } catch (const NumericError& e) {
        out.message = "sample " + std::to_string(k) + ": " + e.what();
    }
    return out;
}

}  // namespace

double optimal_rate_label(const SweepSpec& spec, const GdConfig& gd, const Features& x) {
    const auto trace = gd_optimize(gd, label_context(spec, x).rate_problem());
    if (!trace.converged) throw ConvergenceError("optimal_rate_label: gradient descent did not converge");
    return trace.r_star;
}

DatasetReport generate_dataset(const SweepSpec& spec, const GdConfig& gd, std::uint64_t seed) {
    spec.validate();
    gd.validate();
    const long n = static_cast<long>(spec.size());
    std::vector<LabelOutcome> outcomes(spec.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 0; k < n; ++k) {
        outcomes[static_cast<std::size_t>(k)] = label_sample(spec, gd, static_cast<std::size_t>(k), seed);
    }
    DatasetReport rep;
    for (auto& o : outcomes) {
        if (o.ok) {
            rep.data.features.push_back(o.x);
            rep.data.labels.push_back(o.label);
        } else {
            ++rep.dropped;
            rep.messages.push_back(std::move(o.message));
        }
    }
    return rep;
}

namespace reference {

DatasetReport generate_dataset(const SweepSpec& spec, const GdConfig& gd, std::uint64_t seed) {
    spec.validate();
    gd.validate();
    DatasetReport rep;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        auto o = label_sample(spec, gd, k, seed);
        if (o.ok) {
            rep.data.features.push_back(o.x);
            rep.data.labels.push_back(o.label);
        } else {
            ++rep.dropped;
            rep.messages.push_back(std::move(o.message));
        }
    }
    return rep;
}

}  // namespace reference

void TrainConfig::validate() const {
    if (!(lr0 > 0.0)) throw DomainError("train: lr0 must be > 0");
    if (!(split > 0.0 && split < 1.0)) throw DomainError("train: split must lie in (0,1)");
    if (epochs < 1) throw DomainError("train: epochs must be >= 1");
    if (lr_decay_every < 1) throw DomainError("train: lr_decay_every must be >= 1");
    if (!(lr_decay_factor >= 1.0)) throw DomainError("train: lr_decay_factor must be >= 1");
}

double TrainConfig::learning_rate(std::size_t epoch) const {
    return lr0 / std::pow(lr_decay_factor, static_cast<double>(epoch / lr_decay_every));
}

namespace {

void shuffle(std::vector<std::size_t>& v, CounterRng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
        std::swap(v[i - 1], v[std::min(j, i - 1)]);
    }
}

struct Standardizer {
    Features mean{};
    Features sd{};
    double y_mean = 0.0;
    double y_sd = 1.0;
};

Standardizer fit_standardizer(const RateDataset& data, const std::vector<std::size_t>& idx) {
    Standardizer s;
    const double n = static_cast<double>(idx.size());
    for (auto i : idx) {
        for (std::size_t c = 0; c < kInputs; ++c) s.mean[c] += data.features[i][c];
        s.y_mean += data.labels[i];
    }
    for (double& m : s.mean) m /= n;
    s.y_mean /= n;
    Features var{};
    double y_var = 0.0;
    for (auto i : idx) {
        for (std::size_t c = 0; c < kInputs; ++c) {
            const double d = data.features[i][c] - s.mean[c];
            var[c] += d * d;
        }
        y_var += (data.labels[i] - s.y_mean) * (data.labels[i] - s.y_mean);
    }
    // Constant columns keep unit scale.
    for (std::size_t c = 0; c < kInputs; ++c) s.sd[c] = var[c] > 0.0 ? std::sqrt(var[c] / n) : 1.0;
    s.y_sd = y_var > 0.0 ? std::sqrt(y_var / n) : 1.0;
    return s;
}

MlpModel fold(const MlpModel& m, const Standardizer& s) {
    MlpModel out;
    for (std::size_t j = 0; j < kHidden; ++j) {
        double shift = m.b_hidden[j];
        for (std::size_t i = 0; i < kInputs; ++i) {
            out.w_hidden[j][i] = m.w_hidden[j][i] / s.sd[i];
            shift -= m.w_hidden[j][i] * s.mean[i] / s.sd[i];
        }
        out.b_hidden[j] = shift;
        out.w_out[j] = s.y_sd * m.w_out[j];
    }
    out.b_out = s.y_sd * m.b_out + s.y_mean;
    return out;
}

}  // namespace

TrainResult train(const MlpModel& init, const RateDataset& data, const TrainConfig& cfg) {
    cfg.validate();
    data.validate();
    init.validate();
    if (data.size() < 10) throw DomainError("train: dataset must hold at least 10 samples");

    TrainResult res;
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    CounterRng split_rng(cfg.seed, 0);
    shuffle(order, split_rng);
    auto n_train = static_cast<std::size_t>(std::llround(cfg.split * static_cast<double>(data.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, data.size() - 1);
    res.train_indices.assign(order.begin(), order.begin() + static_cast<long>(n_train));
    res.val_indices.assign(order.begin() + static_cast<long>(n_train), order.end());

    const auto st = fit_standardizer(data, res.train_indices);
    RateDataset z;
    z.features.reserve(data.size());
    for (std::size_t k = 0; k < data.size(); ++k) {
        Features f{};
        for (std::size_t c = 0; c < kInputs; ++c) f[c] = (data.features[k][c] - st.mean[c]) / st.sd[c];
        z.features.push_back(f);
        z.labels.push_back((data.labels[k] - st.y_mean) / st.y_sd);
    }

    auto params = init.params();
    const std::size_t batch = cfg.batch_size == 0 ? n_train : std::min(cfg.batch_size, n_train);
    const double label_scale = st.y_sd * st.y_sd;
    std::vector<std::size_t> epoch_order = res.train_indices;
    for (std::size_t e = 0; e < cfg.epochs; ++e) {
        const double lr = cfg.learning_rate(e);
        CounterRng rng(cfg.seed, 1 + e);
        shuffle(epoch_order, rng);
        for (std::size_t start = 0; start < n_train; start += batch) {
            const std::size_t len = std::min(batch, n_train - start);
            const auto model = MlpModel::from_params(params);
            const auto grad = backward(model, z, std::span<const std::size_t>(epoch_order.data() + start, len));
            for (std::size_t k = 0; k < kNumParams; ++k) params[k] -= lr * grad[k];
        }
        const auto model = MlpModel::from_params(params);
        const double train_mse = loss(model, z, res.train_indices) * label_scale;
        const double val_mse = loss(model, z, res.val_indices) * label_scale;
        if (!std::isfinite(train_mse)) throw DivergenceError("train: training loss became non-finite");
        res.history.push_back({e, lr, train_mse, val_mse});
    }
    res.model = fold(MlpModel::from_params(params), st);
    return res;
}

TrainResult train(const RateDataset& data, const TrainConfig& cfg) {
    CounterRng rng(cfg.seed, 0x1417);
    return train(MlpModel::random(rng), data, cfg);
}

std::string serialize_model(const MlpModel& model) {
    std::string out = "4 4 1\n";
    for (double v : model.params()) out += format_double(v) + "\n";
    return out;
}

MlpModel parse_model(const std::string& text) {
    std::istringstream in(text);
    std::size_t a = 0, b = 0, c = 0;
    if (!(in >> a >> b >> c) || a != kInputs || b != kHidden || c != 1) {
        throw ConfigError("model: header must read '4 4 1'");
    }
    std::vector<double> p;
    std::string tok;
    while (in >> tok) p.push_back(parse_double(tok));
    if (p.size() != kNumParams) throw ConfigError("model: expected 25 parameters");
    auto m = MlpModel::from_params(p);
    m.validate();
    return m;
}

void save_model(const std::string& path, const MlpModel& model) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << serialize_model(model);
}

MlpModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

void save_dataset(const std::string& path, const RateDataset& data) {
    CsvWriter w(path, {"theta", "a", "pfa", "pi_alice", "r_star"});
    for (std::size_t k = 0; k < data.size(); ++k) {
        for (double v : data.features[k]) w.cell(v);
        w.cell(data.labels[k]);
        w.end_row();
    }
}

RateDataset load_dataset(const std::string& path) {
    const auto t = read_csv(path);
    const auto theta = t.numeric("theta");
    const auto a = t.numeric("a");
    const auto pfa = t.numeric("pfa");
    const auto pi = t.numeric("pi_alice");
    const auto r = t.numeric("r_star");
    RateDataset d;
    for (std::size_t k = 0; k < r.size(); ++k) {
        d.features.push_back({theta[k], a[k], pfa[k], pi[k]});
        d.labels.push_back(r[k]);
    }
    d.validate();
    return d;
}

}  // namespace authec
