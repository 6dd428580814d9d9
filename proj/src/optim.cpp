#include "locust/optim.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "locust/rng.hpp"

namespace locust {

namespace {

struct Block {
    double* data;
    std::size_t size;
};

std::vector<Block> param_blocks(ModelParams& p) {
    return {
        {p.W_i.a.data(), p.W_i.a.size()}, {p.W_f.a.data(), p.W_f.a.size()},
        {p.W_o.a.data(), p.W_o.a.size()}, {p.W_c.a.data(), p.W_c.a.size()},
        {p.U_i.a.data(), p.U_i.a.size()}, {p.U_f.a.data(), p.U_f.a.size()},
        {p.U_o.a.data(), p.U_o.a.size()}, {p.U_c.a.data(), p.U_c.a.size()},
        {p.b_i.data(), p.b_i.size()},     {p.b_f.data(), p.b_f.size()},
        {p.b_o.data(), p.b_o.size()},     {p.b_c.data(), p.b_c.size()},
        {p.W_p.data(), p.W_p.size()},     {&p.b_p, 1},
    };
}

std::vector<Block> param_blocks(const ModelParams& p) {
    return param_blocks(const_cast<ModelParams&>(p));
}

void add_scaled(ParamGrads& dst, const ParamGrads& src, double scale) {
    auto d = param_blocks(dst);
    auto s = param_blocks(src);
    for (std::size_t b = 0; b < d.size(); ++b) {
        for (std::size_t i = 0; i < d[b].size; ++i) d[b].data[i] += scale * s[b].data[i];
    }
}

std::string format_mse(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void AdamHyper::validate() const {
    if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
    if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0) {
        throw ConfigError("Adam betas must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) throw ConfigError("Adam epsilon must be positive");
    if (clip_norm && !(*clip_norm > 0.0)) {
        throw ConfigError("clip norm must be positive when set");
    }
}

AdamState AdamState::zeros(const ModelConfig& config) {
    AdamState s;
    s.m = ModelParams::zeros(config);
    s.v = ModelParams::zeros(config);
    s.t = 0;
    return s;
}

std::pair<double, std::vector<double>> mse_loss(const std::vector<double>& predictions,
                                                const std::vector<double>& targets) {
    if (predictions.empty() || predictions.size() != targets.size()) {
        throw DataError("mse_loss requires equal, nonzero-length prediction and target lists");
    }
    const double n = static_cast<double>(predictions.size());
    double loss = 0.0;
    std::vector<double> grads(predictions.size());
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double diff = predictions[i] - targets[i];
        loss += diff * diff;
        grads[i] = 2.0 * diff / n;
    }
    return {loss / n, std::move(grads)};
}

void adam_step(ModelParams& params, const ParamGrads& grads, AdamState& state,
               const AdamHyper& hyper) {
    hyper.validate();
    if (!params.same_shape(grads) || !params.same_shape(state.m)) {
        throw DataError("adam_step: parameter, gradient, and state shapes disagree");
    }

    auto g_blocks = param_blocks(grads);
    double sq_norm = 0.0;
    for (const Block& b : g_blocks) {
        for (std::size_t i = 0; i < b.size; ++i) {
            const double g = b.data[i];
            if (!std::isfinite(g)) {
                throw DivergenceError("adam_step: non-finite gradient encountered");
            }
            sq_norm += g * g;
        }
    }
    double scale = 1.0;
    if (hyper.clip_norm) {
        const double norm = std::sqrt(sq_norm);
        if (norm > *hyper.clip_norm) scale = *hyper.clip_norm / norm;
    }

    state.t += 1;
    const double bc1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(state.t));

    auto p_blocks = param_blocks(params);
    auto m_blocks = param_blocks(state.m);
    auto v_blocks = param_blocks(state.v);
    for (std::size_t b = 0; b < p_blocks.size(); ++b) {
        for (std::size_t i = 0; i < p_blocks[b].size; ++i) {
            const double g = g_blocks[b].data[i] * scale;
            double& m = m_blocks[b].data[i];
            double& v = v_blocks[b].data[i];
            m = hyper.beta1 * m + (1.0 - hyper.beta1) * g;
            v = hyper.beta2 * v + (1.0 - hyper.beta2) * g * g;
            const double m_hat = m / bc1;
            const double v_hat = v / bc2;
            p_blocks[b].data[i] -= hyper.learning_rate * m_hat / (std::sqrt(v_hat) + hyper.epsilon);
        }
    }
}

void TrainConfig::validate() const {
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("batch size must be >= 1");
}

double dataset_mse(const std::vector<SequenceSample>& samples, const ModelParams& params,
                   const ModelConfig& config) {
    if (samples.empty()) throw DataError("dataset_mse on an empty sample set");
    double sum = 0.0;
    for (const auto& s : samples) {
        const double diff = predict(input_steps(s), params, config) - s.target;
        sum += diff * diff;
    }
    return sum / static_cast<double>(samples.size());
}

TrainResult train(const std::vector<SequenceSample>& train_samples,
                  const std::vector<SequenceSample>& val_samples, const ModelConfig& model_config,
                  const TrainConfig& train_config, const AdamHyper& hyper,
                  std::ostream* progress) {
    model_config.validate();
    train_config.validate();
    hyper.validate();
    if (train_samples.empty()) throw DataError("training set is empty");

    // Convert inputs once; the epoch loop reuses them.
    std::vector<std::vector<Vec>> inputs;
    inputs.reserve(train_samples.size());
    for (const auto& s : train_samples) inputs.push_back(input_steps(s));
    std::vector<std::vector<Vec>> val_inputs;
    val_inputs.reserve(val_samples.size());
    for (const auto& s : val_samples) val_inputs.push_back(input_steps(s));

    ModelParams params = init_params(model_config, train_config.seed);
    AdamState state = AdamState::zeros(model_config);

    TrainResult result;
    result.best_params = params;
    double best_val = std::numeric_limits<double>::infinity();
    const std::size_t n = train_samples.size();

    for (int epoch = 0; epoch < train_config.epochs; ++epoch) {
        const auto epoch_batches =
            batches(n, static_cast<std::size_t>(train_config.batch_size),
                    mix_seed(train_config.seed, static_cast<std::uint64_t>(epoch)));

        double epoch_loss_sum = 0.0;
        std::size_t batch_no = 0;
        for (const auto& batch : epoch_batches) {
            std::vector<ForwardTrace> traces;
            traces.reserve(batch.size());
            std::vector<double> preds, targets;
            preds.reserve(batch.size());
            targets.reserve(batch.size());
            for (std::size_t idx : batch) {
                traces.push_back(forward(inputs[idx], params, model_config));
                preds.push_back(traces.back().z);
                targets.push_back(train_samples[idx].target);
            }
            auto [loss, dpreds] = mse_loss(preds, targets);
            if (!std::isfinite(loss)) {
                throw DivergenceError("training diverged: non-finite loss at epoch " +
                                      std::to_string(epoch) + ", batch " +
                                      std::to_string(batch_no));
            }
            // Per-sample dL/dz already carry the 1/N factor, so summing the
            // per-sample gradients yields the batch-mean gradient.
            ParamGrads grads = ModelParams::zeros(model_config);
            for (std::size_t i = 0; i < batch.size(); ++i) {
                add_scaled(grads, backward(traces[i], dpreds[i], params, model_config), 1.0);
            }
            try {
                adam_step(params, grads, state, hyper);
            } catch (const DivergenceError& e) {
                throw DivergenceError(std::string(e.what()) + " (epoch " + std::to_string(epoch) +
                                      ", batch " + std::to_string(batch_no) + ")");
            }
            epoch_loss_sum += loss * static_cast<double>(batch.size());
            ++batch_no;
        }
        const double train_mse = epoch_loss_sum / static_cast<double>(n);
        result.history.train_mse.push_back(train_mse);

        double val_mse = std::numeric_limits<double>::quiet_NaN();
        if (!val_samples.empty()) {
            double sum = 0.0;
            for (std::size_t i = 0; i < val_samples.size(); ++i) {
                const double diff =
                    predict(val_inputs[i], params, model_config) - val_samples[i].target;
                sum += diff * diff;
            }
            val_mse = sum / static_cast<double>(val_samples.size());
            if (!std::isfinite(val_mse)) {
                throw DivergenceError("validation MSE non-finite at epoch " +
                                      std::to_string(epoch));
            }
            if (val_mse < best_val) {
                best_val = val_mse;
                result.best_params = params;
                result.history.selected_epoch = epoch;
            }
        }
        result.history.val_mse.push_back(val_mse);
        if (progress) {
            *progress << "epoch " << epoch << " train_mse " << train_mse << " val_mse " << val_mse
                      << '\n';
        }
    }

    if (val_samples.empty()) {
        if (progress) {
            *progress << "warning: empty validation set; selecting the final epoch\n";
        }
        result.best_params = params;
        result.history.selected_epoch = train_config.epochs - 1;
    }
    return result;
}

void write_history(std::ostream& out, const TrainHistory& history) {
    out << "epoch,train_mse,val_mse\n";
    for (std::size_t e = 0; e < history.train_mse.size(); ++e) {
        out << e << ',' << format_mse(history.train_mse[e]) << ','
            << format_mse(history.val_mse[e]) << '\n';
    }
}

}  // namespace locust
