#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "locust/lstm.hpp"

namespace locust {

struct AdamHyper {
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    // Global-norm gradient clip; nullopt disables clipping.
    std::optional<double> clip_norm = 5.0;

    void validate() const;

    bool operator==(const AdamHyper&) const = default;
};

struct AdamState {
    ParamGrads m;  // first moments
    ParamGrads v;  // second moments
    long t = 0;    // completed steps

    static AdamState zeros(const ModelConfig& config);
};

// loss = mean squared difference; grads[i] = 2 * (pred[i] - target[i]) / N.
std::pair<double, std::vector<double>> mse_loss(const std::vector<double>& predictions,
                                                const std::vector<double>& targets);

// One bias-corrected Adam update, in place. Gradients are globally
// norm-clipped first when clip_norm is set. Non-finite gradients throw
// DivergenceError.
void adam_step(ModelParams& params, const ParamGrads& grads, AdamState& state,
               const AdamHyper& hyper);

enum class SelectionMetric { ValidationMse = 0 };

struct TrainConfig {
    int epochs = 50;
    int batch_size = 64;
    std::uint64_t seed = 0;
    SelectionMetric selection = SelectionMetric::ValidationMse;

    void validate() const;

    bool operator==(const TrainConfig&) const = default;
};

struct TrainHistory {
    std::vector<double> train_mse;  // one entry per epoch
    std::vector<double> val_mse;    // NaN entries when the validation set is empty
    int selected_epoch = -1;
};

struct TrainResult {
    ModelParams best_params;
    TrainHistory history;
};

// Epoch loop: seeded shuffle, per-sample forward + BPTT, batch-mean
// gradients, Adam update, then validation MSE. Returns the parameters of
// the epoch with the lowest validation MSE; with an empty validation set it
// falls back to the final epoch and emits a warning on warnings (when
// non-null). Fully deterministic for a fixed seed.
TrainResult train(const std::vector<SequenceSample>& train_samples,
                  const std::vector<SequenceSample>& val_samples, const ModelConfig& model_config,
                  const TrainConfig& train_config, const AdamHyper& hyper,
                  std::ostream* progress = nullptr);

// Mean squared error of predictions over a sample set.
double dataset_mse(const std::vector<SequenceSample>& samples, const ModelParams& params,
                   const ModelConfig& config);

// History CSV: header epoch,train_mse,val_mse then one row per epoch.
void write_history(std::ostream& out, const TrainHistory& history);

}  // namespace locust
