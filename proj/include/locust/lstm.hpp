#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "locust/dataset.hpp"
#include "locust/mat.hpp"

namespace locust {

struct ModelConfig {
    int input_dim = kFeatureDim;
    int hidden_dim = 32;
    // The recurrence's final line reads h_t = o_t * c_t, with no tanh on the
    // cell state. True follows that form; false uses h_t = o_t * tanh(c_t),
    // the common variant, for comparison runs.
    bool raw_hidden_update = true;

    void validate() const;

    bool operator==(const ModelConfig&) const = default;
};

// Gate weights: W_* act on the previous hidden state, U_* on the input,
// b_* are biases; W_p/b_p form the linear readout of the final hidden state.
struct ModelParams {
    Mat W_i, W_f, W_o, W_c;  // hidden x hidden
    Mat U_i, U_f, U_o, U_c;  // hidden x input
    Vec b_i, b_f, b_o, b_c;  // hidden
    Vec W_p;                 // hidden (1 x hidden readout row)
    double b_p = 0.0;

    static ModelParams zeros(const ModelConfig& config);
    bool same_shape(const ModelParams& o) const;
    bool all_finite() const;
};

// Gradients share the parameter layout.
using ParamGrads = ModelParams;

struct CellState {
    Vec h;
    Vec c;
};

struct GateRecord {
    Vec i, f, o, c_tilde;
};

struct StepTrace {
    Vec x;
    GateRecord gates;
    Vec c;
    Vec h;
};

struct ForwardTrace {
    std::vector<StepTrace> steps;
    double z = 0.0;
};

// Weights uniform in [-1/sqrt(hidden), +1/sqrt(hidden)] from the seeded
// generator; biases zero except the forget gate's, which starts at 1.
ModelParams init_params(const ModelConfig& config, std::uint64_t seed);

CellState zero_state(const ModelConfig& config);

// One step of the cell recurrence. Throws on shape mismatch or non-finite
// input.
std::pair<CellState, GateRecord> cell_forward(const Vec& x, const CellState& prev,
                                              const ModelParams& params,
                                              const ModelConfig& config);

// Full sequence pass from zero state; z = W_p . h_T + b_p, unconstrained.
ForwardTrace forward(const std::vector<Vec>& inputs, const ModelParams& params,
                     const ModelConfig& config);

double predict(const std::vector<Vec>& inputs, const ModelParams& params,
               const ModelConfig& config);

// A sample's input steps in the model's Vec form.
std::vector<Vec> input_steps(const SequenceSample& sample);

// Exact gradients of (dloss_dz * z) w.r.t. every parameter, by
// backpropagation through time over the recorded trace.
ParamGrads backward(const ForwardTrace& trace, double dloss_dz, const ModelParams& params,
                    const ModelConfig& config);

// Checkpoint layout (little-endian): magic "LCKP", u32 version, u32
// input_dim, u32 hidden_dim, u32 flags (bit 0 = raw hidden update), u32
// feature schema version, then norm stats (input_dim means, input_dim stds)
// and parameters W_i W_f W_o W_c U_i U_f U_o U_c b_i b_f b_o b_c W_p b_p,
// row-major f64 throughout.
struct Checkpoint {
    ModelConfig config;
    ModelParams params;
    NormStats norm;
    std::uint32_t schema_version = kFeatureSchemaVersion;
};

void save_checkpoint(std::ostream& out, const Checkpoint& ckpt);
Checkpoint load_checkpoint(std::istream& in);

}  // namespace locust
