#include "locust/lstm.hpp"

#include <cmath>
#include <cstring>

#include "locust/binio.hpp"
#include "locust/rng.hpp"

namespace locust {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

bool finite_vec(const Vec& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

void ModelConfig::validate() const {
    if (input_dim < 1 || hidden_dim < 1) {
        throw ConfigError("model dimensions must be >= 1");
    }
}

ModelParams ModelParams::zeros(const ModelConfig& config) {
    config.validate();
    const auto h = static_cast<std::size_t>(config.hidden_dim);
    const auto in = static_cast<std::size_t>(config.input_dim);
    ModelParams p;
    p.W_i = p.W_f = p.W_o = p.W_c = Mat(h, h);
    p.U_i = p.U_f = p.U_o = p.U_c = Mat(h, in);
    p.b_i = p.b_f = p.b_o = p.b_c = Vec(h, 0.0);
    p.W_p = Vec(h, 0.0);
    p.b_p = 0.0;
    return p;
}

bool ModelParams::same_shape(const ModelParams& o) const {
    return W_i.same_shape(o.W_i) && U_i.same_shape(o.U_i) && b_i.size() == o.b_i.size() &&
           W_p.size() == o.W_p.size();
}

bool ModelParams::all_finite() const {
    for (const Mat* m : {&W_i, &W_f, &W_o, &W_c, &U_i, &U_f, &U_o, &U_c}) {
        if (!finite_vec(m->a)) return false;
    }
    for (const Vec* v : {&b_i, &b_f, &b_o, &b_c, &W_p}) {
        if (!finite_vec(*v)) return false;
    }
    return std::isfinite(b_p);
}

ModelParams init_params(const ModelConfig& config, std::uint64_t seed) {
    ModelParams p = ModelParams::zeros(config);
    Rng rng(seed);
    const double bound = 1.0 / std::sqrt(static_cast<double>(config.hidden_dim));
    for (Mat* m : {&p.W_i, &p.W_f, &p.W_o, &p.W_c, &p.U_i, &p.U_f, &p.U_o, &p.U_c}) {
        for (double& w : m->a) w = rng.uniform(-bound, bound);
    }
    for (double& w : p.W_p) w = rng.uniform(-bound, bound);
    // Forget-gate bias starts at 1 so early training retains cell state.
    for (double& b : p.b_f) b = 1.0;
    return p;
}

CellState zero_state(const ModelConfig& config) {
    const auto h = static_cast<std::size_t>(config.hidden_dim);
    return CellState{Vec(h, 0.0), Vec(h, 0.0)};
}

std::pair<CellState, GateRecord> cell_forward(const Vec& x, const CellState& prev,
                                              const ModelParams& params,
                                              const ModelConfig& config) {
    const auto h = static_cast<std::size_t>(config.hidden_dim);
    const auto in = static_cast<std::size_t>(config.input_dim);
    if (x.size() != in || prev.h.size() != h || prev.c.size() != h ||
        params.W_i.rows != h || params.W_i.cols != h || params.U_i.rows != h ||
        params.U_i.cols != in) {
        throw DataError("cell_forward: shape mismatch between input, state, and parameters");
    }
    if (!finite_vec(x)) throw DataError("cell_forward: non-finite input");

    GateRecord g;
    g.i = params.b_i;
    g.f = params.b_f;
    g.o = params.b_o;
    g.c_tilde = params.b_c;
    matvec_add(params.W_i, prev.h, g.i);
    matvec_add(params.U_i, x, g.i);
    matvec_add(params.W_f, prev.h, g.f);
    matvec_add(params.U_f, x, g.f);
    matvec_add(params.W_o, prev.h, g.o);
    matvec_add(params.U_o, x, g.o);
    matvec_add(params.W_c, prev.h, g.c_tilde);
    matvec_add(params.U_c, x, g.c_tilde);

    CellState next;
    next.c.resize(h);
    next.h.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        g.i[j] = sigmoid(g.i[j]);
        g.f[j] = sigmoid(g.f[j]);
        g.o[j] = sigmoid(g.o[j]);
        g.c_tilde[j] = std::tanh(g.c_tilde[j]);
        next.c[j] = g.i[j] * g.c_tilde[j] + g.f[j] * prev.c[j];
        next.h[j] = config.raw_hidden_update ? g.o[j] * next.c[j]
                                                      : g.o[j] * std::tanh(next.c[j]);
    }
    return {std::move(next), std::move(g)};
}

ForwardTrace forward(const std::vector<Vec>& inputs, const ModelParams& params,
                     const ModelConfig& config) {
    ForwardTrace trace;
    trace.steps.reserve(inputs.size());
    CellState state = zero_state(config);
    for (const Vec& x : inputs) {
        auto [next, gates] = cell_forward(x, state, params, config);
        StepTrace st;
        st.x = x;
        st.gates = std::move(gates);
        st.c = next.c;
        st.h = next.h;
        trace.steps.push_back(std::move(st));
        state = std::move(next);
    }
    double z = params.b_p;
    for (std::size_t j = 0; j < state.h.size(); ++j) z += params.W_p[j] * state.h[j];
    trace.z = z;
    return trace;
}

double predict(const std::vector<Vec>& inputs, const ModelParams& params,
               const ModelConfig& config) {
    return forward(inputs, params, config).z;
}

std::vector<Vec> input_steps(const SequenceSample& sample) {
    std::vector<Vec> steps;
    steps.reserve(sample.inputs.size());
    for (const auto& x : sample.inputs) steps.emplace_back(x.begin(), x.end());
    return steps;
}

ParamGrads backward(const ForwardTrace& trace, double dloss_dz, const ModelParams& params,
                    const ModelConfig& config) {
    const auto h = static_cast<std::size_t>(config.hidden_dim);
    if (params.W_i.rows != h || params.W_p.size() != h) {
        throw DataError("backward: trace and parameters disagree on hidden dim");
    }
    for (const StepTrace& st : trace.steps) {
        if (st.h.size() != h || st.x.size() != static_cast<std::size_t>(config.input_dim)) {
            throw DataError("backward: trace shapes do not match parameters");
        }
    }

    ParamGrads grads = ModelParams::zeros(config);
    const std::size_t T = trace.steps.size();

    Vec dh(h, 0.0), dc(h, 0.0);
    if (T > 0) {
        const Vec& h_last = trace.steps[T - 1].h;
        grads.b_p = dloss_dz;
        for (std::size_t j = 0; j < h; ++j) {
            grads.W_p[j] = dloss_dz * h_last[j];
            dh[j] = dloss_dz * params.W_p[j];
        }
    } else {
        grads.b_p = dloss_dz;  // z = b_p for an empty sequence
    }

    Vec da_i(h), da_f(h), da_o(h), da_c(h);
    const Vec zero(h, 0.0);
    for (std::size_t t = T; t-- > 0;) {
        const StepTrace& st = trace.steps[t];
        const Vec& c_prev = t > 0 ? trace.steps[t - 1].c : zero;
        const Vec& h_prev = t > 0 ? trace.steps[t - 1].h : zero;
        const GateRecord& g = st.gates;

        for (std::size_t j = 0; j < h; ++j) {
            double do_j, dc_j;
            if (config.raw_hidden_update) {
                do_j = dh[j] * st.c[j];
                dc_j = dc[j] + dh[j] * g.o[j];
            } else {
                const double tc = std::tanh(st.c[j]);
                do_j = dh[j] * tc;
                dc_j = dc[j] + dh[j] * g.o[j] * (1.0 - tc * tc);
            }
            const double di_j = dc_j * g.c_tilde[j];
            const double dct_j = dc_j * g.i[j];
            const double df_j = dc_j * c_prev[j];

            da_i[j] = di_j * g.i[j] * (1.0 - g.i[j]);
            da_f[j] = df_j * g.f[j] * (1.0 - g.f[j]);
            da_o[j] = do_j * g.o[j] * (1.0 - g.o[j]);
            da_c[j] = dct_j * (1.0 - g.c_tilde[j] * g.c_tilde[j]);

            dc[j] = dc_j * g.f[j];  // flows to step t-1
        }

        outer_add(grads.W_i, da_i, h_prev);
        outer_add(grads.W_f, da_f, h_prev);
        outer_add(grads.W_o, da_o, h_prev);
        outer_add(grads.W_c, da_c, h_prev);
        outer_add(grads.U_i, da_i, st.x);
        outer_add(grads.U_f, da_f, st.x);
        outer_add(grads.U_o, da_o, st.x);
        outer_add(grads.U_c, da_c, st.x);
        axpy(1.0, da_i, grads.b_i);
        axpy(1.0, da_f, grads.b_f);
        axpy(1.0, da_o, grads.b_o);
        axpy(1.0, da_c, grads.b_c);

        std::fill(dh.begin(), dh.end(), 0.0);
        matvec_transpose_add(params.W_i, da_i, dh);
        matvec_transpose_add(params.W_f, da_f, dh);
        matvec_transpose_add(params.W_o, da_o, dh);
        matvec_transpose_add(params.W_c, da_c, dh);
    }
    return grads;
}

namespace {
constexpr char kCkptMagic[4] = {'L', 'C', 'K', 'P'};
constexpr std::uint32_t kCkptVersion = 1;
}  // namespace

void save_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
    out.write(kCkptMagic, 4);
    put_u32_le(out, kCkptVersion);
    put_u32_le(out, static_cast<std::uint32_t>(ckpt.config.input_dim));
    put_u32_le(out, static_cast<std::uint32_t>(ckpt.config.hidden_dim));
    put_u32_le(out, ckpt.config.raw_hidden_update ? 1u : 0u);
    put_u32_le(out, ckpt.schema_version);
    for (int d = 0; d < ckpt.config.input_dim; ++d) put_f64_le(out, ckpt.norm.mean[d]);
    for (int d = 0; d < ckpt.config.input_dim; ++d) put_f64_le(out, ckpt.norm.std[d]);
    const ModelParams& p = ckpt.params;
    for (const Mat* m : {&p.W_i, &p.W_f, &p.W_o, &p.W_c, &p.U_i, &p.U_f, &p.U_o, &p.U_c}) {
        for (double v : m->a) put_f64_le(out, v);
    }
    for (const Vec* v : {&p.b_i, &p.b_f, &p.b_o, &p.b_c, &p.W_p}) {
        for (double w : *v) put_f64_le(out, w);
    }
    put_f64_le(out, p.b_p);
}

Checkpoint load_checkpoint(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kCkptMagic, 4) != 0) {
        throw DataError("checkpoint: bad magic bytes");
    }
    const std::uint32_t version = get_u32_le(in, "checkpoint version");
    if (version != kCkptVersion) {
        throw DataError("checkpoint: unsupported version " + std::to_string(version));
    }
    Checkpoint ckpt;
    ckpt.config.input_dim = static_cast<int>(get_u32_le(in, "checkpoint input_dim"));
    ckpt.config.hidden_dim = static_cast<int>(get_u32_le(in, "checkpoint hidden_dim"));
    ckpt.config.raw_hidden_update = (get_u32_le(in, "checkpoint flags") & 1u) != 0;
    ckpt.schema_version = get_u32_le(in, "checkpoint schema version");
    ckpt.config.validate();
    if (ckpt.config.input_dim > kFeatureDim) {
        throw DataError("checkpoint: input_dim exceeds the feature schema width");
    }

    // Remaining payload has a fixed size; diagnose truncation up front.
    const auto h = static_cast<std::size_t>(ckpt.config.hidden_dim);
    const auto d = static_cast<std::size_t>(ckpt.config.input_dim);
    const std::size_t n_doubles = 2 * d + 4 * h * h + 4 * h * d + 4 * h + h + 1;
    const std::streampos here = in.tellg();
    in.seekg(0, std::ios::end);
    const std::streampos end = in.tellg();
    in.seekg(here);
    if (here >= 0 && end >= 0) {
        const auto remaining = static_cast<std::size_t>(end - here);
        if (remaining != n_doubles * 8) {
            throw DataError("checkpoint: expected " + std::to_string(n_doubles * 8) +
                            " payload bytes, found " + std::to_string(remaining));
        }
    }

    for (std::size_t i = 0; i < d; ++i) ckpt.norm.mean[i] = get_f64_le(in, "norm mean");
    for (std::size_t i = 0; i < d; ++i) ckpt.norm.std[i] = get_f64_le(in, "norm std");
    ckpt.params = ModelParams::zeros(ckpt.config);
    ModelParams& p = ckpt.params;
    for (Mat* m : {&p.W_i, &p.W_f, &p.W_o, &p.W_c, &p.U_i, &p.U_f, &p.U_o, &p.U_c}) {
        for (double& v : m->a) v = get_f64_le(in, "weight matrix");
    }
    for (Vec* v : {&p.b_i, &p.b_f, &p.b_o, &p.b_c, &p.W_p}) {
        for (double& w : *v) w = get_f64_le(in, "bias vector");
    }
    p.b_p = get_f64_le(in, "readout bias");
    return ckpt;
}

}  // namespace locust
