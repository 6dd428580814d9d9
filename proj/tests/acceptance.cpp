// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run with no arguments for all criteria, or --only N (repeatable) for a
// subset. Criteria 7 and 8 share a single end-to-end pipeline run.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "locust/commands.hpp"
#include "locust/rng.hpp"

using namespace locust;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double now_seconds() {
    return static_cast<double>(std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
                                   .count()) /
           1000.0;
}

std::vector<double*> all_param_pointers(ModelParams& p) {
    std::vector<double*> out;
    for (Mat* m : {&p.W_i, &p.W_f, &p.W_o, &p.W_c, &p.U_i, &p.U_f, &p.U_o, &p.U_c}) {
        for (double& v : m->a) out.push_back(&v);
    }
    for (Vec* v : {&p.b_i, &p.b_f, &p.b_o, &p.b_c, &p.W_p}) {
        for (double& w : *v) out.push_back(&w);
    }
    out.push_back(&p.b_p);
    return out;
}

// ---------------------------------------------------------------- 1
// BPTT gradients vs central finite differences, both hidden updates.
Outcome criterion_gradients() {
    const double start = now_seconds();
    double worst = 0.0;
    for (bool raw_update : {true, false}) {
        ModelConfig config;
        config.input_dim = 15;
        config.hidden_dim = 4;
        config.raw_hidden_update = raw_update;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(1000 + seed);
            ModelParams params = init_params(config, seed);
            std::vector<Vec> inputs(5, Vec(config.input_dim));
            for (auto& x : inputs) {
                for (double& v : x) v = rng.uniform(-1.5, 1.5);
            }
            const ForwardTrace trace = forward(inputs, params, config);
            ParamGrads grads = backward(trace, 1.0, params, config);
            const auto grad_ptrs = all_param_pointers(grads);
            const auto param_ptrs = all_param_pointers(params);
            const double eps = 1e-5;
            for (std::size_t i = 0; i < param_ptrs.size(); ++i) {
                double* w = param_ptrs[i];
                const double saved = *w;
                *w = saved + eps;
                const double z_plus = forward(inputs, params, config).z;
                *w = saved - eps;
                const double z_minus = forward(inputs, params, config).z;
                *w = saved;
                const double fd = (z_plus - z_minus) / (2.0 * eps);
                const double analytic = *grad_ptrs[i];
                const double denom = std::max({std::fabs(fd), std::fabs(analytic), 1e-6});
                worst = std::max(worst, std::fabs(fd - analytic) / denom);
            }
        }
    }
    const double elapsed = now_seconds() - start;
    std::ostringstream detail;
    detail << "max relative error " << worst << " over 40 models in " << elapsed << "s";
    return {worst < 1e-4 && elapsed < 60.0, detail.str()};
}

// ---------------------------------------------------------------- 2
// Scalar first Adam step with g=1 and published hyperparameters.
Outcome criterion_adam_oracle() {
    ModelConfig config;
    config.input_dim = 1;
    config.hidden_dim = 1;
    ModelParams params = ModelParams::zeros(config);
    ParamGrads grads = ModelParams::zeros(config);
    grads.b_p = 1.0;
    AdamState state = AdamState::zeros(config);
    AdamHyper hyper;  // lr 1e-4, betas 0.9/0.999, eps 1e-8
    hyper.clip_norm.reset();
    adam_step(params, grads, state, hyper);
    const double expected = -1e-4 / (1.0 + 1e-8);
    const double err = std::fabs(params.b_p - expected);
    std::ostringstream detail;
    detail << "update " << params.b_p << ", closed form " << expected << ", |diff| " << err;
    return {err < 1e-12, detail.str()};
}

// ---------------------------------------------------------------- 3
// Hand-evaluated scalar cell step and an independent straight-line
// reference evaluation of the full recurrence + readout.
Outcome criterion_forward_oracle() {
    // (a) hidden_dim = 1 hand example: every gate pre-activation is 0.5.
    ModelConfig scalar_config;
    scalar_config.input_dim = 1;
    scalar_config.hidden_dim = 1;
    ModelParams scalar_params = ModelParams::zeros(scalar_config);
    scalar_params.U_i(0, 0) = scalar_params.U_f(0, 0) = scalar_params.U_o(0, 0) =
        scalar_params.U_c(0, 0) = 1.0;
    auto [state, gates] = cell_forward(Vec{0.5}, zero_state(scalar_config), scalar_params,
                                       scalar_config);
    const double sig = 1.0 / (1.0 + std::exp(-0.5));
    const double ct = std::tanh(0.5);
    const double h_exact = sig * (sig * ct);
    const double hand_err = std::fabs(state.h[0] - h_exact);
    const bool hand_ok = hand_err < 1e-6 && std::fabs(state.h[0] - 0.179052) < 1e-5 &&
                         std::fabs(state.c[0] - 0.287655) < 1e-5 &&
                         std::fabs(gates.i[0] - 0.622459) < 1e-6 &&
                         std::fabs(gates.c_tilde[0] - 0.462117) < 1e-6;

    // (b) fixture sequence vs a straight-line transcription of the
    // recurrence, fully independent of the library's forward pass.
    ModelConfig config;
    config.input_dim = 15;
    config.hidden_dim = 8;
    const ModelParams p = init_params(config, 0);
    Rng rng(42);
    std::vector<Vec> inputs(12, Vec(15));
    for (auto& x : inputs) {
        for (double& v : x) v = rng.uniform(-2.0, 2.0);
    }
    const double z = forward(inputs, p, config).z;

    auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    Vec h(8, 0.0), c(8, 0.0);
    for (const Vec& x : inputs) {
        Vec i(8), f(8), o(8), cand(8);
        for (int j = 0; j < 8; ++j) {
            double ai = p.b_i[j], af = p.b_f[j], ao = p.b_o[j], ac = p.b_c[j];
            for (int k = 0; k < 8; ++k) {
                ai += p.W_i(j, k) * h[k];
                af += p.W_f(j, k) * h[k];
                ao += p.W_o(j, k) * h[k];
                ac += p.W_c(j, k) * h[k];
            }
            for (int k = 0; k < 15; ++k) {
                ai += p.U_i(j, k) * x[k];
                af += p.U_f(j, k) * x[k];
                ao += p.U_o(j, k) * x[k];
                ac += p.U_c(j, k) * x[k];
            }
            i[j] = sigmoid(ai);
            f[j] = sigmoid(af);
            o[j] = sigmoid(ao);
            cand[j] = std::tanh(ac);
        }
        Vec c2(8), h2(8);
        for (int j = 0; j < 8; ++j) {
            c2[j] = i[j] * cand[j] + f[j] * c[j];
            h2[j] = o[j] * c2[j];  // raw hidden update
        }
        c = c2;
        h = h2;
    }
    double z_ref = p.b_p;
    for (int j = 0; j < 8; ++j) z_ref += p.W_p[j] * h[j];
    const double seq_err = std::fabs(z - z_ref);

    std::ostringstream detail;
    detail << "hand-step |h' - exact| " << hand_err << "; sequence |z - reference| " << seq_err;
    return {hand_ok && seq_err < 1e-12, detail.str()};
}

// ---------------------------------------------------------------- 4
// Kernel sums vs a brute-force double loop; macro metrics vs a
// brute-force confusion recount. Exact equality in both.
Outcome criterion_oracles() {
    Rng rng(2024);
    // Kernel sums over random grids.
    for (int trial = 0; trial < 100; ++trial) {
        const int nx = 2 + static_cast<int>(rng.uniform_int(19));
        const int ny = 2 + static_cast<int>(rng.uniform_int(19));
        GridSpec spec;
        spec.bounds = GeoBounds{0.0, static_cast<double>(nx), 0.0, static_cast<double>(ny)};
        spec.n_x = nx;
        spec.n_y = ny;
        std::vector<ObservationRecord> records;
        const int n_records = 5 + static_cast<int>(rng.uniform_int(120));
        for (int i = 0; i < n_records; ++i) {
            ObservationRecord r;
            r.lon = rng.uniform(0.0, nx);
            r.lat = rng.uniform(0.0, ny);
            r.year = 1999;
            r.month = 1 + static_cast<int>(rng.uniform_int(2));
            r.day = 5;
            r.category = static_cast<LocustCategory>(rng.uniform_int(4));
            records.push_back(r);
        }
        // Per-cell swarm counts for the oracle.
        std::map<std::tuple<int, int, int>, long> swarm;
        for (const auto& r : records) {
            if (r.category != LocustCategory::Swarm) continue;
            const CellIndex c = locate_cell(r.lon, r.lat, spec);
            swarm[{month_index(r.year, r.month).value, c.x, c.y}]++;
        }
        for (int k : {1, 3, 5}) {
            const auto rows = aggregate_monthly(records, spec, k);
            const int radius = (k - 1) / 2;
            for (const auto& row : rows) {
                long expected = 0;
                for (int dy = -radius; dy <= radius; ++dy) {
                    for (int dx = -radius; dx <= radius; ++dx) {
                        const int x = row.cell.x + dx, y = row.cell.y + dy;
                        if (x < 0 || x >= nx || y < 0 || y >= ny) continue;
                        auto it = swarm.find({row.month.value, x, y});
                        if (it != swarm.end()) expected += it->second;
                    }
                }
                if (row.swarm_kernel_count != expected) {
                    std::ostringstream detail;
                    detail << "kernel mismatch at trial " << trial << " k=" << k << " cell ("
                           << row.cell.x << "," << row.cell.y << "): " << row.swarm_kernel_count
                           << " vs " << expected;
                    return {false, detail.str()};
                }
            }
        }
    }

    // Macro metrics over 1000 random label vectors.
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.uniform_int(200);
        std::vector<int> pred(n), truth(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = static_cast<int>(rng.uniform_int(2));
            truth[i] = static_cast<int>(rng.uniform_int(2));
        }
        const EvalReport r = macro_precision_recall(pred, truth);
        long tp = 0, fp = 0, fn = 0, tn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pred[i] == 1 && truth[i] == 1) tp++;
            if (pred[i] == 1 && truth[i] == 0) fp++;
            if (pred[i] == 0 && truth[i] == 1) fn++;
            if (pred[i] == 0 && truth[i] == 0) tn++;
        }
        auto rate = [](long num, long den) {
            return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
        };
        const double macro_p = (rate(tp, tp + fp) + rate(tn, tn + fn)) / 2.0;
        const double macro_r = (rate(tp, tp + fn) + rate(tn, tn + fp)) / 2.0;
        if (r.macro_precision != macro_p || r.macro_recall != macro_r ||
            r.confusion.tp != tp || r.confusion.fp != fp || r.confusion.fn != fn ||
            r.confusion.tn != tn) {
            return {false, "macro metric mismatch at trial " + std::to_string(trial)};
        }
    }
    return {true, "kernel sums exact on 100 grids x {1,3,5}; macro metrics exact on 1000 vectors"};
}

// ---------------------------------------------------------------- 5
// Table 1 boundary dates route to the right splits.
Outcome criterion_split_fidelity() {
    const SplitSpec spec;  // published defaults
    const struct {
        int year, month, day;
        Split expected;
        const char* name;
    } cases[] = {
        {2017, 5, 31, Split::Train, "2017-05-31->train"},
        {2017, 6, 1, Split::Val, "2017-06-01->val"},
        {2019, 6, 30, Split::Val, "2019-06-30->val"},
        {2019, 7, 1, Split::Test, "2019-07-01->test"},
        {2021, 7, 31, Split::Test, "2021-07-31->test"},
    };
    std::ostringstream detail;
    bool ok = true;
    for (const auto& c : cases) {
        if (!is_valid_date(Date{c.year, c.month, c.day})) {
            ok = false;
            continue;
        }
        const Split got = split_of_month(month_index(c.year, c.month), spec);
        if (got != c.expected) {
            ok = false;
            detail << c.name << " MISROUTED; ";
        }
    }
    if (ok) detail << "all five boundary records routed per the published table";
    return {ok, detail.str()};
}

// ---------------------------------------------------------------- 6
// Overfit oracle: memorize 20 copies of one sample.
Outcome criterion_overfit() {
    const double start = now_seconds();
    ModelConfig config;
    config.input_dim = 15;
    config.hidden_dim = 32;
    SequenceSample sample;
    sample.cell = CellIndex{0, 0};
    sample.target_month = MonthIndex{48};
    sample.target = 6.0;
    sample.inputs.resize(12);
    Rng rng(7);
    for (auto& x : sample.inputs) {
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
    }
    const std::vector<SequenceSample> train_set(20, sample);
    TrainConfig tc;
    tc.epochs = 500;
    tc.batch_size = 64;
    tc.seed = 3;
    AdamHyper hyper;
    hyper.learning_rate = 1e-2;
    const TrainResult result = train(train_set, {}, config, tc, hyper);
    const double final_mse = result.history.train_mse.back();
    const double elapsed = now_seconds() - start;
    std::ostringstream detail;
    detail << "final training MSE " << final_mse << " after 500 epochs in " << elapsed << "s";
    return {final_mse < 1e-2 && elapsed < 120.0, detail.str()};
}

// ---------------------------------------------------------------- 7 & 8
// Shared synthetic end-to-end pipeline.
struct EndToEnd {
    EvalReport report;
    double argmax_hit_fraction = 0.0;
    int argmax_months = 0;
    double elapsed = 0.0;
};

SynthScenario e2e_scenario() {
    SynthScenario s;
    s.grid_nx = 30;
    s.grid_ny = 30;
    s.months = 120;
    s.blob_amplitude = 5.0;
    s.blob_sigma = 1.4;
    s.start_x = 5.0;
    s.start_y = 15.0;
    s.drift_x = 1.0;
    s.drift_y = 0.0;
    s.seasonal_amplitude = 0.4;
    s.hopper_scale = 0.8;
    s.hopper_sigma_scale = 1.8;
    s.adult_background = 0.30;
    return s;
}

ToolkitConfig e2e_config() {
    ToolkitConfig cfg;
    cfg.grid.bounds = GeoBounds{0.0, 30.0, 0.0, 30.0};
    cfg.grid.n_x = 30;
    cfg.grid.n_y = 30;
    // 120 months from 1985-01: train 84, validation 12, held-out final 24.
    cfg.splits.train_start = Date{1985, 1, 1};
    cfg.splits.train_end = Date{1991, 12, 31};
    cfg.splits.val_start = Date{1992, 1, 1};
    cfg.splits.val_end = Date{1992, 12, 31};
    cfg.splits.test_start = Date{1993, 1, 1};
    cfg.splits.test_end = Date{1994, 12, 31};
    // Everything else stays at the published defaults: hidden 32, lr 1e-4,
    // batch 64, K = 3, 50 epochs, threshold 0.5.
    return cfg;
}

const EndToEnd& end_to_end() {
    static std::optional<EndToEnd> cached;
    if (cached) return *cached;

    const double start = now_seconds();
    const fs::path dir =
        fs::temp_directory_path() / ("locustcast_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto file = [&](const char* name) { return (dir / name).string(); };

    const ToolkitConfig cfg = e2e_config();
    std::ostringstream log;
    run_synth(e2e_scenario(), 20240801, file("synthetic.csv"), log);
    run_ingest({file("synthetic.csv")}, cfg, file("table.csv"), file("diagnostics.log"), log);
    run_train(file("table.csv"), cfg, file("model.ckpt"), file("history.csv"), log);

    EndToEnd result;
    result.report =
        run_evaluate(file("model.ckpt"), file("table.csv"), cfg, file("report"), log);

    // Triptych argmax tracking over the 24 test months.
    std::ifstream table_in(file("table.csv"));
    const auto rows = read_table(table_in);
    std::ifstream ckpt_in(file("model.ckpt"), std::ios::binary);
    const Checkpoint ckpt = load_checkpoint(ckpt_in);
    const auto argmax_of = [](const Raster& r) {
        int best = 0;
        for (int i = 1; i < static_cast<int>(r.values.size()); ++i) {
            if (r.values[i] > r.values[best]) best = i;
        }
        return CellIndex{best % r.width, best / r.width};
    };
    int hits = 0, months = 0;
    for (int m = month_index(1993, 1).value; m <= month_index(1994, 12).value; ++m) {
        const Triptych t = triptych(MonthIndex{m}, rows, ckpt, cfg.grid, cfg.window);
        double truth_max = 0.0;
        for (double v : t.truth.values) truth_max = std::max(truth_max, v);
        if (truth_max <= 0.0) continue;  // nothing to locate this month
        const CellIndex truth_peak = argmax_of(t.truth);
        const CellIndex pred_peak = argmax_of(t.pred);
        const int chebyshev = std::max(std::abs(truth_peak.x - pred_peak.x),
                                       std::abs(truth_peak.y - pred_peak.y));
        if (chebyshev <= 2) ++hits;
        ++months;
    }
    result.argmax_months = months;
    result.argmax_hit_fraction = months > 0 ? static_cast<double>(hits) / months : 0.0;
    result.elapsed = now_seconds() - start;

    fs::remove_all(dir);
    cached = std::move(result);
    return *cached;
}

Outcome criterion_end_to_end() {
    const EndToEnd& e = end_to_end();
    std::ostringstream detail;
    detail << "macro recall " << e.report.macro_recall << " (need >= 0.80), macro precision "
           << e.report.macro_precision << " (need >= 0.60), argmax within Chebyshev 2 for "
           << e.argmax_hit_fraction * 100.0 << "% of " << e.argmax_months
           << " test months (need >= 70%), " << e.elapsed << "s";
    const bool ok = e.report.macro_recall >= 0.80 && e.report.macro_precision >= 0.60 &&
                    e.argmax_hit_fraction >= 0.70 && e.elapsed < 900.0;
    return {ok, detail.str()};
}

Outcome criterion_density_bins() {
    const EndToEnd& e = end_to_end();
    const BinRecall& bins = e.report.bins;
    std::ostringstream detail;
    detail << "bin recall low " << bins.low << " (" << bins.n_low << "), medium " << bins.medium
           << " (" << bins.n_medium << "), high " << bins.high << " (" << bins.n_high
           << "); need high >= low - 0.05";
    const bool ok = bins.n_low > 0 && bins.n_medium > 0 && bins.n_high > 0 &&
                    bins.high >= bins.low - 0.05;
    return {ok, detail.str()};
}

// ---------------------------------------------------------------- 9
// Bitwise determinism of the training command.
Outcome criterion_determinism() {
    const fs::path dir =
        fs::temp_directory_path() / ("locustcast_determinism_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto file = [&](const char* name) { return (dir / name).string(); };

    SynthScenario sc;
    sc.grid_nx = 15;
    sc.grid_ny = 15;
    sc.months = 60;
    sc.blob_amplitude = 6.0;
    sc.blob_sigma = 1.5;
    sc.start_x = 4.0;
    sc.start_y = 8.0;

    ToolkitConfig cfg;
    cfg.grid.bounds = GeoBounds{0.0, 15.0, 0.0, 15.0};
    cfg.grid.n_x = 15;
    cfg.grid.n_y = 15;
    cfg.splits.train_start = Date{1985, 1, 1};
    cfg.splits.train_end = Date{1988, 6, 30};
    cfg.splits.val_start = Date{1988, 7, 1};
    cfg.splits.val_end = Date{1989, 6, 30};
    cfg.splits.test_start = Date{1989, 7, 1};
    cfg.splits.test_end = Date{1989, 12, 31};
    cfg.training.epochs = 10;
    cfg.training.seed = 99;

    std::ostringstream log;
    run_synth(sc, 31, file("raw.csv"), log);
    run_ingest({file("raw.csv")}, cfg, file("table.csv"), "", log);
    run_train(file("table.csv"), cfg, file("a.ckpt"), file("a_history.csv"), log);
    run_train(file("table.csv"), cfg, file("b.ckpt"), file("b_history.csv"), log);

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const bool ckpt_equal = slurp(file("a.ckpt")) == slurp(file("b.ckpt"));
    const bool hist_equal = slurp(file("a_history.csv")) == slurp(file("b_history.csv"));
    fs::remove_all(dir);
    std::ostringstream detail;
    detail << "checkpoint bytes " << (ckpt_equal ? "identical" : "DIFFER") << ", history bytes "
           << (hist_equal ? "identical" : "DIFFER");
    return {ckpt_equal && hist_equal, detail.str()};
}

// ---------------------------------------------------------------- 10
// Best-effort comparison against the published statistics; runs only when
// a real export is supplied, never gates.
Outcome criterion_fao_best_effort(const std::string& fao_path) {
    if (fao_path.empty()) {
        return {true, "SKIP: no export supplied (set LOCUST_FAO_CSV or --fao); non-gating"};
    }
    const fs::path dir =
        fs::temp_directory_path() / ("locustcast_fao_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto file = [&](const char* name) { return (dir / name).string(); };
    std::ostringstream detail;
    try {
        ToolkitConfig cfg;  // published defaults end to end
        std::ostringstream log;
        const IngestSummary s =
            run_ingest({fao_path}, cfg, file("table.csv"), file("diag.log"), log);
        detail << "entries train " << s.train.total << "/" << s.train.swarm_positive
               << " (reference 24092/3410), val " << s.val.total << "/" << s.val.swarm_positive
               << " (1830/67), test " << s.test.total << "/" << s.test.swarm_positive
               << " (3574/927); ";
        run_train(file("table.csv"), cfg, file("model.ckpt"), file("history.csv"), log);
        const EvalReport r =
            run_evaluate(file("model.ckpt"), file("table.csv"), cfg, file("report"), log);
        detail << "macro recall " << r.macro_recall << " (published 0.81), macro precision "
               << r.macro_precision << " (published 0.60); deviations documented, not asserted";
    } catch (const std::exception& e) {
        detail << "export processing failed: " << e.what() << " (non-gating)";
    }
    fs::remove_all(dir);
    return {true, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    std::string fao_path;
    if (const char* env = std::getenv("LOCUST_FAO_CSV")) fao_path = env;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only.insert(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--fao") == 0 && i + 1 < argc) {
            fao_path = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--only N]... [--fao export.csv]\n";
            return 1;
        }
    }

    struct Criterion {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria = {
        {1, "gradient correctness (BPTT vs finite differences)", criterion_gradients},
        {2, "Adam first-step oracle", criterion_adam_oracle},
        {3, "forward oracle (hand step + reference sequence)", criterion_forward_oracle},
        {4, "kernel and macro-metric brute-force oracles", criterion_oracles},
        {5, "split fidelity at published boundaries", criterion_split_fidelity},
        {6, "overfit oracle (memorization)", criterion_overfit},
        {7, "synthetic end-to-end quality", criterion_end_to_end},
        {8, "density-bin recall machinery", criterion_density_bins},
        {9, "training determinism", criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const Outcome o = c.run();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << ": "
                  << o.detail << std::endl;
        if (!o.pass) ++failures;
    }
    if (only.empty() || only.count(10)) {
        const Outcome o = criterion_fao_best_effort(fao_path);
        std::cout << (o.pass ? "PASS" : "FAIL")
                  << "  10  best-effort real-export comparison: " << o.detail << std::endl;
        if (!o.pass) ++failures;
    }
    return failures;
}
