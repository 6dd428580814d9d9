#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locust/commands.hpp"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
// divergence, 1 anything else.
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitDivergence = 4;

struct GlobalOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool verbose = false;
};

locust::ToolkitConfig resolve_config(const GlobalOpts& opts) {
    locust::ToolkitConfig cfg;
    if (!opts.config_path.empty()) cfg = locust::load_config(opts.config_path);
    if (opts.seed_set) cfg.training.seed = opts.seed;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"locustcast: one-month-ahead swarm-attack forecasting over a spatial grid"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts global;
    app.add_option("--config", global.config_path, "Path to a key=value config file");
    app.add_option("--seed", global.seed, "Override the config's RNG seed")
        ->each([&](const std::string&) { global.seed_set = true; });
    app.add_flag("--verbose", global.verbose, "Per-epoch / per-file progress output");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Parse raw observation CSVs into the aggregated table");
    std::vector<std::string> ingest_inputs;
    std::string ingest_table = "table.csv";
    std::string ingest_diag = "diagnostics.log";
    ingest->add_option("inputs", ingest_inputs, "Raw observation CSV files")->required();
    ingest->add_option("--out", ingest_table, "Aggregated table output path");
    ingest->add_option("--diagnostics", ingest_diag, "Diagnostics log path");

    // train
    auto* train = app.add_subcommand("train", "Train the forecaster on the aggregated table");
    std::string train_table, train_ckpt = "model.ckpt", train_history = "history.csv";
    train->add_option("--table", train_table, "Aggregated table path")->required();
    train->add_option("--out", train_ckpt, "Checkpoint output path");
    train->add_option("--history", train_history, "Per-epoch loss CSV path");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score a checkpoint on the test split");
    std::string eval_ckpt, eval_table, eval_report = "report";
    evaluate->add_option("--checkpoint", eval_ckpt, "Checkpoint path")->required();
    evaluate->add_option("--table", eval_table, "Aggregated table path")->required();
    evaluate->add_option("--report", eval_report, "Report output stem (.txt and .kv)");

    // predict
    auto* predict = app.add_subcommand("predict", "Per-cell predicted counts for one month");
    std::string pred_ckpt, pred_table, pred_month, pred_out = "predictions.csv";
    predict->add_option("--checkpoint", pred_ckpt, "Checkpoint path")->required();
    predict->add_option("--table", pred_table, "Aggregated table path")->required();
    predict->add_option("--month", pred_month, "Target month, YYYY-MM")->required();
    predict->add_option("--out", pred_out, "Predictions CSV path");

    // heatmap
    auto* heatmap = app.add_subcommand("heatmap", "Previous/truth/prediction raster triptych");
    std::string heat_ckpt, heat_table, heat_month, heat_format = "ppm-density", heat_stem = "heatmap";
    heatmap->add_option("--checkpoint", heat_ckpt, "Checkpoint path")->required();
    heatmap->add_option("--table", heat_table, "Aggregated table path")->required();
    heatmap->add_option("--month", heat_month, "Target month, YYYY-MM")->required();
    heatmap->add_option("--format", heat_format, "csv-grid, pgm, or ppm-density");
    heatmap->add_option("--stem", heat_stem, "Output filename stem");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic raw-observation CSV");
    locust::SynthScenario scenario;
    std::string synth_out = "synthetic.csv";
    synth->add_option("--out", synth_out, "Output CSV path");
    synth->add_option("--grid-nx", scenario.grid_nx, "Grid width in cells");
    synth->add_option("--grid-ny", scenario.grid_ny, "Grid height in cells");
    synth->add_option("--months", scenario.months, "Number of months to simulate");
    synth->add_option("--amplitude", scenario.blob_amplitude, "Peak expected swarms per cell");
    synth->add_option("--sigma", scenario.blob_sigma, "Blob radius in cells");
    synth->add_option("--start-x", scenario.start_x, "Initial blob center x");
    synth->add_option("--start-y", scenario.start_y, "Initial blob center y");
    synth->add_option("--drift-x", scenario.drift_x, "Eastward drift, cells per month");
    synth->add_option("--drift-y", scenario.drift_y, "Northward drift, cells per month");
    synth->add_option("--seasonal", scenario.seasonal_amplitude, "Seasonal modulation amplitude");
    synth->add_option("--hopper-scale", scenario.hopper_scale, "Hopper precursor intensity scale");
    synth->add_option("--adult-background", scenario.adult_background,
                      "Uniform adult observation rate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        const locust::ToolkitConfig cfg = resolve_config(global);
        std::ostream& log = std::cout;
        if (ingest->parsed()) {
            locust::run_ingest(ingest_inputs, cfg, ingest_table, ingest_diag, log);
        } else if (train->parsed()) {
            locust::run_train(train_table, cfg, train_ckpt, train_history, log, global.verbose);
        } else if (evaluate->parsed()) {
            locust::run_evaluate(eval_ckpt, eval_table, cfg, eval_report, log);
        } else if (predict->parsed()) {
            locust::run_predict(pred_ckpt, pred_table, pred_month, cfg, pred_out, log);
        } else if (heatmap->parsed()) {
            locust::run_heatmap(heat_ckpt, heat_table, heat_month, heat_format, cfg, heat_stem,
                                log);
        } else if (synth->parsed()) {
            locust::run_synth(scenario, cfg.training.seed, synth_out, log);
        }
        return 0;
    } catch (const locust::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const locust::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const locust::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
