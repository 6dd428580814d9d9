#include "locust/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace locust {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file " + path);
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open input file " + path);
    return in;
}

SplitSummary summarize(const std::vector<CellMonthFeatures>& rows) {
    SplitSummary s;
    s.total = rows.size();
    for (const auto& row : rows) {
        if (row.swarm_kernel_count > 0) s.swarm_positive++;
    }
    return s;
}

std::vector<CellMonthFeatures> load_table(const std::string& path) {
    auto in = open_input(path);
    return read_table(in);
}

Checkpoint load_checkpoint_file(const std::string& path) {
    auto in = open_input(path);
    return load_checkpoint(in);
}

}  // namespace

MonthIndex parse_year_month(const std::string& text) {
    int year = 0, month = 0;
    char sep = 0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%d%c%d%n", &year, &sep, &month, &consumed) != 3 ||
        sep != '-' || consumed != static_cast<int>(text.size())) {
        throw DataError("expected month as YYYY-MM, got '" + text + "'");
    }
    return month_index(year, month);
}

IngestSummary run_ingest(const std::vector<std::string>& csv_paths, const ToolkitConfig& config,
                         const std::string& table_path, const std::string& diagnostics_path,
                         std::ostream& log) {
    config.validate();
    if (csv_paths.empty()) throw ConfigError("ingest: no input CSV files given");

    std::vector<ObservationRecord> records;
    std::vector<ParseDiagnostic> diagnostics;
    for (const auto& path : csv_paths) {
        auto in = open_input(path);
        ParseResult result = parse_records(in, config.columns, config.synonyms);
        records.insert(records.end(), result.records.begin(), result.records.end());
        diagnostics.insert(diagnostics.end(), result.diagnostics.begin(),
                           result.diagnostics.end());
        log << path << ": " << result.records.size() << " records, "
            << result.diagnostics.size() << " diagnostics\n";
    }
    if (records.empty()) throw DataError("ingest: no parseable records in the input");

    const std::vector<ObservationRecord> in_bounds =
        filter_in_bounds(records, config.grid, diagnostics);
    if (in_bounds.empty()) throw DataError("ingest: every record fell outside the grid bounds");

    const auto rows = aggregate_monthly(in_bounds, config.grid, config.kernel_size);
    {
        auto out = open_output(table_path);
        write_table(out, rows);
    }
    if (!diagnostics_path.empty()) {
        auto out = open_output(diagnostics_path);
        write_diagnostics(out, diagnostics);
    }

    IngestSummary summary;
    summary.records = records.size();
    summary.diagnostics = diagnostics.size();
    summary.rows = rows.size();
    const SplitTables splits = split_by_date(rows, config.splits);
    summary.train = summarize(splits.train);
    summary.val = summarize(splits.val);
    summary.test = summarize(splits.test);
    summary.dropped = splits.dropped;

    log << "aggregated " << summary.rows << " cell-month entries ("
        << summary.diagnostics << " diagnostics)\n";
    log << "split        entries  swarms>0   (reference: 24092/3410, 1830/67, 3574/927)\n";
    char buf[96];
    std::snprintf(buf, sizeof buf, "train      %9zu %9zu\n", summary.train.total,
                  summary.train.swarm_positive);
    log << buf;
    std::snprintf(buf, sizeof buf, "validation %9zu %9zu\n", summary.val.total,
                  summary.val.swarm_positive);
    log << buf;
    std::snprintf(buf, sizeof buf, "test       %9zu %9zu\n", summary.test.total,
                  summary.test.swarm_positive);
    log << buf;
    if (summary.dropped > 0) {
        log << "dropped " << summary.dropped << " entries outside every split range\n";
    }
    return summary;
}

TrainSummary run_train(const std::string& table_path, const ToolkitConfig& config,
                       const std::string& checkpoint_path, const std::string& history_path,
                       std::ostream& log, bool verbose) {
    config.validate();
    const auto rows = load_table(table_path);
    const SplitTables splits = split_by_date(rows, config.splits);
    if (splits.train.empty()) throw DataError("train: the training split is empty");

    const auto train_raw = build_sequences(splits.train, rows, config.window);
    const auto val_raw = build_sequences(splits.val, rows, config.window);
    const NormStats norm = fit_normalizer(train_raw);
    const auto train_samples = apply_normalizer(train_raw, norm);
    const auto val_samples = apply_normalizer(val_raw, norm);

    log << "training on " << train_samples.size() << " sequences, validating on "
        << val_samples.size() << '\n';
    if (val_samples.empty()) {
        log << "warning: validation split is empty; the final epoch will be selected\n";
    }
    // Attacked-entry count statistics; the published reference values on the
    // real export are mean 8.52, variance 547.16.
    double sum = 0.0, sumsq = 0.0;
    std::size_t n_pos = 0;
    for (const auto& s : train_raw) {
        if (s.target >= 1.0) {
            sum += s.target;
            sumsq += s.target * s.target;
            ++n_pos;
        }
    }
    if (n_pos > 0) {
        const double mean = sum / static_cast<double>(n_pos);
        const double var = sumsq / static_cast<double>(n_pos) - mean * mean;
        log << "training targets >= 1: " << n_pos << " entries, mean " << mean << ", variance "
            << var << " (reference 8.52 / 547.16)\n";
    }
    TrainResult result = train(train_samples, val_samples, config.model, config.training,
                               config.hyper, verbose ? &log : nullptr);

    Checkpoint ckpt;
    ckpt.config = config.model;
    ckpt.params = result.best_params;
    ckpt.norm = norm;
    {
        auto out = open_output(checkpoint_path);
        save_checkpoint(out, ckpt);
    }
    if (!history_path.empty()) {
        auto out = open_output(history_path);
        write_history(out, result.history);
    }
    log << "selected epoch " << result.history.selected_epoch << "; checkpoint written to "
        << checkpoint_path << '\n';

    TrainSummary summary;
    summary.history = std::move(result.history);
    summary.n_train = train_samples.size();
    summary.n_val = val_samples.size();
    return summary;
}

EvalReport run_evaluate(const std::string& checkpoint_path, const std::string& table_path,
                        const ToolkitConfig& config, const std::string& report_stem,
                        std::ostream& log) {
    config.validate();
    const Checkpoint ckpt = load_checkpoint_file(checkpoint_path);
    const auto rows = load_table(table_path);
    const SplitTables splits = split_by_date(rows, config.splits);
    if (splits.test.empty()) throw DataError("evaluate: the test split is empty");

    const auto test_raw = build_sequences(splits.test, rows, config.window);
    const EvalReport report = evaluate(ckpt, test_raw, config.threshold);

    {
        auto out = open_output(report_stem + ".txt");
        write_report_text(out, report);
    }
    {
        auto out = open_output(report_stem + ".kv");
        write_report_kv(out, report);
    }
    write_report_text(log, report);
    return report;
}

void run_predict(const std::string& checkpoint_path, const std::string& table_path,
                 const std::string& month, const ToolkitConfig& config,
                 const std::string& out_path, std::ostream& log) {
    config.validate();
    const Checkpoint ckpt = load_checkpoint_file(checkpoint_path);
    const auto rows = load_table(table_path);
    const MonthIndex target = parse_year_month(month);
    const auto predictions = predict_month(rows, target, ckpt, config.grid, config.window);

    auto out = open_output(out_path);
    out << "cell_x,cell_y,predicted_count\n";
    char buf[32];
    for (const auto& p : predictions) {
        std::snprintf(buf, sizeof buf, "%.17g", p.value);
        out << p.cell.x << ',' << p.cell.y << ',' << buf << '\n';
    }
    log << "predicted " << predictions.size() << " cells with history for " << month << '\n';
}

std::vector<std::string> run_heatmap(const std::string& checkpoint_path,
                                     const std::string& table_path, const std::string& month,
                                     const std::string& format, const ToolkitConfig& config,
                                     const std::string& stem, std::ostream& log) {
    config.validate();
    const Checkpoint ckpt = load_checkpoint_file(checkpoint_path);
    const auto rows = load_table(table_path);
    const MonthIndex target = parse_year_month(month);
    const RasterFormat fmt = parse_raster_format(format);
    const Triptych t = triptych(target, rows, ckpt, config.grid, config.window);
    auto paths = write_triptych(stem, target, t, fmt);
    for (const auto& p : paths) log << "wrote " << p << '\n';
    return paths;
}

void run_synth(const SynthScenario& scenario, std::uint64_t seed, const std::string& out_path,
               std::ostream& log) {
    auto out = open_output(out_path);
    write_synth_csv(out, scenario, seed);
    log << "synthetic export written to " << out_path << '\n';
}

}  // namespace locust
