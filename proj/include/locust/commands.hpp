#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "locust/config.hpp"
#include "locust/eval.hpp"
#include "locust/report.hpp"
#include "locust/synth.hpp"

namespace locust {

// Command cores shared by the CLI and the test suites; each function is the
// body of one subcommand.

struct SplitSummary {
    std::size_t total = 0;
    std::size_t swarm_positive = 0;  // rows with swarm_kernel_count > 0
};

struct IngestSummary {
    std::size_t records = 0;
    std::size_t diagnostics = 0;
    std::size_t rows = 0;
    SplitSummary train, val, test;
    std::size_t dropped = 0;
};

IngestSummary run_ingest(const std::vector<std::string>& csv_paths, const ToolkitConfig& config,
                         const std::string& table_path, const std::string& diagnostics_path,
                         std::ostream& log);

struct TrainSummary {
    TrainHistory history;
    std::size_t n_train = 0;
    std::size_t n_val = 0;
};

TrainSummary run_train(const std::string& table_path, const ToolkitConfig& config,
                       const std::string& checkpoint_path, const std::string& history_path,
                       std::ostream& log, bool verbose = false);

// Writes <report_stem>.txt and <report_stem>.kv.
EvalReport run_evaluate(const std::string& checkpoint_path, const std::string& table_path,
                        const ToolkitConfig& config, const std::string& report_stem,
                        std::ostream& log);

// month is "YYYY-MM"; output CSV has header cell_x,cell_y,predicted_count.
void run_predict(const std::string& checkpoint_path, const std::string& table_path,
                 const std::string& month, const ToolkitConfig& config,
                 const std::string& out_path, std::ostream& log);

std::vector<std::string> run_heatmap(const std::string& checkpoint_path,
                                     const std::string& table_path, const std::string& month,
                                     const std::string& format, const ToolkitConfig& config,
                                     const std::string& stem, std::ostream& log);

void run_synth(const SynthScenario& scenario, std::uint64_t seed, const std::string& out_path,
               std::ostream& log);

// "YYYY-MM" to a month index.
MonthIndex parse_year_month(const std::string& text);

}  // namespace locust
