#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "locust/dataset.hpp"
#include "locust/grid.hpp"
#include "locust/ingest.hpp"
#include "locust/lstm.hpp"
#include "locust/optim.hpp"

namespace locust {

// Whole-toolkit configuration, one plain-text key=value file. Every default
// matches the published experiment setup where one exists (100x100 grid,
// K=3, 12-month window, batch 64, hidden 32, lr 1e-4, 50 epochs, threshold
// 0.5, the standard date splits).
struct ToolkitConfig {
    GridSpec grid{GeoBounds{-20.0, 80.0, -10.0, 45.0}, 100, 100};
    int kernel_size = 3;
    ColumnMapping columns;
    CategorySynonyms synonyms;
    SplitSpec splits;
    ModelConfig model;
    int window = kDefaultWindow;
    AdamHyper hyper;
    TrainConfig training{50, 64, 42, SelectionMetric::ValidationMse};
    double threshold = 0.5;

    void validate() const;

    bool operator==(const ToolkitConfig&) const = default;
};

// Accepts blank lines and '#' comments; unknown keys are a ConfigError.
ToolkitConfig parse_config(std::istream& in);
ToolkitConfig load_config(const std::string& path);

// Serialization covers every key; a saved config reloads to an equal value.
void write_config(std::ostream& out, const ToolkitConfig& config);

}  // namespace locust
