#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "locust/grid.hpp"
#include "locust/ingest.hpp"

namespace locust {

// Default ranges: train 1985-01-01..2017-05-31, validation 2017-06-01..
// 2019-06-30, test 2019-07-01..2021-07-31.
struct SplitSpec {
    Date train_start{1985, 1, 1};
    Date train_end{2017, 5, 31};
    Date val_start{2017, 6, 1};
    Date val_end{2019, 6, 30};
    Date test_start{2019, 7, 1};
    Date test_end{2021, 7, 31};

    // Ranges must be valid dates, chronologically ordered, and disjoint.
    void validate() const;

    bool operator==(const SplitSpec&) const = default;
};

enum class Split { Train = 0, Val = 1, Test = 2, None = 3 };

// A month belongs to a range iff its first calendar day does.
Split split_of_month(MonthIndex m, const SplitSpec& spec);

struct SplitTables {
    std::vector<CellMonthFeatures> train;
    std::vector<CellMonthFeatures> val;
    std::vector<CellMonthFeatures> test;
    std::size_t dropped = 0;  // rows outside every range
};

SplitTables split_by_date(const std::vector<CellMonthFeatures>& rows, const SplitSpec& spec);

constexpr int kDefaultWindow = 12;

struct SequenceSample {
    CellIndex cell;
    MonthIndex target_month;
    // Chronological feature vectors for months target-window .. target-1;
    // months without an aggregated row are zero vectors (presence flag 0).
    std::vector<std::array<double, kFeatureDim>> inputs;
    double target = 0.0;  // swarm_kernel_count at target_month, raw count
};

// One sample per row of target_rows. Input steps are looked up in
// history_rows, which may extend earlier than the split (inputs always
// precede the target month, so no target leakage).
std::vector<SequenceSample> build_sequences(const std::vector<CellMonthFeatures>& target_rows,
                                            const std::vector<CellMonthFeatures>& history_rows,
                                            int window = kDefaultWindow);

// Train-only, per-dimension population mean/std. Continuous dims 0..4 are
// standardized; one-hot, seasonal, and flag dims 5..14 keep identity stats.
struct NormStats {
    std::array<double, kFeatureDim> mean{};
    std::array<double, kFeatureDim> std{};

    NormStats() {
        mean.fill(0.0);
        std.fill(1.0);  // identity transform until fitted
    }
};

constexpr double kStdFloor = 1e-8;

NormStats fit_normalizer(const std::vector<SequenceSample>& train_samples);
SequenceSample apply_normalizer(const SequenceSample& sample, const NormStats& stats);
std::vector<SequenceSample> apply_normalizer(const std::vector<SequenceSample>& samples,
                                             const NormStats& stats);

// Seeded permutation cut into consecutive batches of sample indices; the
// last batch may be short.
std::vector<std::vector<std::size_t>> batches(std::size_t n_samples, std::size_t batch_size,
                                              std::uint64_t seed);

// Binary sequence cache. Layout (all little-endian): magic "LCSQ", u32
// version, u32 window, u32 feature dim, u64 sample count, then per sample
// u32 cell_x, u32 cell_y, u32 target_month, f64 target, window*dim f64
// inputs.
void save_sequences(std::ostream& out, const std::vector<SequenceSample>& samples);
std::vector<SequenceSample> load_sequences(std::istream& in);

}  // namespace locust
