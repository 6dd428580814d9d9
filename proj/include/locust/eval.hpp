#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "locust/lstm.hpp"

namespace locust {

// Density of an attacked entry: Low = exactly 1 attack, Medium = 2..4,
// High = more than 4. Counts of 0 are outside every bin.
enum class DensityBin { Low = 0, Medium = 1, High = 2 };

// count must be >= 1.
DensityBin density_bin(long count);

constexpr double kDefaultThreshold = 0.5;

// 1 iff value > threshold, strictly. Ground-truth counts pass through the
// same rule: count > 0.5 means at least one attack.
int binarize(double value, double threshold = kDefaultThreshold);

struct ConfusionCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;
};

struct BinRecall {
    double low = 0.0;
    double medium = 0.0;
    double high = 0.0;
    long n_low = 0;
    long n_medium = 0;
    long n_high = 0;
};

struct EvalReport {
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double precision_pos = 0.0;  // attack class
    double recall_pos = 0.0;
    double precision_neg = 0.0;  // no-attack class
    double recall_neg = 0.0;
    BinRecall bins;
    ConfusionCounts confusion;
    std::size_t n_evaluated = 0;
    std::vector<std::string> warnings;
};

// Per-class precision/recall for both classes plus their unweighted mean.
// A class with a zero denominator contributes 0 and appends a warning.
EvalReport macro_precision_recall(const std::vector<int>& pred_labels,
                                  const std::vector<int>& true_labels);

// Recall per density bin over entries with true count >= 1; a prediction
// counts as a hit when its binarized label is 1. Empty bins score 0 with a
// warning.
BinRecall density_bin_recall(const std::vector<double>& pred_counts,
                             const std::vector<long>& true_counts, double threshold,
                             std::vector<std::string>* warnings = nullptr);

// Runs the checkpoint over every sample (inputs normalized with the
// checkpoint's stats) and assembles the full report. Samples must be raw
// (unnormalized); the checkpoint's feature schema version must match the
// toolkit's.
EvalReport evaluate(const Checkpoint& ckpt, const std::vector<SequenceSample>& test_samples,
                    double threshold = kDefaultThreshold);

// Human-readable rendering.
void write_report_text(std::ostream& out, const EvalReport& report);

// Machine-readable key=value lines; keys macro_precision, macro_recall,
// recall_low, recall_medium, recall_high, tp, fp, fn, tn plus per-class and
// count extras.
void write_report_kv(std::ostream& out, const EvalReport& report);

}  // namespace locust
