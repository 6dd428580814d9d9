#include "locust/eval.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace locust {

DensityBin density_bin(long count) {
    if (count < 1) throw DataError("density_bin requires a count >= 1");
    if (count == 1) return DensityBin::Low;
    if (count <= 4) return DensityBin::Medium;
    return DensityBin::High;
}

int binarize(double value, double threshold) {
    if (!std::isfinite(value)) throw DataError("binarize: non-finite value");
    return value > threshold ? 1 : 0;
}

namespace {

double safe_rate(long num, long den, const char* what, std::vector<std::string>& warnings) {
    if (den == 0) {
        warnings.push_back(std::string(what) + " has a zero denominator; reporting 0");
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string format_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

EvalReport macro_precision_recall(const std::vector<int>& pred_labels,
                                  const std::vector<int>& true_labels) {
    if (pred_labels.empty() || pred_labels.size() != true_labels.size()) {
        throw DataError("macro_precision_recall requires equal, nonzero-length label lists");
    }
    EvalReport r;
    r.n_evaluated = pred_labels.size();
    for (std::size_t i = 0; i < pred_labels.size(); ++i) {
        const int p = pred_labels[i];
        const int t = true_labels[i];
        if ((p != 0 && p != 1) || (t != 0 && t != 1)) {
            throw DataError("labels must be 0 or 1");
        }
        if (p == 1 && t == 1) r.confusion.tp++;
        else if (p == 1 && t == 0) r.confusion.fp++;
        else if (p == 0 && t == 1) r.confusion.fn++;
        else r.confusion.tn++;
    }
    const ConfusionCounts& c = r.confusion;
    r.precision_pos = safe_rate(c.tp, c.tp + c.fp, "attack-class precision", r.warnings);
    r.recall_pos = safe_rate(c.tp, c.tp + c.fn, "attack-class recall", r.warnings);
    r.precision_neg = safe_rate(c.tn, c.tn + c.fn, "no-attack-class precision", r.warnings);
    r.recall_neg = safe_rate(c.tn, c.tn + c.fp, "no-attack-class recall", r.warnings);
    r.macro_precision = (r.precision_pos + r.precision_neg) / 2.0;
    r.macro_recall = (r.recall_pos + r.recall_neg) / 2.0;
    return r;
}

BinRecall density_bin_recall(const std::vector<double>& pred_counts,
                             const std::vector<long>& true_counts, double threshold,
                             std::vector<std::string>* warnings) {
    if (pred_counts.size() != true_counts.size()) {
        throw DataError("density_bin_recall requires equal-length prediction and truth lists");
    }
    long hits[3] = {0, 0, 0};
    long totals[3] = {0, 0, 0};
    for (std::size_t i = 0; i < true_counts.size(); ++i) {
        if (true_counts[i] < 0) throw DataError("true counts must be non-negative");
        if (true_counts[i] == 0) continue;  // unattacked entries are not binned
        const int b = static_cast<int>(density_bin(true_counts[i]));
        totals[b]++;
        if (binarize(pred_counts[i], threshold) == 1) hits[b]++;
    }
    std::vector<std::string> local;
    std::vector<std::string>& warn = warnings ? *warnings : local;
    BinRecall out;
    out.n_low = totals[0];
    out.n_medium = totals[1];
    out.n_high = totals[2];
    out.low = safe_rate(hits[0], totals[0], "low-density bin", warn);
    out.medium = safe_rate(hits[1], totals[1], "medium-density bin", warn);
    out.high = safe_rate(hits[2], totals[2], "high-density bin", warn);
    return out;
}

EvalReport evaluate(const Checkpoint& ckpt, const std::vector<SequenceSample>& test_samples,
                    double threshold) {
    if (test_samples.empty()) throw DataError("evaluate: empty test set");
    if (ckpt.schema_version != kFeatureSchemaVersion) {
        throw DataError("evaluate: checkpoint feature schema version " +
                        std::to_string(ckpt.schema_version) + " does not match toolkit version " +
                        std::to_string(kFeatureSchemaVersion));
    }

    std::vector<double> preds;
    std::vector<long> truths;
    preds.reserve(test_samples.size());
    truths.reserve(test_samples.size());
    for (const auto& s : test_samples) {
        const SequenceSample normed = apply_normalizer(s, ckpt.norm);
        preds.push_back(predict(input_steps(normed), ckpt.params, ckpt.config));
        truths.push_back(std::lround(s.target));
    }

    std::vector<int> pred_labels, true_labels;
    pred_labels.reserve(preds.size());
    true_labels.reserve(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) {
        pred_labels.push_back(binarize(preds[i], threshold));
        true_labels.push_back(truths[i] > 0 ? 1 : 0);
    }

    EvalReport report = macro_precision_recall(pred_labels, true_labels);
    report.bins = density_bin_recall(preds, truths, threshold, &report.warnings);
    return report;
}

void write_report_text(std::ostream& out, const EvalReport& r) {
    out << "entries evaluated:  " << r.n_evaluated << '\n';
    out << "confusion (attack as positive):\n";
    out << "  tp " << r.confusion.tp << "  fp " << r.confusion.fp << "  fn " << r.confusion.fn
        << "  tn " << r.confusion.tn << '\n';
    out << "macro precision:    " << format_rate(r.macro_precision) << '\n';
    out << "macro recall:       " << format_rate(r.macro_recall) << '\n';
    out << "attack class:       precision " << format_rate(r.precision_pos) << ", recall "
        << format_rate(r.recall_pos) << '\n';
    out << "no-attack class:    precision " << format_rate(r.precision_neg) << ", recall "
        << format_rate(r.recall_neg) << '\n';
    out << "density-bin recall: low " << format_rate(r.bins.low) << " (" << r.bins.n_low
        << "), medium " << format_rate(r.bins.medium) << " (" << r.bins.n_medium << "), high "
        << format_rate(r.bins.high) << " (" << r.bins.n_high << ")\n";
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

void write_report_kv(std::ostream& out, const EvalReport& r) {
    out << "macro_precision=" << format_rate(r.macro_precision) << '\n';
    out << "macro_recall=" << format_rate(r.macro_recall) << '\n';
    out << "recall_low=" << format_rate(r.bins.low) << '\n';
    out << "recall_medium=" << format_rate(r.bins.medium) << '\n';
    out << "recall_high=" << format_rate(r.bins.high) << '\n';
    out << "tp=" << r.confusion.tp << '\n';
    out << "fp=" << r.confusion.fp << '\n';
    out << "fn=" << r.confusion.fn << '\n';
    out << "tn=" << r.confusion.tn << '\n';
    out << "precision_attack=" << format_rate(r.precision_pos) << '\n';
    out << "recall_attack=" << format_rate(r.recall_pos) << '\n';
    out << "precision_no_attack=" << format_rate(r.precision_neg) << '\n';
    out << "recall_no_attack=" << format_rate(r.recall_neg) << '\n';
    out << "n_evaluated=" << r.n_evaluated << '\n';
    out << "n_low=" << r.bins.n_low << '\n';
    out << "n_medium=" << r.bins.n_medium << '\n';
    out << "n_high=" << r.bins.n_high << '\n';
}

}  // namespace locust
