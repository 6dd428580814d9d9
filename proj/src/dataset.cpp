#include "locust/dataset.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <tuple>

#include "locust/binio.hpp"
#include "locust/rng.hpp"

namespace locust {

void SplitSpec::validate() const {
    const Date* dates[] = {&train_start, &train_end, &val_start,
                           &val_end,     &test_start, &test_end};
    const char* names[] = {"train_start", "train_end", "val_start",
                           "val_end",     "test_start", "test_end"};
    for (int i = 0; i < 6; ++i) {
        if (!is_valid_date(*dates[i])) {
            throw ConfigError(std::string(names[i]) + " is not a valid calendar date: " +
                              format_date(*dates[i]));
        }
    }
    if (!(train_start <= train_end) || !(val_start <= val_end) || !(test_start <= test_end)) {
        throw ConfigError("each split range must have start <= end");
    }
    if (!(train_end < val_start) || !(val_end < test_start)) {
        throw ConfigError("split ranges overlap or are out of order");
    }
}

Split split_of_month(MonthIndex m, const SplitSpec& spec) {
    const Date first{year_of(m), month_of(m), 1};
    if (spec.train_start <= first && first <= spec.train_end) return Split::Train;
    if (spec.val_start <= first && first <= spec.val_end) return Split::Val;
    if (spec.test_start <= first && first <= spec.test_end) return Split::Test;
    return Split::None;
}

SplitTables split_by_date(const std::vector<CellMonthFeatures>& rows, const SplitSpec& spec) {
    spec.validate();
    SplitTables out;
    for (const auto& row : rows) {
        switch (split_of_month(row.month, spec)) {
            case Split::Train: out.train.push_back(row); break;
            case Split::Val: out.val.push_back(row); break;
            case Split::Test: out.test.push_back(row); break;
            case Split::None: out.dropped++; break;
        }
    }
    return out;
}

std::vector<SequenceSample> build_sequences(const std::vector<CellMonthFeatures>& target_rows,
                                            const std::vector<CellMonthFeatures>& history_rows,
                                            int window) {
    if (window < 1) throw ConfigError("sequence window must be >= 1");

    using Key = std::tuple<int, int, int>;  // (month, y, x)
    std::map<Key, const CellMonthFeatures*> lookup;
    for (const auto& row : history_rows) {
        lookup[Key{row.month.value, row.cell.y, row.cell.x}] = &row;
    }

    std::vector<SequenceSample> samples;
    samples.reserve(target_rows.size());
    for (const auto& row : target_rows) {
        SequenceSample s;
        s.cell = row.cell;
        s.target_month = row.month;
        s.target = static_cast<double>(row.swarm_kernel_count);
        s.inputs.resize(window);
        for (int step = 0; step < window; ++step) {
            const int m = row.month.value - window + step;
            if (m < 0) continue;  // before the epoch: zero vector
            auto it = lookup.find(Key{m, row.cell.y, row.cell.x});
            if (it != lookup.end()) s.inputs[step] = it->second->features;
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

NormStats fit_normalizer(const std::vector<SequenceSample>& train_samples) {
    if (train_samples.empty()) {
        throw DataError("cannot fit normalizer on an empty training set");
    }
    NormStats stats;
    stats.mean.fill(0.0);
    stats.std.fill(1.0);

    // Continuous dims only; the rest keep identity stats.
    constexpr int kContinuousDims = 5;
    double sum[kContinuousDims] = {0};
    double sumsq[kContinuousDims] = {0};
    std::size_t n = 0;
    for (const auto& s : train_samples) {
        for (const auto& x : s.inputs) {
            for (int d = 0; d < kContinuousDims; ++d) {
                sum[d] += x[d];
                sumsq[d] += x[d] * x[d];
            }
            ++n;
        }
    }
    for (int d = 0; d < kContinuousDims; ++d) {
        const double mean = sum[d] / static_cast<double>(n);
        double var = sumsq[d] / static_cast<double>(n) - mean * mean;
        if (var < 0.0) var = 0.0;  // rounding guard
        stats.mean[d] = mean;
        stats.std[d] = std::max(std::sqrt(var), kStdFloor);
    }
    return stats;
}

SequenceSample apply_normalizer(const SequenceSample& sample, const NormStats& stats) {
    SequenceSample out = sample;
    for (auto& x : out.inputs) {
        for (int d = 0; d < kFeatureDim; ++d) {
            x[d] = (x[d] - stats.mean[d]) / stats.std[d];
        }
    }
    return out;  // target stays a raw count
}

std::vector<SequenceSample> apply_normalizer(const std::vector<SequenceSample>& samples,
                                             const NormStats& stats) {
    std::vector<SequenceSample> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(apply_normalizer(s, stats));
    return out;
}

std::vector<std::vector<std::size_t>> batches(std::size_t n_samples, std::size_t batch_size,
                                              std::uint64_t seed) {
    if (batch_size < 1) throw ConfigError("batch size must be >= 1");
    const std::vector<std::size_t> order = shuffled_indices(n_samples, seed);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t start = 0; start < n_samples; start += batch_size) {
        const std::size_t end = std::min(start + batch_size, n_samples);
        out.emplace_back(order.begin() + start, order.begin() + end);
    }
    return out;
}

namespace {
constexpr char kSeqMagic[4] = {'L', 'C', 'S', 'Q'};
constexpr std::uint32_t kSeqVersion = 1;
}  // namespace

void save_sequences(std::ostream& out, const std::vector<SequenceSample>& samples) {
    out.write(kSeqMagic, 4);
    put_u32_le(out, kSeqVersion);
    const std::uint32_t window = samples.empty() ? kDefaultWindow
                                                 : static_cast<std::uint32_t>(samples[0].inputs.size());
    put_u32_le(out, window);
    put_u32_le(out, kFeatureDim);
    put_u64_le(out, samples.size());
    for (const auto& s : samples) {
        put_u32_le(out, static_cast<std::uint32_t>(s.cell.x));
        put_u32_le(out, static_cast<std::uint32_t>(s.cell.y));
        put_u32_le(out, static_cast<std::uint32_t>(s.target_month.value));
        put_f64_le(out, s.target);
        for (const auto& x : s.inputs) {
            for (double v : x) put_f64_le(out, v);
        }
    }
}

std::vector<SequenceSample> load_sequences(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kSeqMagic, 4) != 0) {
        throw DataError("sequence cache: bad magic bytes");
    }
    const std::uint32_t version = get_u32_le(in, "sequence cache version");
    if (version != kSeqVersion) {
        throw DataError("sequence cache: unsupported version " + std::to_string(version));
    }
    const std::uint32_t window = get_u32_le(in, "sequence cache window");
    const std::uint32_t dim = get_u32_le(in, "sequence cache feature dim");
    if (dim != kFeatureDim) {
        throw DataError("sequence cache: feature dim " + std::to_string(dim) + ", expected " +
                        std::to_string(kFeatureDim));
    }
    const std::uint64_t count = get_u64_le(in, "sequence cache sample count");
    std::vector<SequenceSample> samples;
    samples.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        SequenceSample s;
        s.cell.x = static_cast<int>(get_u32_le(in, "sample cell_x"));
        s.cell.y = static_cast<int>(get_u32_le(in, "sample cell_y"));
        s.target_month.value = static_cast<int>(get_u32_le(in, "sample target_month"));
        s.target = get_f64_le(in, "sample target");
        s.inputs.resize(window);
        for (auto& x : s.inputs) {
            for (int d = 0; d < kFeatureDim; ++d) x[d] = get_f64_le(in, "sample inputs");
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace locust
