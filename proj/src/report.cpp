#include "locust/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace locust {

RasterFormat parse_raster_format(const std::string& name) {
    if (name == "csv-grid") return RasterFormat::CsvGrid;
    if (name == "pgm") return RasterFormat::Pgm;
    if (name == "ppm-density") return RasterFormat::PpmDensity;
    throw ConfigError("unknown raster format '" + name +
                      "' (expected csv-grid, pgm, or ppm-density)");
}

const char* raster_extension(RasterFormat format) {
    switch (format) {
        case RasterFormat::CsvGrid: return "csv";
        case RasterFormat::Pgm: return "pgm";
        case RasterFormat::PpmDensity: return "ppm";
    }
    throw ConfigError("unknown raster format");
}

namespace {

void month_range_of(const std::vector<CellMonthFeatures>& table, int& lo, int& hi) {
    if (table.empty()) throw DataError("raster: empty aggregated table");
    lo = std::numeric_limits<int>::max();
    hi = std::numeric_limits<int>::min();
    for (const auto& row : table) {
        lo = std::min(lo, row.month.value);
        hi = std::max(hi, row.month.value);
    }
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Raster raster_for_month(const std::vector<CellMonthFeatures>& table, MonthIndex month,
                        const GridSpec& spec) {
    int lo, hi;
    month_range_of(table, lo, hi);
    if (month.value < lo || month.value > hi) {
        throw DataError("raster: month " + std::to_string(month.value) +
                        " outside the table's range [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
    Raster r(spec.n_x, spec.n_y);
    for (const auto& row : table) {
        if (row.month == month) {
            if (row.cell.x < 0 || row.cell.x >= spec.n_x || row.cell.y < 0 ||
                row.cell.y >= spec.n_y) {
                throw DataError("table cell (" + std::to_string(row.cell.x) + ", " +
                                std::to_string(row.cell.y) + ") lies outside the configured grid");
            }
            r.at(row.cell.x, row.cell.y) = static_cast<double>(row.swarm_kernel_count);
        }
    }
    return r;
}

Raster raster_from_predictions(const std::vector<CellPrediction>& predictions,
                               const GridSpec& spec) {
    Raster r(spec.n_x, spec.n_y);
    for (const auto& p : predictions) {
        if (p.cell.x < 0 || p.cell.x >= spec.n_x || p.cell.y < 0 || p.cell.y >= spec.n_y) {
            throw DataError("prediction cell (" + std::to_string(p.cell.x) + ", " +
                            std::to_string(p.cell.y) + ") lies outside the configured grid");
        }
        r.at(p.cell.x, p.cell.y) = std::max(0.0, p.value);
    }
    return r;
}

void write_raster(std::ostream& out, const Raster& raster, RasterFormat format) {
    switch (format) {
        case RasterFormat::CsvGrid: {
            for (int y = 0; y < raster.height; ++y) {
                for (int x = 0; x < raster.width; ++x) {
                    if (x) out << ',';
                    out << format_value(raster.at(x, y));
                }
                out << '\n';
            }
            return;
        }
        case RasterFormat::Pgm: {
            double max_v = 0.0;
            for (double v : raster.values) max_v = std::max(max_v, v);
            out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
            for (double v : raster.values) {
                const int pixel =
                    max_v > 0.0
                        ? static_cast<int>(std::lround(std::clamp(v / max_v, 0.0, 1.0) * 255.0))
                        : 0;
                out.put(static_cast<char>(pixel));
            }
            return;
        }
        case RasterFormat::PpmDensity: {
            out << "P6\n" << raster.width << ' ' << raster.height << "\n255\n";
            for (double v : raster.values) {
                const long count = std::lround(v);
                unsigned char rgb[3] = {0, 0, 0};
                if (count >= 1) {
                    switch (density_bin(count)) {
                        case DensityBin::Low: rgb[0] = 128; rgb[1] = 0; rgb[2] = 128; break;
                        case DensityBin::Medium: rgb[0] = 255; rgb[1] = 0; rgb[2] = 0; break;
                        case DensityBin::High: rgb[0] = 255; rgb[1] = 255; rgb[2] = 0; break;
                    }
                }
                out.write(reinterpret_cast<const char*>(rgb), 3);
            }
            return;
        }
    }
    throw ConfigError("unknown raster format");
}

Raster parse_csv_grid(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
        if (!rows.empty() && row.size() != rows[0].size()) {
            throw DataError("csv-grid: ragged rows");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("csv-grid: empty input");
    Raster r(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int y = 0; y < r.height; ++y) {
        for (int x = 0; x < r.width; ++x) r.at(x, y) = rows[y][x];
    }
    return r;
}

std::vector<CellPrediction> predict_month(const std::vector<CellMonthFeatures>& table,
                                          MonthIndex target_month, const Checkpoint& ckpt,
                                          const GridSpec& spec, int window) {
    spec.validate();
    if (window < 1) throw ConfigError("prediction window must be >= 1");
    if (target_month.value < window) {
        throw DataError("target month " + std::to_string(target_month.value) +
                        " precedes the epoch by less than the " + std::to_string(window) +
                        "-month window");
    }
    if (ckpt.schema_version != kFeatureSchemaVersion) {
        throw DataError("predict: checkpoint feature schema version mismatch");
    }

    using Key = std::tuple<int, int, int>;  // (month, y, x)
    std::map<Key, const CellMonthFeatures*> lookup;
    std::map<CellIndex, bool> cells_with_history;
    for (const auto& row : table) {
        lookup[Key{row.month.value, row.cell.y, row.cell.x}] = &row;
        if (row.month.value >= target_month.value - window &&
            row.month.value < target_month.value) {
            cells_with_history[row.cell] = true;
        }
    }

    std::vector<CellPrediction> out;
    out.reserve(cells_with_history.size());
    for (const auto& [cell, unused] : cells_with_history) {
        SequenceSample s;
        s.cell = cell;
        s.target_month = target_month;
        s.inputs.resize(window);
        for (int step = 0; step < window; ++step) {
            const int m = target_month.value - window + step;
            auto it = lookup.find(Key{m, cell.y, cell.x});
            if (it != lookup.end()) s.inputs[step] = it->second->features;
        }
        const SequenceSample normed = apply_normalizer(s, ckpt.norm);
        const double z = predict(input_steps(normed), ckpt.params, ckpt.config);
        if (!std::isfinite(z)) {
            throw DivergenceError("non-finite prediction at cell (" + std::to_string(cell.x) +
                                  ", " + std::to_string(cell.y) + ")");
        }
        out.push_back(CellPrediction{cell, z});
    }
    return out;
}

Triptych triptych(MonthIndex month, const std::vector<CellMonthFeatures>& table,
                  const Checkpoint& ckpt, const GridSpec& spec, int window) {
    if (month.value < 1) {
        throw DataError("triptych needs a preceding month; got month index " +
                        std::to_string(month.value));
    }
    int lo, hi;
    month_range_of(table, lo, hi);
    if (month.value - 1 < lo || month.value > hi) {
        throw DataError("triptych: insufficient history around month " +
                        std::to_string(month.value) + " (table covers [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "])");
    }
    Triptych t;
    t.prev = raster_for_month(table, MonthIndex{month.value - 1}, spec);
    t.truth = raster_for_month(table, month, spec);
    t.pred = raster_from_predictions(predict_month(table, month, ckpt, spec, window), spec);
    return t;
}

std::vector<std::string> write_triptych(const std::string& stem, MonthIndex month,
                                        const Triptych& t, RasterFormat format) {
    char yyyymm[16];
    std::snprintf(yyyymm, sizeof yyyymm, "%04d%02d", year_of(month), month_of(month));
    const char* ext = raster_extension(format);
    const struct {
        const char* suffix;
        const Raster* raster;
    } parts[] = {{"prev", &t.prev}, {"truth", &t.truth}, {"pred", &t.pred}};

    std::vector<std::string> paths;
    for (const auto& part : parts) {
        std::string path = stem + "_" + yyyymm + "_" + part.suffix + "." + ext;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DataError("cannot open raster output file " + path);
        write_raster(out, *part.raster, format);
        paths.push_back(std::move(path));
    }
    return paths;
}

}  // namespace locust
