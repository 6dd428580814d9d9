#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "locust/eval.hpp"

namespace locust {

struct Raster {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // row-major, index y * width + x

    Raster() = default;
    Raster(int w, int h) : width(w), height(h), values(static_cast<std::size_t>(w) * h, 0.0) {}

    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

enum class RasterFormat { CsvGrid = 0, Pgm = 1, PpmDensity = 2 };

RasterFormat parse_raster_format(const std::string& name);
const char* raster_extension(RasterFormat format);

// Ground-truth raster: swarm_kernel_count per cell for one month; cells
// without a row are 0. month must lie within the table's month range.
Raster raster_for_month(const std::vector<CellMonthFeatures>& table, MonthIndex month,
                        const GridSpec& spec);

struct CellPrediction {
    CellIndex cell;
    double value = 0.0;
};

// Prediction raster: values clamped below at 0; cells without a prediction
// are 0.
Raster raster_from_predictions(const std::vector<CellPrediction>& predictions,
                               const GridSpec& spec);

// csv-grid: height rows of width comma-separated values, row y = 0 first.
// pgm: binary 8-bit grayscale, linearly scaled so the raster max maps to
// 255 (an all-zero raster stays all zero).
// ppm-density: one color per density bin of the value rounded to the
// nearest integer: 0 -> black (0,0,0), Low -> purple (128,0,128), Medium ->
// red (255,0,0), High -> yellow (255,255,0).
void write_raster(std::ostream& out, const Raster& raster, RasterFormat format);

// Inverse of the csv-grid format.
Raster parse_csv_grid(std::istream& in);

// Per-cell one-month-ahead predictions for target_month: each cell with at
// least one aggregated row in the preceding window months gets a forward
// pass over its recent history (raw features, normalized with the
// checkpoint's stats).
std::vector<CellPrediction> predict_month(const std::vector<CellMonthFeatures>& table,
                                          MonthIndex target_month, const Checkpoint& ckpt,
                                          const GridSpec& spec, int window = kDefaultWindow);

struct Triptych {
    Raster prev;   // observation at month - 1
    Raster truth;  // ground truth at month
    Raster pred;   // model prediction for month
};

// month must be >= 1 with both month and month-1 inside the table's range.
Triptych triptych(MonthIndex month, const std::vector<CellMonthFeatures>& table,
                  const Checkpoint& ckpt, const GridSpec& spec, int window = kDefaultWindow);

// Writes <stem>_<yyyymm>_{prev,truth,pred}.<ext>; returns the three paths.
std::vector<std::string> write_triptych(const std::string& stem, MonthIndex month,
                                        const Triptych& t, RasterFormat format);

}  // namespace locust
