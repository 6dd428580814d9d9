#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "locust/report.hpp"

using namespace locust;

namespace {

GridSpec grid5() {
    GridSpec spec;
    spec.bounds = GeoBounds{0.0, 5.0, 0.0, 5.0};
    spec.n_x = 5;
    spec.n_y = 5;
    return spec;
}

CellMonthFeatures row_at(int x, int y, int month, long kernel) {
    CellMonthFeatures row;
    row.cell = CellIndex{x, y};
    row.month = MonthIndex{month};
    row.swarm_kernel_count = kernel;
    row.features[4] = static_cast<double>(kernel);
    row.features[14] = 1.0;
    return row;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("raster_for_month places kernel counts and zero-fills") {
    const auto spec = grid5();
    const std::vector<CellMonthFeatures> table = {row_at(1, 2, 100, 3), row_at(4, 4, 101, 7)};
    const Raster r = raster_for_month(table, MonthIndex{100}, spec);
    CHECK(r.width == 5);
    CHECK(r.height == 5);
    CHECK(r.at(1, 2) == 3.0);
    CHECK(r.at(4, 4) == 0.0);
    double sum = 0;
    for (double v : r.values) sum += v;
    CHECK(sum == 3.0);
}

TEST_CASE("a month with no entries inside the range is all zero") {
    const auto spec = grid5();
    const std::vector<CellMonthFeatures> table = {row_at(0, 0, 100, 1), row_at(0, 0, 102, 1)};
    const Raster r = raster_for_month(table, MonthIndex{101}, spec);
    for (double v : r.values) CHECK(v == 0.0);
}

TEST_CASE("table cells outside the configured grid are rejected") {
    const auto spec = grid5();
    const std::vector<CellMonthFeatures> table = {row_at(7, 1, 100, 1)};
    CHECK_THROWS_AS(raster_for_month(table, MonthIndex{100}, spec), DataError);
    CHECK_THROWS_AS(raster_from_predictions({{CellIndex{1, 9}, 1.0}}, spec), DataError);
}

TEST_CASE("months outside the table range error") {
    const auto spec = grid5();
    const std::vector<CellMonthFeatures> table = {row_at(0, 0, 100, 1)};
    CHECK_THROWS_AS(raster_for_month(table, MonthIndex{99}, spec), DataError);
    CHECK_THROWS_AS(raster_for_month(table, MonthIndex{101}, spec), DataError);
}

TEST_CASE("negative predictions clamp to zero in rasters") {
    const auto spec = grid5();
    const Raster r =
        raster_from_predictions({{CellIndex{2, 2}, -0.4}, {CellIndex{1, 1}, 2.5}}, spec);
    CHECK(r.at(2, 2) == 0.0);
    CHECK(r.at(1, 1) == 2.5);
}

TEST_CASE("csv-grid write/parse is the identity") {
    Raster r(4, 3);
    r.at(0, 0) = 1.25;
    r.at(3, 2) = -7.5;
    r.at(2, 1) = 0.3333333333333333;
    std::stringstream buf;
    write_raster(buf, r, RasterFormat::CsvGrid);
    const Raster back = parse_csv_grid(buf);
    CHECK(back.width == r.width);
    CHECK(back.height == r.height);
    CHECK(back.values == r.values);
}

TEST_CASE("pgm output scales the max to 255 and keeps zero rasters black") {
    Raster r(2, 2);
    SUBCASE("all zero") {
        std::stringstream buf;
        write_raster(buf, r, RasterFormat::Pgm);
        const std::string s = buf.str();
        const std::string pixels = s.substr(s.size() - 4);
        CHECK(pixels == std::string(4, '\0'));
    }
    SUBCASE("scaling preserves the argmax") {
        r.at(0, 0) = 2.0;
        r.at(1, 0) = 8.0;
        r.at(0, 1) = 4.0;
        std::stringstream buf;
        write_raster(buf, r, RasterFormat::Pgm);
        const std::string s = buf.str();
        REQUIRE(s.substr(0, 3) == "P5\n");
        const std::string pixels = s.substr(s.size() - 4);
        CHECK(static_cast<unsigned char>(pixels[1]) == 255);  // max cell
        CHECK(static_cast<unsigned char>(pixels[0]) == 64);   // 2/8 of 255
        CHECK(static_cast<unsigned char>(pixels[3]) == 0);
    }
}

TEST_CASE("ppm density colors match the bin thresholds") {
    Raster r(4, 1);
    r.at(0, 0) = 0.0;
    r.at(1, 0) = 1.0;
    r.at(2, 0) = 3.0;
    r.at(3, 0) = 9.0;
    std::stringstream buf;
    write_raster(buf, r, RasterFormat::PpmDensity);
    const std::string s = buf.str();
    REQUIRE(s.substr(0, 3) == "P6\n");
    const std::string pixels = s.substr(s.size() - 12);
    const unsigned char* px = reinterpret_cast<const unsigned char*>(pixels.data());
    CHECK((px[0] == 0 && px[1] == 0 && px[2] == 0));        // black
    CHECK((px[3] == 128 && px[4] == 0 && px[5] == 128));    // purple
    CHECK((px[6] == 255 && px[7] == 0 && px[8] == 0));      // red
    CHECK((px[9] == 255 && px[10] == 255 && px[11] == 0));  // yellow
}

TEST_CASE("ppm density agrees with the eval module's bins cellwise") {
    Raster r(9, 1);
    for (int x = 0; x < 9; ++x) r.at(x, 0) = x;  // 0..8
    std::stringstream buf;
    write_raster(buf, r, RasterFormat::PpmDensity);
    const std::string s = buf.str();
    const std::string pixels = s.substr(s.size() - 27);
    for (int x = 0; x < 9; ++x) {
        const unsigned char red = static_cast<unsigned char>(pixels[3 * x]);
        const unsigned char green = static_cast<unsigned char>(pixels[3 * x + 1]);
        if (x == 0) {
            CHECK(red == 0);
        } else {
            switch (density_bin(x)) {
                case DensityBin::Low: CHECK(red == 128); break;
                case DensityBin::Medium:
                    CHECK(red == 255);
                    CHECK(green == 0);
                    break;
                case DensityBin::High:
                    CHECK(red == 255);
                    CHECK(green == 255);
                    break;
            }
        }
    }
}

TEST_CASE("triptych on a zero model yields a zero prediction raster") {
    const auto spec = grid5();
    std::vector<CellMonthFeatures> table;
    for (int m = 100; m <= 113; ++m) table.push_back(row_at(2, 2, m, 2));
    Checkpoint ckpt;
    ckpt.config.hidden_dim = 3;
    ckpt.params = ModelParams::zeros(ckpt.config);

    const Triptych t = triptych(MonthIndex{113}, table, ckpt, spec);
    CHECK(t.prev.at(2, 2) == 2.0);
    CHECK(t.truth.at(2, 2) == 2.0);
    for (double v : t.pred.values) CHECK(v == 0.0);

    // Truth raster consistency with raster_for_month.
    const Raster direct = raster_for_month(table, MonthIndex{113}, spec);
    CHECK(t.truth.values == direct.values);
}

TEST_CASE("triptych without sufficient history errors") {
    const auto spec = grid5();
    const std::vector<CellMonthFeatures> table = {row_at(2, 2, 100, 2)};
    Checkpoint ckpt;
    ckpt.config.hidden_dim = 2;
    ckpt.params = ModelParams::zeros(ckpt.config);
    CHECK_THROWS_AS(triptych(MonthIndex{100}, table, ckpt, spec), DataError);
    CHECK_THROWS_AS(triptych(MonthIndex{0}, table, ckpt, spec), DataError);
}

TEST_CASE("predict_month covers exactly the cells with recent history") {
    const auto spec = grid5();
    std::vector<CellMonthFeatures> table;
    for (int m = 100; m < 112; ++m) table.push_back(row_at(1, 1, m, 1));
    table.push_back(row_at(3, 3, 111, 4));
    table.push_back(row_at(4, 0, 90, 4));  // too old for month 112's window
    Checkpoint ckpt;
    ckpt.config.hidden_dim = 2;
    ckpt.params = ModelParams::zeros(ckpt.config);
    const auto preds = predict_month(table, MonthIndex{112}, ckpt, spec);
    REQUIRE(preds.size() == 2);
    CHECK(preds[0].cell == CellIndex{1, 1});
    CHECK(preds[1].cell == CellIndex{3, 3});
}

TEST_CASE("predict_month rejects months inside the initial window") {
    const auto spec = grid5();
    const std::vector<CellMonthFeatures> table = {row_at(0, 0, 3, 1)};
    Checkpoint ckpt;
    ckpt.config.hidden_dim = 2;
    ckpt.params = ModelParams::zeros(ckpt.config);
    CHECK_THROWS_AS(predict_month(table, MonthIndex{5}, ckpt, spec), DataError);
}

TEST_CASE("triptych files carry the stem, month, and suffixes") {
    const auto spec = grid5();
    std::vector<CellMonthFeatures> table;
    for (int m = month_index(1993, 1).value; m <= month_index(1994, 6).value; ++m) {
        table.push_back(row_at(2, 2, m, 2));
    }
    Checkpoint ckpt;
    ckpt.config.hidden_dim = 2;
    ckpt.params = ModelParams::zeros(ckpt.config);
    const MonthIndex target = month_index(1994, 4);
    const Triptych t = triptych(target, table, ckpt, spec);
    const auto paths = write_triptych("/tmp/locust_test_trip", target, t, RasterFormat::CsvGrid);
    REQUIRE(paths.size() == 3);
    CHECK(paths[0] == "/tmp/locust_test_trip_199404_prev.csv");
    CHECK(paths[1] == "/tmp/locust_test_trip_199404_truth.csv");
    CHECK(paths[2] == "/tmp/locust_test_trip_199404_pred.csv");
    std::ifstream check(paths[2]);
    CHECK(check.good());
    for (const auto& p : paths) std::remove(p.c_str());
}

}  // TEST_SUITE
