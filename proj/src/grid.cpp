#include "locust/grid.hpp"

#include <cmath>
#include <cstdio>

namespace locust {

namespace {

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int d[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return d[month - 1];
}

}  // namespace

bool is_valid_date(const Date& d) {
    if (d.month < 1 || d.month > 12) return false;
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return false;
    return true;
}

Date parse_date(const std::string& text) {
    Date d;
    char sep1 = 0, sep2 = 0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%d%c%d%c%d%n", &d.year, &sep1, &d.month, &sep2, &d.day,
                    &consumed) != 5 ||
        sep1 != sep2 || (sep1 != '-' && sep1 != '/')) {
        throw DataError("unparseable date: '" + text + "'");
    }
    if (!is_valid_date(d)) {
        throw DataError("invalid calendar date: '" + text + "'");
    }
    return d;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

void GeoBounds::validate() const {
    if (!(lon_min < lon_max)) {
        throw ConfigError("grid bounds require lon_min < lon_max");
    }
    if (!(lat_min < lat_max)) {
        throw ConfigError("grid bounds require lat_min < lat_max");
    }
}

void GridSpec::validate() const {
    bounds.validate();
    if (n_x < 1 || n_y < 1) {
        throw ConfigError("grid resolution must be at least 1x1");
    }
}

MonthIndex month_index(int year, int month) {
    if (month < 1 || month > 12) {
        throw DataError("month out of range: " + std::to_string(month));
    }
    const int v = (year - kEpochYear) * 12 + (month - 1);
    if (v < 0) {
        throw DataError("date " + std::to_string(year) + "-" + std::to_string(month) +
                        " precedes the January 1985 epoch");
    }
    return MonthIndex{v};
}

CellIndex locate_cell(double lon, double lat, const GridSpec& spec) {
    const GeoBounds& b = spec.bounds;
    if (!std::isfinite(lon) || !std::isfinite(lat)) {
        throw DataError("non-finite coordinate");
    }
    if (lon < b.lon_min || lon > b.lon_max) {
        throw DataError("longitude " + std::to_string(lon) + " outside grid bounds [" +
                        std::to_string(b.lon_min) + ", " + std::to_string(b.lon_max) + "]");
    }
    if (lat < b.lat_min || lat > b.lat_max) {
        throw DataError("latitude " + std::to_string(lat) + " outside grid bounds [" +
                        std::to_string(b.lat_min) + ", " + std::to_string(b.lat_max) + "]");
    }
    int x = static_cast<int>(std::floor((lon - b.lon_min) / (b.lon_max - b.lon_min) * spec.n_x));
    int y = static_cast<int>(std::floor((lat - b.lat_min) / (b.lat_max - b.lat_min) * spec.n_y));
    if (x >= spec.n_x) x = spec.n_x - 1;  // max-bound clamp
    if (y >= spec.n_y) y = spec.n_y - 1;
    return CellIndex{x, y};
}

std::vector<CellIndex> kernel_cells(CellIndex center, int k, const GridSpec& spec) {
    if (k < 1 || k % 2 == 0) {
        throw ConfigError("kernel size must be odd and positive, got " + std::to_string(k));
    }
    const int r = (k - 1) / 2;
    std::vector<CellIndex> out;
    out.reserve(static_cast<std::size_t>(k) * k);
    for (int dy = -r; dy <= r; ++dy) {
        const int y = center.y + dy;
        if (y < 0 || y >= spec.n_y) continue;
        for (int dx = -r; dx <= r; ++dx) {
            const int x = center.x + dx;
            if (x < 0 || x >= spec.n_x) continue;
            out.push_back(CellIndex{x, y});
        }
    }
    return out;
}

}  // namespace locust
