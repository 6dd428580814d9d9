#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "locust/errors.hpp"

namespace locust {

// Calendar date. Month indexing starts at the epoch month, January 1985,
// the first month of the training range.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;
};

bool is_valid_date(const Date& d);

// Parses "YYYY-MM-DD" or "YYYY/MM/DD"; trailing time-of-day text after the
// day field is ignored (FAO exports carry timestamps).
Date parse_date(const std::string& text);

std::string format_date(const Date& d);

struct GeoBounds {
    double lon_min = 0.0;
    double lon_max = 0.0;
    double lat_min = 0.0;
    double lat_max = 0.0;

    void validate() const;

    bool operator==(const GeoBounds&) const = default;
};

struct GridSpec {
    GeoBounds bounds;
    int n_x = 100;
    int n_y = 100;

    void validate() const;

    bool operator==(const GridSpec&) const = default;
};

struct CellIndex {
    int x = 0;
    int y = 0;

    auto operator<=>(const CellIndex&) const = default;
};

constexpr int kEpochYear = 1985;
constexpr int kEpochMonth = 1;

// Months elapsed since January 1985.
struct MonthIndex {
    int value = 0;

    auto operator<=>(const MonthIndex&) const = default;
};

// (year - 1985) * 12 + (month - 1); dates before the epoch are rejected.
MonthIndex month_index(int year, int month);

inline int year_of(MonthIndex m) { return kEpochYear + m.value / 12; }
inline int month_of(MonthIndex m) { return 1 + m.value % 12; }  // 1..12
inline int month_of_year(MonthIndex m) { return m.value % 12; }  // 0 = January

// Proportional cell lookup; a coordinate exactly on the maximal bound clamps
// to the last index rather than erroring.
CellIndex locate_cell(double lon, double lat, const GridSpec& spec);

// All in-grid cells with Chebyshev distance <= (k-1)/2 from center; windows
// clip at grid edges, no wraparound. k must be odd and positive.
std::vector<CellIndex> kernel_cells(CellIndex center, int k, const GridSpec& spec);

}  // namespace locust
