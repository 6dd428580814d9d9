#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locust/grid.hpp"

namespace locust {

enum class LocustCategory { Hopper = 0, Band = 1, Adult = 2, Swarm = 3 };
enum class Vegetation { Unknown = 0, Dry = 1, Greening = 2, Green = 3 };
enum class SoilMoisture { Unknown = 0, Dry = 1, Wet = 2 };

struct EcologyAttrs {
    Vegetation vegetation = Vegetation::Unknown;
    SoilMoisture soil_moisture = SoilMoisture::Unknown;
};

struct ObservationRecord {
    double lon = 0.0;
    double lat = 0.0;
    int year = 0;
    int month = 0;
    int day = 0;
    LocustCategory category = LocustCategory::Hopper;
    EcologyAttrs ecology;
    std::size_t source_line = 0;  // 1-based physical line in the source CSV
};

struct ParseDiagnostic {
    std::size_t line = 0;
    std::string reason;
};

// Column names in the raw export; defaults match the FAO Locust Hub files
// (plus the "Locust type" column merged exports carry).
struct ColumnMapping {
    std::string lon = "X";
    std::string lat = "Y";
    std::string date = "STARTDATE";
    std::string category = "Locust type";
    std::string vegetation = "VEGETATION";     // optional in the data
    std::string soil_moisture = "SOILMOISTURE";  // optional in the data

    bool operator==(const ColumnMapping&) const = default;
};

// Case-insensitive synonym lists for the four categories.
struct CategorySynonyms {
    std::vector<std::string> hopper = {"hopper", "hoppers"};
    std::vector<std::string> band = {"band", "bands", "hopper band"};
    std::vector<std::string> adult = {"adult", "adults"};
    std::vector<std::string> swarm = {"swarm", "swarms"};

    bool operator==(const CategorySynonyms&) const = default;
};

LocustCategory classify_category(const std::string& raw, const CategorySynonyms& synonyms);

// Unparseable ecology values map to Unknown, never to a diagnostic.
Vegetation parse_vegetation(const std::string& raw);
SoilMoisture parse_soil_moisture(const std::string& raw);

struct ParseResult {
    std::vector<ObservationRecord> records;
    std::vector<ParseDiagnostic> diagnostics;
};

// Streaming CSV reader: one header row, comma separated, RFC-4180 quoting
// (embedded commas, doubled quotes, embedded newlines). Every data row ends
// up as exactly one record or one diagnostic. A mapped coordinate/date/
// category column missing from the header is a fatal ConfigError.
ParseResult parse_records(std::istream& in, const ColumnMapping& columns,
                          const CategorySynonyms& synonyms);

// Fixed 15-dimensional feature layout (schema version below):
//   0..3   counts of Hopper, Band, Adult, Swarm records
//   4      swarm_kernel_count (KxK neighborhood sum of swarm counts)
//   5..8   modal vegetation one-hot (Unknown, Dry, Greening, Green)
//   9..11  modal soil-moisture one-hot (Unknown, Dry, Wet)
//   12,13  sin/cos of 2*pi*(month-of-year)/12, January = 0
//   14     observation-presence flag (1 for every emitted row)
constexpr int kFeatureDim = 15;
constexpr std::uint32_t kFeatureSchemaVersion = 1;

struct CellMonthFeatures {
    CellIndex cell;
    MonthIndex month;
    std::array<double, kFeatureDim> features{};
    long swarm_count = 0;
    long swarm_kernel_count = 0;
};

// One row per (cell, month) holding at least one record; rows ordered
// month-major, then y, then x. k is the kernel size (odd). Records must be
// in bounds; out-of-bounds coordinates throw, so callers filter first (see
// filter_in_bounds).
std::vector<CellMonthFeatures> aggregate_monthly(const std::vector<ObservationRecord>& records,
                                                 const GridSpec& spec, int k);

// Splits records into in-bounds survivors and per-record diagnostics for the
// rest. cmd_ingest runs this ahead of aggregation.
std::vector<ObservationRecord> filter_in_bounds(const std::vector<ObservationRecord>& records,
                                                const GridSpec& spec,
                                                std::vector<ParseDiagnostic>& diagnostics);

// Aggregated-table CSV with the fixed header
// cell_x,cell_y,month_index,f0..f14,swarm_count,swarm_kernel_count.
void write_table(std::ostream& out, const std::vector<CellMonthFeatures>& rows);
std::vector<CellMonthFeatures> read_table(std::istream& in);

void write_diagnostics(std::ostream& out, const std::vector<ParseDiagnostic>& diagnostics);

}  // namespace locust
