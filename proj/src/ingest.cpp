#include "locust/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

namespace locust {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double_field(const std::string& raw, const char* what) {
    const std::string t = trim(raw);
    if (t.empty()) throw DataError(std::string("empty ") + what + " field");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw DataError(std::string("unparseable ") + what + ": '" + raw + "'");
    }
    return v;
}

// Reads one CSV record (RFC-4180 quoting: embedded commas, doubled quotes,
// embedded newlines). Returns false at end of input. line counts physical
// lines; start_line reports where the record began.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line,
                     std::size_t& start_line) {
    fields.clear();
    int c = in.get();
    if (c == EOF) return false;
    ++line;
    start_line = line;
    std::string field;
    bool quoted = false;
    bool any = false;
    while (true) {
        if (c == EOF) {
            fields.push_back(field);
            return true;
        }
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                const int next = in.peek();
                if (next == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty() && !any) {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            fields.push_back(field);
            field.clear();
            any = false;
        } else if (ch == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(field);
            return true;
        } else {
            field.push_back(ch);
            any = true;
        }
        c = in.get();
    }
}

std::optional<LocustCategory> match_category(const std::string& lowered,
                                             const CategorySynonyms& synonyms) {
    auto matches = [&](const std::vector<std::string>& list) {
        for (const auto& s : list) {
            if (lowered == to_lower(s)) return true;
        }
        return false;
    };
    if (matches(synonyms.hopper)) return LocustCategory::Hopper;
    if (matches(synonyms.band)) return LocustCategory::Band;
    if (matches(synonyms.adult)) return LocustCategory::Adult;
    if (matches(synonyms.swarm)) return LocustCategory::Swarm;
    return std::nullopt;
}

}  // namespace

LocustCategory classify_category(const std::string& raw, const CategorySynonyms& synonyms) {
    const auto m = match_category(to_lower(trim(raw)), synonyms);
    if (!m) throw DataError("unrecognized locust category: '" + raw + "'");
    return *m;
}

Vegetation parse_vegetation(const std::string& raw) {
    const std::string t = to_lower(trim(raw));
    if (t == "dry") return Vegetation::Dry;
    if (t == "greening") return Vegetation::Greening;
    if (t == "green") return Vegetation::Green;
    return Vegetation::Unknown;
}

SoilMoisture parse_soil_moisture(const std::string& raw) {
    const std::string t = to_lower(trim(raw));
    if (t == "dry") return SoilMoisture::Dry;
    if (t == "wet" || t == "moist") return SoilMoisture::Wet;
    return SoilMoisture::Unknown;
}

ParseResult parse_records(std::istream& in, const ColumnMapping& columns,
                          const CategorySynonyms& synonyms) {
    // Strip a UTF-8 BOM if present.
    if (in.peek() == 0xEF) {
        char bom[3];
        in.read(bom, 3);
        if (in.gcount() != 3 || bom[1] != char(0xBB) || bom[2] != char(0xBF)) {
            throw DataError("input starts with a malformed byte-order mark");
        }
    }

    std::vector<std::string> fields;
    std::size_t line = 0, start_line = 0;
    if (!read_csv_record(in, fields, line, start_line)) {
        throw DataError("input CSV has no header row");
    }

    std::map<std::string, std::size_t> header;
    for (std::size_t i = 0; i < fields.size(); ++i) header[trim(fields[i])] = i;

    auto require = [&](const std::string& name) {
        auto it = header.find(name);
        if (it == header.end()) {
            throw ConfigError("mapped column '" + name + "' not found in CSV header");
        }
        return it->second;
    };
    const std::size_t col_lon = require(columns.lon);
    const std::size_t col_lat = require(columns.lat);
    const std::size_t col_date = require(columns.date);
    const std::size_t col_cat = require(columns.category);
    // Ecology columns are allowed to be absent; their values become Unknown.
    auto optional_col = [&](const std::string& name) -> std::optional<std::size_t> {
        auto it = header.find(name);
        if (it == header.end()) return std::nullopt;
        return it->second;
    };
    const auto col_veg = optional_col(columns.vegetation);
    const auto col_soil = optional_col(columns.soil_moisture);
    const std::size_t ncols = fields.size();

    ParseResult result;
    while (read_csv_record(in, fields, line, start_line)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != ncols) {
            result.diagnostics.push_back(
                {start_line, "expected " + std::to_string(ncols) + " fields, got " +
                                 std::to_string(fields.size())});
            continue;
        }
        try {
            ObservationRecord rec;
            rec.source_line = start_line;
            rec.lon = parse_double_field(fields[col_lon], "longitude");
            rec.lat = parse_double_field(fields[col_lat], "latitude");
            const Date d = parse_date(trim(fields[col_date]));
            month_index(d.year, d.month);  // reject pre-epoch dates here
            rec.year = d.year;
            rec.month = d.month;
            rec.day = d.day;
            rec.category = classify_category(fields[col_cat], synonyms);
            if (col_veg) rec.ecology.vegetation = parse_vegetation(fields[*col_veg]);
            if (col_soil) rec.ecology.soil_moisture = parse_soil_moisture(fields[*col_soil]);
            result.records.push_back(rec);
        } catch (const DataError& e) {
            result.diagnostics.push_back({start_line, e.what()});
        }
    }
    return result;
}

std::vector<ObservationRecord> filter_in_bounds(const std::vector<ObservationRecord>& records,
                                                const GridSpec& spec,
                                                std::vector<ParseDiagnostic>& diagnostics) {
    std::vector<ObservationRecord> kept;
    kept.reserve(records.size());
    for (const auto& rec : records) {
        try {
            locate_cell(rec.lon, rec.lat, spec);
            kept.push_back(rec);
        } catch (const DataError& e) {
            diagnostics.push_back({rec.source_line, e.what()});
        }
    }
    return kept;
}

namespace {

struct CellMonthGroup {
    long category_counts[4] = {0, 0, 0, 0};
    long vegetation_counts[4] = {0, 0, 0, 0};
    long soil_counts[3] = {0, 0, 0};
};

// First maximum in enumeration order wins ties.
template <std::size_t N>
std::size_t modal_index(const long (&counts)[N]) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < N; ++i) {
        if (counts[i] > counts[best]) best = i;
    }
    return best;
}

}  // namespace

std::vector<CellMonthFeatures> aggregate_monthly(const std::vector<ObservationRecord>& records,
                                                 const GridSpec& spec, int k) {
    spec.validate();
    if (k < 1 || k % 2 == 0) {
        throw ConfigError("kernel size must be odd and positive, got " + std::to_string(k));
    }

    // Keyed month-major, then y, then x: iteration order is the output order.
    using Key = std::tuple<int, int, int>;
    std::map<Key, CellMonthGroup> groups;
    for (const auto& rec : records) {
        const CellIndex cell = locate_cell(rec.lon, rec.lat, spec);
        const MonthIndex m = month_index(rec.year, rec.month);
        CellMonthGroup& g = groups[Key{m.value, cell.y, cell.x}];
        g.category_counts[static_cast<int>(rec.category)]++;
        g.vegetation_counts[static_cast<int>(rec.ecology.vegetation)]++;
        g.soil_counts[static_cast<int>(rec.ecology.soil_moisture)]++;
    }

    std::vector<CellMonthFeatures> rows;
    rows.reserve(groups.size());
    for (const auto& [key, g] : groups) {
        const auto [month, y, x] = key;
        CellMonthFeatures row;
        row.cell = CellIndex{x, y};
        row.month = MonthIndex{month};
        row.swarm_count = g.category_counts[static_cast<int>(LocustCategory::Swarm)];

        long kernel_sum = 0;
        for (const CellIndex& nb : kernel_cells(row.cell, k, spec)) {
            auto it = groups.find(Key{month, nb.y, nb.x});
            if (it != groups.end()) {
                kernel_sum += it->second.category_counts[static_cast<int>(LocustCategory::Swarm)];
            }
        }
        row.swarm_kernel_count = kernel_sum;

        for (int c = 0; c < 4; ++c) row.features[c] = static_cast<double>(g.category_counts[c]);
        row.features[4] = static_cast<double>(kernel_sum);
        row.features[5 + modal_index(g.vegetation_counts)] = 1.0;
        row.features[9 + modal_index(g.soil_counts)] = 1.0;
        const double phase =
            2.0 * std::numbers::pi * month_of_year(row.month) / 12.0;
        row.features[12] = std::sin(phase);
        row.features[13] = std::cos(phase);
        row.features[14] = 1.0;
        rows.push_back(row);
    }
    return rows;
}

namespace {

const char* kTableHeader =
    "cell_x,cell_y,month_index,f0,f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,f11,f12,f13,f14,"
    "swarm_count,swarm_kernel_count";

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_table(std::ostream& out, const std::vector<CellMonthFeatures>& rows) {
    out << kTableHeader << '\n';
    for (const auto& row : rows) {
        out << row.cell.x << ',' << row.cell.y << ',' << row.month.value;
        for (double f : row.features) out << ',' << format_double(f);
        out << ',' << row.swarm_count << ',' << row.swarm_kernel_count << '\n';
    }
}

std::vector<CellMonthFeatures> read_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw DataError("aggregated table is empty");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != kTableHeader) {
        throw DataError("aggregated table header mismatch; expected '" +
                        std::string(kTableHeader) + "'");
    }
    std::vector<CellMonthFeatures> rows;
    std::string linetext;
    std::size_t lineno = 1;
    while (std::getline(in, linetext)) {
        ++lineno;
        if (!linetext.empty() && linetext.back() == '\r') linetext.pop_back();
        if (linetext.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(linetext);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (!linetext.empty() && linetext.back() == ',') fields.push_back("");
        if (fields.size() != 3 + kFeatureDim + 2) {
            throw DataError("aggregated table line " + std::to_string(lineno) +
                            ": wrong field count");
        }
        try {
            CellMonthFeatures row;
            row.cell.x = static_cast<int>(parse_double_field(fields[0], "cell_x"));
            row.cell.y = static_cast<int>(parse_double_field(fields[1], "cell_y"));
            row.month.value = static_cast<int>(parse_double_field(fields[2], "month_index"));
            for (int i = 0; i < kFeatureDim; ++i) {
                row.features[i] = parse_double_field(fields[3 + i], "feature");
            }
            row.swarm_count =
                static_cast<long>(parse_double_field(fields[3 + kFeatureDim], "swarm_count"));
            row.swarm_kernel_count = static_cast<long>(
                parse_double_field(fields[4 + kFeatureDim], "swarm_kernel_count"));
            rows.push_back(row);
        } catch (const DataError& e) {
            throw DataError("aggregated table line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

void write_diagnostics(std::ostream& out, const std::vector<ParseDiagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        out << "line " << d.line << ": " << d.reason << '\n';
    }
}

}  // namespace locust
