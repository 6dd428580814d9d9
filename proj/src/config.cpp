#include "locust/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace locust {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" +
                          value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + value + "'");
}

Date to_date(const std::string& key, const std::string& value) {
    try {
        return parse_date(value);
    } catch (const DataError& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void ToolkitConfig::validate() const {
    grid.validate();
    if (kernel_size < 1 || kernel_size % 2 == 0) {
        throw ConfigError("kernel_size must be odd and positive");
    }
    splits.validate();
    model.validate();
    if (window < 1) throw ConfigError("window must be >= 1");
    hyper.validate();
    training.validate();
    if (!std::isfinite(threshold)) throw ConfigError("threshold must be finite");
}

ToolkitConfig parse_config(std::istream& in) {
    ToolkitConfig cfg;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"lon_min", [&](auto& k, auto& v) { cfg.grid.bounds.lon_min = to_double(k, v); }},
        {"lon_max", [&](auto& k, auto& v) { cfg.grid.bounds.lon_max = to_double(k, v); }},
        {"lat_min", [&](auto& k, auto& v) { cfg.grid.bounds.lat_min = to_double(k, v); }},
        {"lat_max", [&](auto& k, auto& v) { cfg.grid.bounds.lat_max = to_double(k, v); }},
        {"grid_nx", [&](auto& k, auto& v) { cfg.grid.n_x = to_int(k, v); }},
        {"grid_ny", [&](auto& k, auto& v) { cfg.grid.n_y = to_int(k, v); }},
        {"kernel_size", [&](auto& k, auto& v) { cfg.kernel_size = to_int(k, v); }},
        {"col_lon", [&](auto&, auto& v) { cfg.columns.lon = v; }},
        {"col_lat", [&](auto&, auto& v) { cfg.columns.lat = v; }},
        {"col_date", [&](auto&, auto& v) { cfg.columns.date = v; }},
        {"col_category", [&](auto&, auto& v) { cfg.columns.category = v; }},
        {"col_vegetation", [&](auto&, auto& v) { cfg.columns.vegetation = v; }},
        {"col_soil_moisture", [&](auto&, auto& v) { cfg.columns.soil_moisture = v; }},
        {"synonyms_hopper", [&](auto&, auto& v) { cfg.synonyms.hopper = split_list(v); }},
        {"synonyms_band", [&](auto&, auto& v) { cfg.synonyms.band = split_list(v); }},
        {"synonyms_adult", [&](auto&, auto& v) { cfg.synonyms.adult = split_list(v); }},
        {"synonyms_swarm", [&](auto&, auto& v) { cfg.synonyms.swarm = split_list(v); }},
        {"train_start", [&](auto& k, auto& v) { cfg.splits.train_start = to_date(k, v); }},
        {"train_end", [&](auto& k, auto& v) { cfg.splits.train_end = to_date(k, v); }},
        {"val_start", [&](auto& k, auto& v) { cfg.splits.val_start = to_date(k, v); }},
        {"val_end", [&](auto& k, auto& v) { cfg.splits.val_end = to_date(k, v); }},
        {"test_start", [&](auto& k, auto& v) { cfg.splits.test_start = to_date(k, v); }},
        {"test_end", [&](auto& k, auto& v) { cfg.splits.test_end = to_date(k, v); }},
        {"hidden_dim", [&](auto& k, auto& v) { cfg.model.hidden_dim = to_int(k, v); }},
        {"raw_hidden_update",
         [&](auto& k, auto& v) { cfg.model.raw_hidden_update = to_bool(k, v); }},
        {"window", [&](auto& k, auto& v) { cfg.window = to_int(k, v); }},
        {"learning_rate", [&](auto& k, auto& v) { cfg.hyper.learning_rate = to_double(k, v); }},
        {"beta1", [&](auto& k, auto& v) { cfg.hyper.beta1 = to_double(k, v); }},
        {"beta2", [&](auto& k, auto& v) { cfg.hyper.beta2 = to_double(k, v); }},
        {"epsilon", [&](auto& k, auto& v) { cfg.hyper.epsilon = to_double(k, v); }},
        {"clip_norm",
         [&](auto& k, auto& v) {
             if (v == "none") {
                 cfg.hyper.clip_norm.reset();
             } else {
                 cfg.hyper.clip_norm = to_double(k, v);
             }
         }},
        {"epochs", [&](auto& k, auto& v) { cfg.training.epochs = to_int(k, v); }},
        {"batch_size", [&](auto& k, auto& v) { cfg.training.batch_size = to_int(k, v); }},
        {"seed", [&](auto& k, auto& v) { cfg.training.seed = to_u64(k, v); }},
        {"threshold", [&](auto& k, auto& v) { cfg.threshold = to_double(k, v); }},
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value, got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
        }
        it->second(key, value);
    }
    cfg.validate();
    return cfg;
}

ToolkitConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_config(in);
}

void write_config(std::ostream& out, const ToolkitConfig& cfg) {
    out << "# grid\n";
    out << "lon_min=" << format_double(cfg.grid.bounds.lon_min) << '\n';
    out << "lon_max=" << format_double(cfg.grid.bounds.lon_max) << '\n';
    out << "lat_min=" << format_double(cfg.grid.bounds.lat_min) << '\n';
    out << "lat_max=" << format_double(cfg.grid.bounds.lat_max) << '\n';
    out << "grid_nx=" << cfg.grid.n_x << '\n';
    out << "grid_ny=" << cfg.grid.n_y << '\n';
    out << "# ingestion\n";
    out << "kernel_size=" << cfg.kernel_size << '\n';
    out << "col_lon=" << cfg.columns.lon << '\n';
    out << "col_lat=" << cfg.columns.lat << '\n';
    out << "col_date=" << cfg.columns.date << '\n';
    out << "col_category=" << cfg.columns.category << '\n';
    out << "col_vegetation=" << cfg.columns.vegetation << '\n';
    out << "col_soil_moisture=" << cfg.columns.soil_moisture << '\n';
    out << "synonyms_hopper=" << join_list(cfg.synonyms.hopper) << '\n';
    out << "synonyms_band=" << join_list(cfg.synonyms.band) << '\n';
    out << "synonyms_adult=" << join_list(cfg.synonyms.adult) << '\n';
    out << "synonyms_swarm=" << join_list(cfg.synonyms.swarm) << '\n';
    out << "# date splits\n";
    out << "train_start=" << format_date(cfg.splits.train_start) << '\n';
    out << "train_end=" << format_date(cfg.splits.train_end) << '\n';
    out << "val_start=" << format_date(cfg.splits.val_start) << '\n';
    out << "val_end=" << format_date(cfg.splits.val_end) << '\n';
    out << "test_start=" << format_date(cfg.splits.test_start) << '\n';
    out << "test_end=" << format_date(cfg.splits.test_end) << '\n';
    out << "# model\n";
    out << "hidden_dim=" << cfg.model.hidden_dim << '\n';
    out << "raw_hidden_update=" << (cfg.model.raw_hidden_update ? "true" : "false")
        << '\n';
    out << "window=" << cfg.window << '\n';
    out << "# training\n";
    out << "learning_rate=" << format_double(cfg.hyper.learning_rate) << '\n';
    out << "beta1=" << format_double(cfg.hyper.beta1) << '\n';
    out << "beta2=" << format_double(cfg.hyper.beta2) << '\n';
    out << "epsilon=" << format_double(cfg.hyper.epsilon) << '\n';
    out << "clip_norm=" << (cfg.hyper.clip_norm ? format_double(*cfg.hyper.clip_norm) : "none")
        << '\n';
    out << "epochs=" << cfg.training.epochs << '\n';
    out << "batch_size=" << cfg.training.batch_size << '\n';
    out << "seed=" << cfg.training.seed << '\n';
    out << "# evaluation\n";
    out << "threshold=" << format_double(cfg.threshold) << '\n';
}

}  // namespace locust
