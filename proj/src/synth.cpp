#include "locust/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "locust/rng.hpp"

namespace locust {

void SynthScenario::validate() const {
    if (grid_nx < 2 || grid_ny < 2) throw ConfigError("synth grid must be at least 2x2");
    if (months < 1) throw ConfigError("synth needs at least one month");
    if (!is_valid_date(start)) throw ConfigError("synth start date is invalid");
    if (blob_amplitude < 0.0 || blob_sigma <= 0.0) {
        throw ConfigError("synth blob amplitude must be >= 0 and sigma > 0");
    }
    if (hopper_scale < 0.0 || adult_background < 0.0) {
        throw ConfigError("synth category rates must be >= 0");
    }
}

namespace {

// Torus distance keeps intensity smooth when the blob wraps around an edge.
double torus_delta(double a, double b, double extent) {
    double d = std::fabs(a - b);
    return std::min(d, extent - d);
}

double wrap(double v, double extent) {
    double w = std::fmod(v, extent);
    if (w < 0.0) w += extent;
    return w;
}

struct BlobModel {
    const SynthScenario& sc;

    double season(int m) const {
        const int moy = m % 12;
        return 1.0 + sc.seasonal_amplitude *
                         std::sin(2.0 * std::numbers::pi * static_cast<double>(moy) / 12.0);
    }

    double center_x(int m) const { return wrap(sc.start_x + sc.drift_x * m, sc.grid_nx); }
    double center_y(int m) const { return wrap(sc.start_y + sc.drift_y * m, sc.grid_ny); }

    double gaussian_at(int m, int x, int y, double sigma) const {
        const double dx = torus_delta(x + 0.5, center_x(m), sc.grid_nx);
        const double dy = torus_delta(y + 0.5, center_y(m), sc.grid_ny);
        const double d2 = dx * dx + dy * dy;
        return sc.blob_amplitude * season(m) * std::exp(-d2 / (2.0 * sigma * sigma));
    }

    double swarm_intensity(int m, int x, int y) const {
        return gaussian_at(m, x, y, sc.blob_sigma);
    }

    // Hoppers lead the blob by one month over a wider footprint: the
    // precursor signal cells see before swarms arrive.
    double hopper_intensity(int m, int x, int y) const {
        const int lead = std::min(m + 1, sc.months - 1);
        return sc.hopper_scale *
               gaussian_at(lead, x, y, sc.blob_sigma * sc.hopper_sigma_scale);
    }
};

}  // namespace

void write_synth_csv(std::ostream& out, const SynthScenario& scenario, std::uint64_t seed) {
    scenario.validate();
    Rng rng(seed);
    const BlobModel blob{scenario};

    out << "X,Y,STARTDATE,Locust type,VEGETATION,SOILMOISTURE\n";

    char datebuf[24];
    auto emit = [&](int m, int x, int y, const char* category, double intensity) {
        // Point jittered inside the cell; one degree per cell anchored at 0.
        const double lon = x + rng.uniform();
        const double lat = y + rng.uniform();
        const int months_total = (scenario.start.year * 12 + scenario.start.month - 1) + m;
        const int year = months_total / 12;
        const int month = months_total % 12 + 1;
        const int day = 1 + static_cast<int>(rng.uniform_int(28));
        std::snprintf(datebuf, sizeof datebuf, "%04d-%02d-%02d", year, month, day);

        const char* vegetation = "DRY";
        if (intensity > 0.5) {
            vegetation = rng.uniform() < 0.7 ? "GREEN" : "GREENING";
        } else if (intensity > 0.05 && rng.uniform() < 0.4) {
            vegetation = "GREENING";
        }
        const char* soil = intensity > 0.5 && rng.uniform() < 0.6 ? "WET" : "DRY";

        out << lon << ',' << lat << ',' << datebuf << ',' << category << ',' << vegetation << ','
            << soil << '\n';
    };

    for (int m = 0; m < scenario.months; ++m) {
        for (int y = 0; y < scenario.grid_ny; ++y) {
            for (int x = 0; x < scenario.grid_nx; ++x) {
                const double swarm_rate = blob.swarm_intensity(m, x, y);
                const long swarms = rng.poisson(swarm_rate);
                for (long i = 0; i < swarms; ++i) emit(m, x, y, "Swarm", swarm_rate);

                const double hopper_rate = blob.hopper_intensity(m, x, y);
                const long hoppers = rng.poisson(hopper_rate);
                for (long i = 0; i < hoppers; ++i) emit(m, x, y, "Hopper", hopper_rate);

                const long adults = rng.poisson(scenario.adult_background);
                for (long i = 0; i < adults; ++i) emit(m, x, y, "Adult", swarm_rate);
            }
        }
    }
}

}  // namespace locust
