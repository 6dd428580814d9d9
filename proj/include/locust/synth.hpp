#pragma once

#include <cstdint>
#include <iosfwd>

#include "locust/grid.hpp"

namespace locust {

// Drifting 2-D Gaussian swarm-intensity blob over a small grid with
// seasonal modulation. The generated CSV uses the default export schema, so
// it feeds straight into the ingest command. One degree per cell.
struct SynthScenario {
    int grid_nx = 30;
    int grid_ny = 30;
    int months = 120;
    Date start{1985, 1, 1};

    double blob_amplitude = 8.0;   // peak expected swarms per cell-month
    double blob_sigma = 1.8;       // blob radius, in cells
    double start_x = 5.0;          // initial blob center
    double start_y = 15.0;
    double drift_x = 1.0;          // cells per month, torus wraparound
    double drift_y = 0.0;
    double seasonal_amplitude = 0.4;  // relative intensity swing over the year

    double hopper_scale = 0.6;       // hopper intensity relative to next month's blob
    double hopper_sigma_scale = 1.5;  // hopper field width relative to the blob's
    double adult_background = 0.04;   // uniform per-cell adult rate

    void validate() const;
};

// Deterministic for a fixed (scenario, seed): identical bytes out.
void write_synth_csv(std::ostream& out, const SynthScenario& scenario, std::uint64_t seed);

}  // namespace locust
