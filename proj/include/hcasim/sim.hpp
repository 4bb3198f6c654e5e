#pragma once

#include "hcasim/admission.hpp"
#include "hcasim/hexgrid.hpp"
#include "hcasim/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hcasim {

struct TrafficProfile {
    std::vector<double> arrival_rates; // calls per hour, one per cell
    double mean_holding = 180.0;       // seconds
    double load_multiplier = 1.0;

    double offered_erlangs() const;

    bool operator==(const TrafficProfile&) const = default;
};

// Non-uniform 49-cell benchmark pattern with a hot center and a secondary
// hot corner, 9180 calls/hour in total (459 Erlangs at multiplier 1 and
// 180 s holding).
std::vector<double> benchmark_arrival_pattern();

// Benchmark pattern on the 7x7 grid, uniform 160 calls/hour otherwise.
TrafficProfile default_traffic(int rows, int cols);

struct SimConfig {
    std::uint64_t seed = 1;
    double duration = 50000.0; // seconds
    double warmup = -1.0;      // seconds; negative means 10% of duration

    int rows = 7;
    int cols = 7;
    GainModel gain;

    int total_channels = 70;
    int fc_channels = 21;
    int cluster_size = 7;

    double gamma0 = 2.0;
    double noise = 0.01;
    double power_cap = 10.0;

    Policy policy;
    TrafficProfile traffic = default_traffic(rows, cols);

    bool audit_cir = false; // re-verify every channel after every event

    double warmup_or_default() const { return warmup < 0.0 ? 0.1 * duration : warmup; }
    // Throws std::invalid_argument on out-of-range values.
    void validate() const;

    bool operator==(const SimConfig&) const = default;
};

struct Metrics {
    std::uint64_t arrivals = 0; // post-warmup
    std::uint64_t admitted = 0;
    std::uint64_t blocked = 0;
    std::uint64_t admitted_fc = 0;
    std::uint64_t admitted_dc = 0;
    std::vector<std::uint64_t> arrivals_per_cell;
    std::vector<std::uint64_t> blocked_per_cell;

    double blocking_probability = 0.0;
    bool no_arrivals = false;

    double mean_total_power = 0.0; // time-weighted, post-warmup
    double peak_total_power = 0.0;

    std::uint64_t live_at_end = 0;
    std::uint64_t audit_violations = 0;

    bool operator==(const Metrics&) const = default;
};

struct RunResult {
    Metrics metrics;
    NetworkState state; // final snapshot, e.g. for allocation/power dumps
};

Metrics run(const SimConfig& config);
RunResult run_with_state(const SimConfig& config);

enum class SweepAxis { load_multiplier, gamma0, ratio };

struct SweepPoint {
    double value = 0.0;
    Metrics metrics;
};

// Runs one simulation per value; run i uses seed base.seed ^ i so point 0
// reproduces run(base) exactly.
std::vector<SweepPoint> sweep(const SimConfig& base, SweepAxis axis,
                              const std::vector<double>& values);

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

} // namespace hcasim
