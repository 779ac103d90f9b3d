#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "cpexp/model.hpp"
#include "cpexp/rng.hpp"

namespace cpexp {

// Exact event-driven simulation: Exp(c) waits between jumps, each jump
// downward Exp(lambda) with probability a, otherwise an upward draw from
// eta.  Paths are piecewise constant, so no time discretisation enters
// anywhere; every sampled functional is exact in law.
struct SimConfig {
    std::uint64_t paths = 100000;
    std::uint64_t seed = 1;
    std::uint64_t max_jumps = 1000000;
    bool antithetic = false;
};

enum class ExitSide { down, up };

struct ExitSample {
    double time;
    ExitSide side;
    double position;   // level at exit, strictly outside [0, band]
    double overshoot;  // distance past the crossed boundary
    std::uint64_t jumps;
};

struct PassageSample {
    bool crossed;      // false when censored at the horizon
    double time;
    double overshoot;
    std::uint64_t jumps;
};

struct EntrySample {
    bool entered;      // false when censored at the horizon
    double time;
    double position;   // entry point in [0, band] when entered
    std::uint64_t jumps;
};

struct ExtremaSample {
    double sup;
    double inf;
};

struct MCEstimate {
    double mean;
    double std_error;
    std::uint64_t paths;
};

inline constexpr double no_horizon = std::numeric_limits<double>::infinity();

// First exit from [0, band] started at start inside; exit is strict, a
// boundary touch stays inside.  Throws path_budget_error past max_jumps.
ExitSample sample_exit(const ProcessParams& params, double band, double start,
                       PathRng& rng, std::uint64_t max_jumps);

// One-sided passages from 0: up crosses strictly above level, down
// strictly below -level; censored at the horizon.
PassageSample sample_passage_up(const ProcessParams& params, double level, double horizon,
                                PathRng& rng, std::uint64_t max_jumps);
PassageSample sample_passage_down(const ProcessParams& params, double level, double horizon,
                                  PathRng& rng, std::uint64_t max_jumps);

// First entry into the closed band [0, band] from any start height; a
// start inside first exits and the clock keeps running until re-entry.
EntrySample sample_entry(const ProcessParams& params, double band, double start,
                         double horizon, PathRng& rng, std::uint64_t max_jumps);

// Running extremes over an independent Exp(s) window.
ExtremaSample sample_extrema(const ProcessParams& params, double s, PathRng& rng,
                             std::uint64_t max_jumps);

// Mean and standard error of a per-path functional over config.paths
// paths.  Path i draws from the stream (seed, i); with antithetic on,
// odd streams reuse stream i/2 with the direction draw mirrored.  The
// reduction is a sequential compensated sum over the stored per-path
// values, so the estimate is bitwise independent of the thread count.
MCEstimate estimate(const SimConfig& config, unsigned threads,
                    const std::function<double(PathRng&)>& functional);

}
