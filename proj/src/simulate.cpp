#include "cpexp/simulate.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cpexp/compensated.hpp"
#include "cpexp/errors.hpp"

namespace cpexp {

namespace {

// Single path state.  Draw order per jump is fixed (wait, direction,
// size) so streams replay identically across samplers.
struct Walker {
    const ProcessParams& params;
    PathRng& rng;
    std::uint64_t max_jumps;
    double t = 0.0;
    double x;
    std::uint64_t jumps = 0;

    Walker(const ProcessParams& p, PathRng& r, std::uint64_t cap, double start)
        : params(p), rng(r), max_jumps(cap), x(start) {}

    // Returns false when the next jump would land past the horizon; the
    // path state is then frozen at the pre-jump value.
    bool step(double horizon) {
        if (jumps >= max_jumps)
            throw path_budget_error("simulation: path exceeded its jump budget");
        const double wait = rng.exponential(params.c);
        if (t + wait > horizon) return false;
        t += wait;
        ++jumps;
        if (rng.direction_uniform() < params.a)
            x -= rng.exponential(params.lambda);
        else
            x += params.eta.sample(rng);
        return true;
    }
};

void check_band(double band) {
    if (!(band > 0.0) || !std::isfinite(band))
        throw std::invalid_argument("simulation: band width must be positive and finite");
}

}

ExitSample sample_exit(const ProcessParams& params, double band, double start,
                       PathRng& rng, std::uint64_t max_jumps) {
    check_band(band);
    if (!(start >= 0.0) || !(start <= band))
        throw std::invalid_argument("simulation: start must lie in [0, band]");
    Walker w(params, rng, max_jumps, start);
    while (true) {
        w.step(no_horizon);
        if (w.x < 0.0) return {w.t, ExitSide::down, w.x, -w.x, w.jumps};
        if (w.x > band) return {w.t, ExitSide::up, w.x, w.x - band, w.jumps};
    }
}

PassageSample sample_passage_up(const ProcessParams& params, double level, double horizon,
                                PathRng& rng, std::uint64_t max_jumps) {
    if (!(level >= 0.0)) throw std::invalid_argument("simulation: level must be nonnegative");
    Walker w(params, rng, max_jumps, 0.0);
    while (w.step(horizon))
        if (w.x > level) return {true, w.t, w.x - level, w.jumps};
    return {false, horizon, 0.0, w.jumps};
}

PassageSample sample_passage_down(const ProcessParams& params, double level, double horizon,
                                  PathRng& rng, std::uint64_t max_jumps) {
    if (!(level >= 0.0)) throw std::invalid_argument("simulation: level must be nonnegative");
    Walker w(params, rng, max_jumps, 0.0);
    while (w.step(horizon))
        if (w.x < -level) return {true, w.t, -w.x - level, w.jumps};
    return {false, horizon, 0.0, w.jumps};
}

EntrySample sample_entry(const ProcessParams& params, double band, double start,
                         double horizon, PathRng& rng, std::uint64_t max_jumps) {
    check_band(band);
    if (!std::isfinite(start))
        throw std::invalid_argument("simulation: start must be finite");
    Walker w(params, rng, max_jumps, start);
    bool must_exit_first = start >= 0.0 && start <= band;
    while (w.step(horizon)) {
        const bool inside = w.x >= 0.0 && w.x <= band;
        if (must_exit_first) {
            if (!inside) must_exit_first = false;
        } else if (inside) {
            return {true, w.t, w.x, w.jumps};
        }
    }
    return {false, horizon, 0.0, w.jumps};
}

ExtremaSample sample_extrema(const ProcessParams& params, double s, PathRng& rng,
                             std::uint64_t max_jumps) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("simulation: s must be positive and finite");
    const double horizon = rng.exponential(s);
    Walker w(params, rng, max_jumps, 0.0);
    ExtremaSample ext{0.0, 0.0};
    while (w.step(horizon)) {
        ext.sup = std::max(ext.sup, w.x);
        ext.inf = std::min(ext.inf, w.x);
    }
    return ext;
}

MCEstimate estimate(const SimConfig& config, unsigned threads,
                    const std::function<double(PathRng&)>& functional) {
    const std::uint64_t n = config.paths;
    if (n == 0) throw std::invalid_argument("simulation: need at least one path");
    std::vector<double> values(n);

    auto run_path = [&](std::uint64_t i) {
        const std::uint64_t stream = config.antithetic ? i / 2 : i;
        const bool mirror = config.antithetic && (i % 2 == 1);
        PathRng rng(config.seed, stream, mirror);
        values[i] = functional(rng);
    };

    const unsigned workers = std::max(1u, threads);
    if (workers == 1) {
        for (std::uint64_t i = 0; i < n; ++i) run_path(i);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            try {
                while (true) {
                    const std::uint64_t base = next.fetch_add(256);
                    if (base >= n) return;
                    const std::uint64_t stop = std::min(n, base + 256);
                    for (std::uint64_t i = base; i < stop; ++i) run_path(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Sequential compensated reduction keeps the result independent of
    // the worker count.
    Compensated mean_acc;
    for (double v : values) mean_acc.add(v);
    const double mean = mean_acc.value() / double(n);
    Compensated var_acc;
    for (double v : values) var_acc.add((v - mean) * (v - mean));
    double se = 0.0;
    if (n > 1) se = std::sqrt(var_acc.value() / (double(n - 1) * double(n)));
    return {mean, se, n};
}

}
