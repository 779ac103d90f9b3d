#include "cpexp/config.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "cpexp/entry.hpp"
#include "cpexp/exit.hpp"
#include "cpexp/one_boundary.hpp"
#include "cpexp/simulate.hpp"
#include "cpexp/validate.hpp"
#include "cpexp/version.hpp"

namespace cpexp {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_keys(const json& j, const std::string& context,
                const std::set<std::string>& allowed) {
    if (!j.is_object())
        throw std::invalid_argument("config." + context + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            throw std::invalid_argument("config." + context + ": unknown key '" + key + "'");
    }
}

double get_number(const json& j, const std::string& context, const std::string& key) {
    if (!j.contains(key))
        throw std::invalid_argument("config." + context + ": missing key '" + key + "'");
    if (!j[key].is_number())
        throw std::invalid_argument("config." + context + "." + key + ": expected a number");
    return j[key].get<double>();
}

double get_number_or(const json& j, const std::string& context, const std::string& key,
                     double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw std::invalid_argument("config." + context + "." + key + ": expected a number");
    return j[key].get<double>();
}

std::vector<double> get_grid(const json& j, const std::string& context,
                             const std::string& key) {
    if (!j.contains(key))
        throw std::invalid_argument("config." + context + ": missing key '" + key + "'");
    const json& g = j[key];
    std::vector<double> values;
    if (g.is_array()) {
        for (const auto& v : g) {
            if (!v.is_number())
                throw std::invalid_argument("config." + context + "." + key +
                                            ": expected numbers");
            values.push_back(v.get<double>());
        }
    } else if (g.is_object()) {
        check_keys(g, context + "." + key, {"from", "to", "count"});
        const double from = get_number(g, context + "." + key, "from");
        const double to = get_number(g, context + "." + key, "to");
        const double count = get_number(g, context + "." + key, "count");
        const auto n = std::size_t(count);
        if (double(n) != count || n < 2)
            throw std::invalid_argument("config." + context + "." + key +
                                        ".count: expected an integer >= 2");
        for (std::size_t i = 0; i < n; ++i)
            values.push_back(from + (to - from) * double(i) / double(n - 1));
    } else {
        throw std::invalid_argument("config." + context + "." + key +
                                    ": expected an array or {from,to,count}");
    }
    if (values.empty())
        throw std::invalid_argument("config." + context + "." + key + ": empty grid");
    return values;
}

std::vector<double> get_scalar_or_grid(const json& j, const std::string& context,
                                       const std::string& key, double fallback) {
    if (!j.contains(key)) return {fallback};
    if (j[key].is_number()) return {j[key].get<double>()};
    return get_grid(j, context, key);
}

unsigned resolve_threads(const JobOptions& options, const json& config) {
    if (options.threads_flag > 0) return options.threads_flag;
    if (config.contains("threads")) {
        if (!config["threads"].is_number_integer() || config["threads"].get<long long>() < 1)
            throw std::invalid_argument("config.threads: expected a positive integer");
        return config["threads"].get<unsigned>();
    }
    if (const char* env = std::getenv("CPEXP_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end && *end == '\0' && parsed > 0) return unsigned(parsed);
        log_warn("ignoring unparsable CPEXP_THREADS value");
    }
    return 1;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(threads, n); ++w)
        pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::string iso_timestamp() {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string describe_method(const ResolventOptions& opts) {
    if (std::holds_alternative<GaverStehfest>(opts.method)) {
        std::ostringstream out;
        out << "gaver_stehfest(order=" << std::get<GaverStehfest>(opts.method).order << ")";
        return out.str();
    }
    const auto& b = std::get<BromwichShifted>(opts.method);
    std::ostringstream out;
    out << "bromwich(";
    if (b.alpha_set) out << "alpha=" << b.alpha << ",";
    if (b.nodes > 0) out << "nodes=" << b.nodes << ",truncation=" << b.truncation;
    else out << "auto";
    out << ")";
    return out.str();
}

std::string metadata_block(const std::string& job, const ProcessParams& params,
                           const ResolventOptions& opts,
                           const std::vector<std::string>& extra) {
    std::ostringstream out;
    out << "# cpexp " << version_string << "\r\n";
    out << "# generated " << iso_timestamp() << "\r\n";
    out << "# job " << job << "\r\n";
    out << "# process c=" << fmt17(params.c) << " a=" << fmt17(params.a)
        << " lambda=" << fmt17(params.lambda) << " jump=" << params.eta.describe() << "\r\n";
    out << "# method " << describe_method(opts) << "\r\n";
    out << "# tolerances root_rel=" << opts.tol.root_rel
        << " bromwich_rel=" << opts.tol.bromwich_rel << " quad_rel=" << opts.tol.quad_rel
        << "\r\n";
    for (const auto& line : extra) out << "# " << line << "\r\n";
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing output file " + path.string());
}

std::filesystem::path output_path(const JobOptions& options, const json& config,
                                  const std::string& fallback) {
    std::string basename = fallback;
    if (config.contains("output")) {
        check_keys(config["output"], "output", {"basename"});
        if (config["output"].contains("basename")) {
            if (!config["output"]["basename"].is_string())
                throw std::invalid_argument("config.output.basename: expected a string");
            basename = config["output"]["basename"].get<std::string>();
        }
    }
    std::filesystem::path dir(options.output_dir);
    std::filesystem::create_directories(dir);
    return dir / basename;
}

const std::set<std::string> common_keys = {"job", "process", "output", "threads",
                                           "method", "path", "tolerances"};

std::set<std::string> with_common(std::set<std::string> extra) {
    extra.insert(common_keys.begin(), common_keys.end());
    return extra;
}

void check_job_name(const json& config, const std::string& job) {
    if (config.contains("job")) {
        if (!config["job"].is_string() || config["job"].get<std::string>() != job)
            throw std::invalid_argument("config.job: does not match the subcommand '" + job +
                                        "'");
    }
}

// -------------------------------------------------------------------
// Runners
// -------------------------------------------------------------------

int run_resolvent(const json& config, const JobOptions& options) {
    check_keys(config, "resolvent", with_common({"s", "x_grid"}));
    const ProcessParams params = parse_process(config.at("process"));
    const ResolventOptions opts = parse_resolvent_options(config);
    const auto s_values = get_scalar_or_grid(config, "resolvent", "s", 1.0);
    const auto x_values = get_grid(config, "resolvent", "x_grid");
    const unsigned threads = resolve_threads(options, config);

    struct Row {
        double s, x, density, cumulative;
    };
    std::vector<Row> rows(s_values.size() * x_values.size());
    for (std::size_t si = 0; si < s_values.size(); ++si) {
        const auto ctx = ResolventContext::build(params, s_values[si], opts);
        parallel_for(x_values.size(), threads, [&](std::size_t xi) {
            const double x = x_values[xi];
            rows[si * x_values.size() + xi] =
                {s_values[si], x, ctx.density(x), ctx.cumulative(x)};
        });
    }

    std::ostringstream csv;
    csv << metadata_block("resolvent", params, opts, {});
    csv << "s,x,density,cumulative\r\n";
    for (const auto& row : rows)
        csv << fmt17(row.s) << "," << fmt17(row.x) << "," << fmt17(row.density) << ","
            << fmt17(row.cumulative) << "\r\n";
    write_file(output_path(options, config, "resolvent.csv"), csv.str());
    return 0;
}

int run_exit(const json& config, const JobOptions& options) {
    check_keys(config, "exit", with_common({"band", "s", "start", "z"}));
    const ProcessParams params = parse_process(config.at("process"));
    const ResolventOptions opts = parse_resolvent_options(config);
    const double band = get_number(config, "exit", "band");
    const auto s_values = get_scalar_or_grid(config, "exit", "s", 1.0);
    const auto start_values = get_grid(config, "exit", "start");
    const auto z_values = get_scalar_or_grid(config, "exit", "z", 0.0);
    const unsigned threads = resolve_threads(options, config);

    struct Row {
        double s, start, down, up, survival;
        std::vector<double> overshoot;
    };
    std::vector<Row> rows(s_values.size() * start_values.size());
    for (std::size_t si = 0; si < s_values.size(); ++si) {
        const auto ctx = ResolventContext::build(params, s_values[si], opts);
        parallel_for(start_values.size(), threads, [&](std::size_t yi) {
            const ExitQuery q(band, start_values[yi]);
            Row row{s_values[si], start_values[yi], exit_down(ctx, q), exit_up(ctx, q),
                    survival_lt(ctx, q), {}};
            for (double z : z_values)
                row.overshoot.push_back(exit_up_overshoot_lt(ctx, q, z));
            rows[si * start_values.size() + yi] = std::move(row);
        });
    }

    std::ostringstream csv;
    csv << metadata_block("exit", params, opts, {"band " + fmt17(band)});
    csv << "s,start,exit_down,exit_up,survival_lt";
    for (double z : z_values) csv << ",up_overshoot_z" << fmt17(z);
    csv << "\r\n";
    for (const auto& row : rows) {
        csv << fmt17(row.s) << "," << fmt17(row.start) << "," << fmt17(row.down) << ","
            << fmt17(row.up) << "," << fmt17(row.survival);
        for (double v : row.overshoot) csv << "," << fmt17(v);
        csv << "\r\n";
    }
    write_file(output_path(options, config, "exit.csv"), csv.str());
    return 0;
}

int run_entry(const json& config, const JobOptions& options) {
    check_keys(config, "entry", with_common({"band", "s", "starts", "z"}));
    const ProcessParams params = parse_process(config.at("process"));
    const ResolventOptions opts = parse_resolvent_options(config);
    const double band = get_number(config, "entry", "band");
    const auto s_values = get_scalar_or_grid(config, "entry", "s", 1.0);
    const auto z_values = get_scalar_or_grid(config, "entry", "z", 0.0);
    if (!config.contains("starts") || !config["starts"].is_array() ||
        config["starts"].empty())
        throw std::invalid_argument("config.entry.starts: expected a nonempty array");

    struct Start {
        std::string side;
        double offset;
    };
    std::vector<Start> starts;
    for (const auto& item : config["starts"]) {
        check_keys(item, "entry.starts[]", {"side", "offset"});
        if (!item.contains("side") || !item["side"].is_string())
            throw std::invalid_argument("config.entry.starts[].side: expected a string");
        const std::string side = item["side"].get<std::string>();
        if (side != "above" && side != "below" && side != "inside")
            throw std::invalid_argument(
                "config.entry.starts[].side: expected above, below or inside");
        starts.push_back({side, get_number(item, "entry.starts[]", "offset")});
    }
    const unsigned threads = resolve_threads(options, config);

    struct Row {
        double s;
        std::string side;
        double offset, z, value;
    };
    std::vector<Row> rows(s_values.size() * starts.size() * z_values.size());
    for (std::size_t si = 0; si < s_values.size(); ++si) {
        const auto ctx = ResolventContext::build(params, s_values[si], opts);
        const EntryFactors factors(ctx, band);
        parallel_for(starts.size() * z_values.size(), threads, [&](std::size_t i) {
            const auto& start = starts[i / z_values.size()];
            const double z = z_values[i % z_values.size()];
            double value;
            if (start.side == "above")
                value = entry_from_above(factors, start.offset, z);
            else if (start.side == "below")
                value = entry_from_below(factors, start.offset, z);
            else
                value = entry_from_inside(factors, start.offset, z);
            rows[si * starts.size() * z_values.size() + i] =
                {s_values[si], start.side, start.offset, z, value};
        });
    }

    std::ostringstream csv;
    csv << metadata_block("entry", params, opts, {"band " + fmt17(band)});
    csv << "s,side,offset,z,entry_lt\r\n";
    for (const auto& row : rows)
        csv << fmt17(row.s) << "," << row.side << "," << fmt17(row.offset) << ","
            << fmt17(row.z) << "," << fmt17(row.value) << "\r\n";
    write_file(output_path(options, config, "entry.csv"), csv.str());
    return 0;
}

int run_survival(const json& config, const JobOptions& options) {
    check_keys(config, "survival", with_common({"band", "start", "t_grid", "order"}));
    const ProcessParams params = parse_process(config.at("process"));
    const ResolventOptions opts = parse_resolvent_options(config);
    const double band = get_number(config, "survival", "band");
    const double start = get_number(config, "survival", "start");
    const auto t_values = get_grid(config, "survival", "t_grid");
    GaverStehfest method;
    method.order = int(get_number_or(config, "survival", "order", 14));
    const ExitQuery q(band, start);
    const unsigned threads = resolve_threads(options, config);

    std::vector<double> values(t_values.size());
    parallel_for(t_values.size(), threads, [&](std::size_t i) {
        values[i] = survival_time_domain(params, q, t_values[i], method, opts);
    });

    std::ostringstream csv;
    csv << metadata_block("survival", params, opts,
                          {"band " + fmt17(band), "start " + fmt17(start),
                           "order " + std::to_string(method.order)});
    csv << "t,survival\r\n";
    for (std::size_t i = 0; i < t_values.size(); ++i)
        csv << fmt17(t_values[i]) << "," << fmt17(values[i]) << "\r\n";
    write_file(output_path(options, config, "survival.csv"), csv.str());
    return 0;
}

int run_simulate(const json& config, const JobOptions& options) {
    check_keys(config, "simulate",
               with_common({"kind", "band", "start", "s", "z", "paths", "seed",
                            "antithetic", "max_jumps", "horizon"}));
    const ProcessParams params = parse_process(config.at("process"));
    if (!config.contains("kind") || !config["kind"].is_string())
        throw std::invalid_argument("config.simulate.kind: expected a string");
    const std::string kind = config["kind"].get<std::string>();

    SimConfig sim;
    sim.paths = std::uint64_t(get_number_or(config, "simulate", "paths", 100000));
    sim.seed = std::uint64_t(get_number_or(config, "simulate", "seed", 1));
    sim.max_jumps = std::uint64_t(get_number_or(config, "simulate", "max_jumps", 1000000));
    if (config.contains("antithetic")) {
        if (!config["antithetic"].is_boolean())
            throw std::invalid_argument("config.simulate.antithetic: expected a boolean");
        sim.antithetic = config["antithetic"].get<bool>();
    }
    const unsigned threads = resolve_threads(options, config);
    const double s = get_number_or(config, "simulate", "s", 1.0);
    const double z = get_number_or(config, "simulate", "z", 0.0);

    json results;
    auto record = [&](const std::string& name, const MCEstimate& est) {
        results[name] = {{"mean", est.mean}, {"std_error", est.std_error}};
    };

    if (kind == "exit") {
        const double band = get_number(config, "simulate", "band");
        const double start = get_number(config, "simulate", "start");
        record("down_lt", estimate(sim, threads, [&](PathRng& rng) {
                   const auto path = sample_exit(params, band, start, rng, sim.max_jumps);
                   return path.side == ExitSide::down ? std::exp(-s * path.time) : 0.0;
               }));
        record("up_lt", estimate(sim, threads, [&](PathRng& rng) {
                   const auto path = sample_exit(params, band, start, rng, sim.max_jumps);
                   return path.side == ExitSide::up ? std::exp(-s * path.time) : 0.0;
               }));
        record("up_overshoot_lt", estimate(sim, threads, [&](PathRng& rng) {
                   const auto path = sample_exit(params, band, start, rng, sim.max_jumps);
                   return path.side == ExitSide::up
                              ? std::exp(-s * path.time - z * path.overshoot)
                              : 0.0;
               }));
        record("down_probability", estimate(sim, threads, [&](PathRng& rng) {
                   const auto path = sample_exit(params, band, start, rng, sim.max_jumps);
                   return path.side == ExitSide::down ? 1.0 : 0.0;
               }));
    } else if (kind == "entry") {
        const double band = get_number(config, "simulate", "band");
        const double start = get_number(config, "simulate", "start");
        const double horizon = get_number_or(config, "simulate", "horizon", 40.0 / s);
        record("entry_lt", estimate(sim, threads, [&](PathRng& rng) {
                   const auto path =
                       sample_entry(params, band, start, horizon, rng, sim.max_jumps);
                   return path.entered ? std::exp(-s * path.time - z * path.position) : 0.0;
               }));
        record("entered_probability", estimate(sim, threads, [&](PathRng& rng) {
                   const auto path =
                       sample_entry(params, band, start, horizon, rng, sim.max_jumps);
                   return path.entered ? 1.0 : 0.0;
               }));
    } else if (kind == "extrema") {
        record("sup_mean", estimate(sim, threads, [&](PathRng& rng) {
                   return sample_extrema(params, s, rng, sim.max_jumps).sup;
               }));
        record("inf_mean", estimate(sim, threads, [&](PathRng& rng) {
                   return sample_extrema(params, s, rng, sim.max_jumps).inf;
               }));
        record("sup_atom", estimate(sim, threads, [&](PathRng& rng) {
                   return sample_extrema(params, s, rng, sim.max_jumps).sup == 0.0 ? 1.0
                                                                                  : 0.0;
               }));
        record("inf_atom", estimate(sim, threads, [&](PathRng& rng) {
                   return sample_extrema(params, s, rng, sim.max_jumps).inf == 0.0 ? 1.0
                                                                                  : 0.0;
               }));
    } else {
        throw std::invalid_argument("config.simulate.kind: expected exit, entry or extrema");
    }

    json report;
    report["tool"] = std::string("cpexp ") + version_string;
    report["job"] = "simulate";
    report["kind"] = kind;
    report["process"] = {{"c", params.c},
                         {"a", params.a},
                         {"lambda", params.lambda},
                         {"jump", params.eta.describe()}};
    report["s"] = s;
    report["paths"] = sim.paths;
    report["seed"] = sim.seed;
    report["antithetic"] = sim.antithetic;
    report["max_jumps"] = sim.max_jumps;
    report["results"] = results;
    write_file(output_path(options, config, "simulate.json"), report.dump(2) + "\n");
    return 0;
}

int run_validate(const json& config, const JobOptions& options) {
    check_keys(config, "validate", with_common({"paths", "seed"}));
    ValidationConfig vconfig;
    vconfig.paths = std::uint64_t(get_number_or(config, "validate", "paths", 100000));
    vconfig.seed = std::uint64_t(get_number_or(config, "validate", "seed", 20260822));
    vconfig.threads = resolve_threads(options, config);

    const ValidationReport report = run_validation(vconfig, &std::cout);

    std::ostringstream csv;
    csv << "# cpexp " << version_string << "\r\n";
    csv << "# generated " << iso_timestamp() << "\r\n";
    csv << "# job validate paths=" << vconfig.paths << " seed=" << vconfig.seed << "\r\n";
    csv << "name,pass,statistic,bound,seconds\r\n";
    for (const auto& check : report.checks)
        csv << check.name << "," << (check.pass ? 1 : 0) << "," << fmt17(check.statistic)
            << "," << fmt17(check.bound) << "," << fmt17(check.seconds) << "\r\n";
    csv << "\r\n";
    csv << validation_data_csv(vconfig);
    write_file(output_path(options, config, "validate.csv"), csv.str());
    return report.all_pass() ? 0 : 1;
}

}

JumpLaw parse_jump(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw std::invalid_argument("config.process.jump: expected {family,...}");
    const std::string family = j["family"].get<std::string>();
    if (family == "dirac") {
        check_keys(j, "process.jump", {"family", "point"});
        return JumpLaw::dirac(get_number(j, "process.jump", "point"));
    }
    if (family == "exponential") {
        check_keys(j, "process.jump", {"family", "rate"});
        return JumpLaw::exponential(get_number(j, "process.jump", "rate"));
    }
    if (family == "erlang") {
        check_keys(j, "process.jump", {"family", "shape", "rate"});
        const double shape = get_number(j, "process.jump", "shape");
        if (double(int(shape)) != shape)
            throw std::invalid_argument("config.process.jump.shape: expected an integer");
        return JumpLaw::erlang(int(shape), get_number(j, "process.jump", "rate"));
    }
    if (family == "hyper_exponential") {
        check_keys(j, "process.jump", {"family", "weights", "rates"});
        auto read = [&](const char* key) {
            if (!j.contains(key) || !j[key].is_array())
                throw std::invalid_argument(std::string("config.process.jump.") + key +
                                            ": expected an array");
            std::vector<double> out;
            for (const auto& v : j[key]) out.push_back(v.get<double>());
            return out;
        };
        return JumpLaw::hyper_exponential(read("weights"), read("rates"));
    }
    throw std::invalid_argument("config.process.jump.family: unknown family '" + family + "'");
}

ProcessParams parse_process(const json& j) {
    check_keys(j, "process", {"c", "a", "lambda", "jump"});
    if (!j.contains("jump"))
        throw std::invalid_argument("config.process: missing key 'jump'");
    return {get_number(j, "process", "c"), get_number(j, "process", "a"),
            get_number(j, "process", "lambda"), parse_jump(j["jump"])};
}

ResolventOptions parse_resolvent_options(const json& config) {
    ResolventOptions opts;
    if (config.contains("path")) {
        const std::string path = config["path"].get<std::string>();
        if (path == "automatic")
            opts.path = ResolventPath::automatic;
        else if (path == "exact")
            opts.path = ResolventPath::exact;
        else if (path == "numeric")
            opts.path = ResolventPath::numeric;
        else
            throw std::invalid_argument("config.path: expected automatic, exact or numeric");
    }
    if (config.contains("method")) {
        const json& m = config["method"];
        if (!m.is_object() || !m.contains("type") || !m["type"].is_string())
            throw std::invalid_argument("config.method: expected {type,...}");
        const std::string type = m["type"].get<std::string>();
        if (type == "bromwich") {
            check_keys(m, "method", {"type", "alpha", "nodes", "truncation"});
            BromwichShifted b;
            if (m.contains("alpha")) {
                b.alpha = get_number(m, "method", "alpha");
                b.alpha_set = true;
            }
            b.nodes = std::int64_t(get_number_or(m, "method", "nodes", 0));
            b.truncation = get_number_or(m, "method", "truncation", 0.0);
            opts.method = b;
        } else if (type == "gaver_stehfest") {
            check_keys(m, "method", {"type", "order"});
            GaverStehfest g;
            g.order = int(get_number_or(m, "method", "order", 14));
            opts.method = g;
        } else {
            throw std::invalid_argument("config.method.type: expected bromwich or gaver_stehfest");
        }
    }
    if (config.contains("tolerances")) {
        const json& t = config["tolerances"];
        check_keys(t, "tolerances",
                   {"root_rel", "bromwich_rel", "quad_rel", "rep_check", "closure_check"});
        opts.tol.root_rel = get_number_or(t, "tolerances", "root_rel", opts.tol.root_rel);
        opts.tol.bromwich_rel =
            get_number_or(t, "tolerances", "bromwich_rel", opts.tol.bromwich_rel);
        opts.tol.quad_rel = get_number_or(t, "tolerances", "quad_rel", opts.tol.quad_rel);
        opts.tol.rep_check = get_number_or(t, "tolerances", "rep_check", opts.tol.rep_check);
        opts.tol.closure_check =
            get_number_or(t, "tolerances", "closure_check", opts.tol.closure_check);
    }
    return opts;
}

int run_job(const std::string& job, const json& config, const JobOptions& options) {
    set_log_level(options.log_level);
    check_job_name(config, job);
    if (job == "resolvent") return run_resolvent(config, options);
    if (job == "exit") return run_exit(config, options);
    if (job == "entry") return run_entry(config, options);
    if (job == "survival") return run_survival(config, options);
    if (job == "simulate") return run_simulate(config, options);
    if (job == "validate") return run_validate(config, options);
    throw std::invalid_argument("unknown job '" + job + "'");
}

}
