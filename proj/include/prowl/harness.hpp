#pragma once

// Experiment harness: grids of seeded runs, aggregated to plot-ready CSV.
// (cell, seed) runs execute concurrently up to a worker limit; results are
// reduced in task order, so the worker count never changes any output.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "prowl/controller.hpp"
#include "prowl/generators.hpp"
#include "prowl/ingest.hpp"
#include "prowl/io.hpp"

namespace prowl {

struct SourceSpec {
    std::string name;
    std::variant<GeneratorSpec, DatasetSpec, std::string> source;  // string = static edge list

    static SourceSpec model(const GeneratorSpec& g) { return {to_string(g.model), g}; }
    static SourceSpec dataset(std::string name, const DatasetSpec& d) {
        return {std::move(name), d};
    }
    static SourceSpec static_graph(std::string name, std::string path) {
        return {std::move(name), std::move(path)};
    }
};

struct ExperimentPlan {
    std::vector<SourceSpec> sources;
    std::vector<PolicyKind> policies = all_policies();
    std::vector<int> radii = {1, 2};
    std::vector<int> ks = {4, 7, 10};
    int reps = 10;
    std::uint64_t base_seed = 42;
    std::string out_dir = "results";
    long max_ticks = 2'000'000;
    std::optional<NodeId> seed_node;
    unsigned workers = std::thread::hardware_concurrency();
    // exp2 sweeps (applied to model sources)
    std::vector<int> degree_sweep = {4, 6, 8, 10, 12, 14};
    std::vector<std::size_t> size_sweep = {1000, 2000, 3000, 4000, 5000};
    std::vector<int> radius_sweep = {1, 2, 3, 4};
    std::vector<PolicyKind> sweep_policies = {PolicyKind::bdeg, PolicyKind::bnde};
    // defaults for exp2/exp3 (the Table-3 grid does not apply there)
    int default_radius = 2;
    int default_k = 4;
    double exp3_threshold = 0.8;
};

namespace detail {

/// Runs tasks on `workers` threads; results land at their task index.
template <typename R>
std::vector<R> run_indexed(const std::vector<std::function<R()>>& tasks, unsigned workers) {
    std::vector<R> results(tasks.size());
    if (workers <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            results[i] = tasks[i]();
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

inline PreparedRun prepare(const SourceSpec& spec, std::uint64_t run_seed) {
    if (const auto* g = std::get_if<GeneratorSpec>(&spec.source)) {
        GeneratorSpec seeded = *g;
        seeded.seed = mix_seed(run_seed, 0);
        return prepare_model_run(seeded);
    }
    if (const auto* d = std::get_if<DatasetSpec>(&spec.source)) return prepare_dataset_run(*d);
    return prepare_static_run(std::get<std::string>(spec.source));
}

inline int cadence_of(const SourceSpec& spec) {
    if (const auto* d = std::get_if<DatasetSpec>(&spec.source)) return d->cadence;
    return 1;
}

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;  // population
};

inline Aggregate aggregate(const std::vector<double>& xs) {
    Aggregate a;
    if (xs.empty()) return a;
    for (double x : xs) a.mean += x;
    a.mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(xs.size()));
    return a;
}

inline std::string pm_format(const Aggregate& a) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << a.mean << "±" << a.stddev;
    return os.str();
}

}  // namespace detail

/// Seed for one (source, policy, r, rep) cell. k is deliberately excluded:
/// policies that ignore the walk length then produce identical runs across
/// k, and walk policies see paired randomness.
inline std::uint64_t cell_seed(std::uint64_t base, std::size_t source_idx, PolicyKind policy,
                               int r, int rep) {
    std::uint64_t h = mix_seed(base, source_idx);
    h = mix_seed(h, static_cast<std::uint64_t>(policy) + 101);
    h = mix_seed(h, static_cast<std::uint64_t>(r) + 503);
    return mix_seed(h, static_cast<std::uint64_t>(rep) + 1009);
}

/// One seeded run of a source under a policy; returns the full record.
inline RunRecord run_single(const SourceSpec& source, PolicyKind policy, int r, int k,
                            std::uint64_t seed, long max_ticks,
                            std::optional<NodeId> seed_node = std::nullopt,
                            std::optional<double> stop_avg = std::nullopt,
                            long tail_ticks = 0, bool keep_series = false) {
    auto prep = detail::prepare(source, seed);
    RunConfig cfg;
    cfg.policy = policy;
    cfg.radius = r;
    cfg.steps = k;
    cfg.cadence = detail::cadence_of(source);
    cfg.seed = seed;
    cfg.max_ticks = max_ticks;
    cfg.seed_node = seed_node;
    cfg.stop_avg_opinion = stop_avg;
    cfg.tail_ticks = tail_ticks;
    cfg.keep_series = keep_series;
    cfg.keep_traces = false;
    cfg.epsilons = {};
    return run(std::move(prep.start), *prep.events, cfg);
}

struct Exp1Row {
    std::string source;
    PolicyKind policy;
    int r, k;
    std::vector<double> costs;  // one per rep; domination cost
    detail::Aggregate agg;
    int failures = 0;  // runs that never dominated
};

/// Domination costs across the (policy, r, k) grid, mean±std per cell.
inline std::vector<Exp1Row> experiment1(const ExperimentPlan& plan) {
    struct Cell {
        std::size_t src;
        PolicyKind policy;
        int r, k, rep;
    };
    std::vector<Cell> cells;
    for (std::size_t s = 0; s < plan.sources.size(); ++s)
        for (PolicyKind p : plan.policies)
            for (int r : plan.radii)
                for (int k : plan.ks)
                    for (int rep = 0; rep < plan.reps; ++rep) cells.push_back({s, p, r, k, rep});

    std::vector<std::function<double()>> tasks;
    tasks.reserve(cells.size());
    for (const auto& c : cells) {
        tasks.push_back([&plan, c] {
            auto seed = cell_seed(plan.base_seed, c.src, c.policy, c.r, c.rep);
            auto rec = run_single(plan.sources[c.src], c.policy, c.r, c.k, seed, plan.max_ticks,
                                  plan.seed_node);
            return rec.domination_cost ? static_cast<double>(*rec.domination_cost) : -1.0;
        });
    }
    auto costs = detail::run_indexed(tasks, plan.workers);

    std::vector<Exp1Row> rows;
    std::size_t i = 0;
    for (std::size_t s = 0; s < plan.sources.size(); ++s)
        for (PolicyKind p : plan.policies)
            for (int r : plan.radii)
                for (int k : plan.ks) {
                    Exp1Row row{plan.sources[s].name, p, r, k, {}, {}, 0};
                    for (int rep = 0; rep < plan.reps; ++rep, ++i) {
                        if (costs[i] < 0)
                            ++row.failures;
                        else
                            row.costs.push_back(costs[i]);
                    }
                    row.agg = detail::aggregate(row.costs);
                    rows.push_back(std::move(row));
                }
    return rows;
}

inline void write_exp1_csv(std::ostream& os, const std::vector<Exp1Row>& rows) {
    os << "source,policy,r,k,reps,failures,mean,std,cost\n";
    for (const auto& row : rows) {
        os << row.source << ',' << to_string(row.policy) << ',' << row.r << ',' << row.k << ','
           << row.costs.size() << ',' << row.failures << ',' << format_double(row.agg.mean)
           << ',' << format_double(row.agg.stddev) << ',' << detail::pm_format(row.agg) << '\n';
    }
}

struct SweepPoint {
    std::string source;
    PolicyKind policy;
    std::string axis;  // "avg_degree" | "initial_size" | "radius"
    double value;
    detail::Aggregate agg;
    int failures = 0;
};

/// Domination cost curves for model sources: vs average degree, vs initial
/// size, and vs radius. Each sweep varies only its own axis; the other
/// parameters stay pinned at the source's base spec (and `default_radius`).
inline std::vector<SweepPoint> experiment2(const ExperimentPlan& plan) {
    struct Pt {
        std::size_t src;
        PolicyKind policy;
        int axis;  // 0 degree, 1 size, 2 radius
        double value;
        GeneratorSpec spec;
        int r;
    };
    std::vector<Pt> points;
    for (std::size_t s = 0; s < plan.sources.size(); ++s) {
        const auto* base = std::get_if<GeneratorSpec>(&plan.sources[s].source);
        if (!base) continue;  // sweeps are defined over models only
        for (PolicyKind p : plan.sweep_policies) {
            for (int d : plan.degree_sweep) {
                GeneratorSpec g = *base;
                g.avg_degree = d;
                points.push_back({s, p, 0, static_cast<double>(d), g, plan.default_radius});
            }
            for (std::size_t n : plan.size_sweep) {
                GeneratorSpec g = *base;
                g.initial_size = n;
                points.push_back({s, p, 1, static_cast<double>(n), g, plan.default_radius});
            }
            for (int r : plan.radius_sweep) {
                GeneratorSpec g = *base;
                points.push_back({s, p, 2, static_cast<double>(r), g, r});
            }
        }
    }

    std::vector<std::function<double()>> tasks;
    for (const auto& pt : points)
        for (int rep = 0; rep < plan.reps; ++rep)
            tasks.push_back([&plan, pt, rep] {
                SourceSpec src = SourceSpec::model(pt.spec);
                auto seed = cell_seed(plan.base_seed, pt.src * 31 + pt.axis, pt.policy, pt.r,
                                      rep * 7919 + static_cast<int>(pt.value));
                auto rec = run_single(src, pt.policy, pt.r, plan.default_k, seed, plan.max_ticks);
                return rec.domination_cost ? static_cast<double>(*rec.domination_cost) : -1.0;
            });
    auto costs = detail::run_indexed(tasks, plan.workers);

    static const char* axis_names[] = {"avg_degree", "initial_size", "radius"};
    std::vector<SweepPoint> out;
    std::size_t i = 0;
    for (const auto& pt : points) {
        SweepPoint sp{plan.sources[pt.src].name, pt.policy, axis_names[pt.axis], pt.value, {}, 0};
        std::vector<double> ok;
        for (int rep = 0; rep < plan.reps; ++rep, ++i) {
            if (costs[i] < 0)
                ++sp.failures;
            else
                ok.push_back(costs[i]);
        }
        sp.agg = detail::aggregate(ok);
        out.push_back(std::move(sp));
    }
    return out;
}

inline void write_exp2_csvs(const std::string& out_dir, const std::vector<SweepPoint>& points) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    // one file per (source, axis)
    std::vector<std::pair<std::string, std::string>> groups;
    for (const auto& p : points) {
        std::pair<std::string, std::string> key{p.source, p.axis};
        if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
    }
    for (const auto& [source, axis] : groups) {
        std::ofstream os(fs::path(out_dir) / ("exp2_" + source + "_" + axis + ".csv"));
        os << axis << ",policy,mean,std,failures\n";
        for (const auto& p : points) {
            if (p.source != source || p.axis != axis) continue;
            os << format_double(p.value) << ',' << to_string(p.policy) << ','
               << format_double(p.agg.mean) << ',' << format_double(p.agg.stddev) << ','
               << p.failures << '\n';
        }
    }
}

struct Exp3Series {
    std::string source;
    PolicyKind policy;
    std::vector<double> mean_opinion;     // per tick, averaged over reps
    std::vector<double> ticks_to_target;  // per rep; -1 when the cap hit first
    detail::Aggregate agg;                // over successful reps
};

/// Average-opinion trajectories per policy until the mean crosses the
/// threshold. Reps that finish early hold their final value in the mean.
inline std::vector<Exp3Series> experiment3(const ExperimentPlan& plan) {
    struct Cell {
        std::size_t src;
        PolicyKind policy;
    };
    std::vector<Cell> cells;
    for (std::size_t s = 0; s < plan.sources.size(); ++s)
        for (PolicyKind p : plan.policies) cells.push_back({s, p});

    std::vector<std::function<RunRecord()>> tasks;
    for (const auto& c : cells)
        for (int rep = 0; rep < plan.reps; ++rep)
            tasks.push_back([&plan, c, rep] {
                auto seed = cell_seed(plan.base_seed, c.src, c.policy, plan.default_radius, rep);
                return run_single(plan.sources[c.src], c.policy, plan.default_radius, plan.default_k,
                                  seed, plan.max_ticks, plan.seed_node, plan.exp3_threshold, 0,
                                  /*keep_series=*/true);
            });
    auto records = detail::run_indexed(tasks, plan.workers);

    std::vector<Exp3Series> out;
    std::size_t i = 0;
    for (const auto& c : cells) {
        Exp3Series series{plan.sources[c.src].name, c.policy, {}, {}, {}};
        std::vector<const RunRecord*> reps;
        for (int rep = 0; rep < plan.reps; ++rep, ++i) reps.push_back(&records[i]);
        std::size_t longest = 0;
        for (const auto* r : reps) longest = std::max(longest, r->series.size());
        series.mean_opinion.assign(longest, 0.0);
        for (const auto* r : reps) {
            double last = 0.0;
            for (std::size_t t = 0; t < longest; ++t) {
                if (t < r->series.size()) last = r->series[t].op_mean;
                series.mean_opinion[t] += last;
            }
            // ticks until the threshold: the tick of the last series row if
            // the run stopped on the threshold, (-1) if it hit the cap.
            bool reached = !r->series.empty() &&
                           r->series.back().op_mean >= plan.exp3_threshold;
            series.ticks_to_target.push_back(
                reached ? static_cast<double>(r->series.back().tick) : -1.0);
        }
        for (auto& x : series.mean_opinion) x /= static_cast<double>(reps.size());
        std::vector<double> ok;
        for (double t : series.ticks_to_target)
            if (t >= 0) ok.push_back(t);
        series.agg = detail::aggregate(ok);
        out.push_back(std::move(series));
    }
    return out;
}

inline void write_exp3_csvs(const std::string& out_dir, const std::vector<Exp3Series>& all) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> sources;
    for (const auto& s : all)
        if (std::find(sources.begin(), sources.end(), s.source) == sources.end())
            sources.push_back(s.source);
    for (const auto& source : sources) {
        std::vector<const Exp3Series*> group;
        std::size_t longest = 0;
        for (const auto& s : all)
            if (s.source == source) {
                group.push_back(&s);
                longest = std::max(longest, s.mean_opinion.size());
            }
        std::ofstream os(fs::path(out_dir) / ("exp3_" + source + ".csv"));
        os << "tick";
        for (const auto* s : group) os << ',' << to_string(s->policy);
        os << '\n';
        for (std::size_t t = 0; t < longest; ++t) {
            os << (t + 1);
            for (const auto* s : group) {
                os << ',';
                if (t < s->mean_opinion.size())
                    os << format_double(s->mean_opinion[t]);
                else if (!s->mean_opinion.empty())
                    os << format_double(s->mean_opinion.back());
            }
            os << '\n';
        }
        std::ofstream sum(fs::path(out_dir) / ("exp3_" + source + "_summary.csv"));
        sum << "policy,mean_ticks,std,finished\n";
        for (const auto* s : group) {
            int finished = 0;
            for (double t : s->ticks_to_target)
                if (t >= 0) ++finished;
            sum << to_string(s->policy) << ',' << format_double(s->agg.mean) << ','
                << format_double(s->agg.stddev) << ',' << finished << '\n';
        }
    }
}

}  // namespace prowl
