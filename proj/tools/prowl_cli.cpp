// Command-line front end: synthetic stream generation, single runs,
// the three experiment grids, and oracle cross-checks.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prowl/controller.hpp"
#include "prowl/dynamics.hpp"
#include "prowl/generators.hpp"
#include "prowl/harness.hpp"
#include "prowl/ingest.hpp"
#include "prowl/io.hpp"
#include "prowl/oracle.hpp"

namespace {

using namespace prowl;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitMaxTicks = 4;

struct SourceFlags {
    std::string model;
    std::size_t n = 1000;
    int avg_degree = 6;
    std::string dataset;
    std::size_t initial_stamp = 0;
    int cadence = 1;
    bool group_by_stamp = false;
    std::string static_path;

    SourceSpec resolve(std::uint64_t /*seed*/) const {
        int given = (!model.empty()) + (!dataset.empty()) + (!static_path.empty());
        if (given != 1)
            throw std::runtime_error("choose exactly one of --model/--dataset/--static");
        if (!model.empty()) {
            GeneratorSpec g;
            g.model = parse_model(model);
            g.initial_size = n;
            g.avg_degree = avg_degree;
            return SourceSpec::model(g);
        }
        if (!dataset.empty()) {
            DatasetSpec d;
            d.path = dataset;
            d.initial_stamp = initial_stamp;
            d.cadence = cadence;
            d.group_by_stamp = group_by_stamp;
            return SourceSpec::dataset(std::filesystem::path(dataset).stem().string(), d);
        }
        return SourceSpec::static_graph(std::filesystem::path(static_path).stem().string(),
                                        static_path);
    }
};

void add_source_flags(CLI::App* cmd, SourceFlags& src) {
    cmd->add_option("--model", src.model, "synthetic model: BA|SB|JR|RC");
    cmd->add_option("--n", src.n, "initial network size for models");
    cmd->add_option("--avg-degree", src.avg_degree, "target average degree for models");
    cmd->add_option("--dataset", src.dataset, "timestamped edge list file");
    cmd->add_option("--initial-stamp", src.initial_stamp, "events folded into the warm-up");
    cmd->add_option("--cadence", src.cadence, "selection opportunity every m events");
    cmd->add_flag("--group-by-stamp", src.group_by_stamp,
                  "events sharing a timestamp arrive in one tick");
    cmd->add_option("--static", src.static_path, "frozen edge list (no live events)");
}

std::vector<PolicyKind> parse_policies(const std::vector<std::string>& names) {
    if (names.empty()) return all_policies();
    std::vector<PolicyKind> out;
    for (const auto& n : names) out.push_back(parse_policy(n));
    return out;
}

void load_plan_config(const std::string& path, ExperimentPlan& plan) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("sources")) {
        plan.sources.clear();
        for (const auto& s : j["sources"]) {
            if (s.contains("model")) {
                GeneratorSpec g;
                g.model = parse_model(s["model"].get<std::string>());
                if (s.contains("n")) g.initial_size = s["n"].get<std::size_t>();
                if (s.contains("avg_degree")) g.avg_degree = s["avg_degree"].get<int>();
                plan.sources.push_back(SourceSpec::model(g));
            } else if (s.contains("dataset")) {
                DatasetSpec d;
                d.path = s["dataset"].get<std::string>();
                if (s.contains("initial_stamp"))
                    d.initial_stamp = s["initial_stamp"].get<std::size_t>();
                if (s.contains("cadence")) d.cadence = s["cadence"].get<int>();
                std::string name = s.contains("name")
                                       ? s["name"].get<std::string>()
                                       : std::filesystem::path(d.path).stem().string();
                plan.sources.push_back(SourceSpec::dataset(name, d));
            } else if (s.contains("static")) {
                std::string p = s["static"].get<std::string>();
                plan.sources.push_back(SourceSpec::static_graph(
                    std::filesystem::path(p).stem().string(), p));
            }
        }
    }
    auto ints = [&](const char* key, auto& target) {
        if (j.contains(key)) target = j[key].template get<std::decay_t<decltype(target)>>();
    };
    if (j.contains("policies")) {
        plan.policies.clear();
        for (const auto& p : j["policies"]) plan.policies.push_back(parse_policy(p));
    }
    if (j.contains("sweep_policies")) {
        plan.sweep_policies.clear();
        for (const auto& p : j["sweep_policies"]) plan.sweep_policies.push_back(parse_policy(p));
    }
    ints("radii", plan.radii);
    ints("ks", plan.ks);
    ints("reps", plan.reps);
    ints("seed", plan.base_seed);
    ints("max_ticks", plan.max_ticks);
    ints("workers", plan.workers);
    ints("degree_sweep", plan.degree_sweep);
    ints("size_sweep", plan.size_sweep);
    ints("radius_sweep", plan.radius_sweep);
    ints("exp3_threshold", plan.exp3_threshold);
    if (j.contains("out")) plan.out_dir = j["out"].get<std::string>();
}

int cmd_generate(const SourceFlags& src, std::uint64_t seed, long extra_ticks,
                 const std::string& out_path) {
    if (src.model.empty()) throw std::runtime_error("generate needs --model");
    GeneratorSpec spec;
    spec.model = parse_model(src.model);
    spec.initial_size = src.n;
    spec.avg_degree = src.avg_degree;
    spec.seed = seed;
    auto model = make_model(spec);
    std::vector<GraphEvent> events;
    std::size_t nodes = 0;
    long extra = 0;
    while (nodes < spec.initial_size || extra < extra_ticks) {
        if (nodes >= spec.initial_size) ++extra;
        auto batch = model->next_tick();
        for (const auto& ev : *batch) events.push_back(ev);
        nodes = model->node_count();
    }
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
        os = &file;
    }
    *os << "% " << to_string(spec.model) << " n=" << spec.initial_size
        << " avg_degree=" << spec.avg_degree << " seed=" << seed << "\n";
    write_edge_list(*os, events);
    std::cerr << "wrote " << events.size() << " events, " << model->node_count() << " nodes\n";
    return kExitOk;
}

int cmd_run(const SourceFlags& src, RunConfig cfg, const std::string& out_json,
            const std::string& out_csv, const std::string& out_audit) {
    auto source = src.resolve(cfg.seed);
    auto prep = prowl::detail::prepare(source, cfg.seed);
    cfg.cadence = prowl::detail::cadence_of(source);
    auto rec = run(std::move(prep.start), *prep.events, cfg);

    std::cout << "outcome: " << (rec.outcome == RunOutcome::Dominated ? "dominated" : "max-ticks")
              << "\n";
    if (rec.domination_cost)
        std::cout << "domination cost: " << *rec.domination_cost << " selections (tick "
                  << *rec.domination_tick << ")\n";
    std::cout << "final: " << rec.final_nodes << " nodes, " << rec.final_edges << " edges, "
              << rec.final_units << " units, " << rec.ticks << " ticks\n";
    for (const auto& er : rec.epsilon_results) {
        std::cout << "epsilon " << format_double(er.epsilon) << ": cost "
                  << (er.centralization_cost ? std::to_string(*er.centralization_cost) : "-")
                  << ", t_eps "
                  << (er.t_epsilon ? std::to_string(*er.t_epsilon) : "-") << "\n";
    }
    if (rec.unit_growth_violations)
        std::cerr << "warning: " << rec.unit_growth_violations
                  << " selection windows saw more than one new node\n";
    if (rec.extended_queries)
        std::cerr << "note: B-set membership beyond radius 2 used the extended query\n";

    if (!out_json.empty()) {
        std::ofstream os(out_json);
        if (!os) throw std::runtime_error("cannot write '" + out_json + "'");
        os << to_json(rec).dump(2) << '\n';
    }
    if (!out_csv.empty()) {
        std::ofstream os(out_csv);
        if (!os) throw std::runtime_error("cannot write '" + out_csv + "'");
        write_series_csv(os, rec);
    }
    if (!out_audit.empty()) {
        std::ofstream os(out_audit);
        if (!os) throw std::runtime_error("cannot write '" + out_audit + "'");
        for (const auto& t : rec.traces) write_audit_jsonl(os, t.queries);
    }
    return rec.outcome == RunOutcome::Dominated ? kExitOk : kExitMaxTicks;
}

int cmd_verify(int trials, std::uint64_t seed) {
    bool all_ok = true;
    auto report = [&](const char* name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) all_ok = false;
    };

    // Opinion update vs the naive reference on random small instances.
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::size_t n = 2 + uniform_index(rng, 14);
        NetworkInstance g;
        for (std::size_t i = 1; i < n; ++i)
            g.apply({static_cast<NodeId>(i), static_cast<NodeId>(uniform_index(rng, i)), 0});
        for (std::size_t e = 0; e < n; ++e) {
            NodeId u = static_cast<NodeId>(uniform_index(rng, n));
            NodeId v = static_cast<NodeId>(uniform_index(rng, n));
            if (u != v) g.apply({u, v, 0});
        }
        std::vector<bool> unit(n, false);
        std::size_t units = 1 + uniform_index(rng, 3);
        for (std::size_t i = 0; i < units; ++i) {
            NodeId v = static_cast<NodeId>(uniform_index(rng, n));
            g.commit(v);
        }
        for (NodeId v : g.node_ids())
            if (!g.is_committed(v)) g.set_opinion(v, uniform01(rng));
        int r = 1 + static_cast<int>(uniform_index(rng, 3));

        auto mine = dynamics::step_opinions(g, r);
        auto sg = oracle::SmallGraph::from_instance(g);
        std::vector<double> opinions(n);
        std::vector<bool> is_unit(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            NodeId v = g.node_ids()[i];
            opinions[sg.position(v)] = g.opinion(v);
            if (g.is_committed(v)) is_unit[sg.position(v)] = true;
        }
        auto ref = oracle::reference_step(sg, opinions, is_unit, r);
        for (std::size_t i = 0; i < n; ++i) {
            NodeId v = g.node_ids()[i];
            worst = std::max(worst, std::abs(mine[g.slot_of(v)] - ref[sg.position(v)]));
        }
    }
    report("opinion update matches naive reference", worst <= 1e-12,
           "max |diff| = " + format_double(worst) + " over " + std::to_string(trials) +
               " instances");

    // Exact and greedy dominating sets on known fixtures.
    auto star = oracle::SmallGraph::from_edges({{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto p5 = oracle::SmallGraph::from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto c6 = oracle::SmallGraph::from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    report("minimum dominating set: star K_{1,4}", oracle::min_dominating_set(star, 1).size == 1);
    report("minimum dominating set: path P5", oracle::min_dominating_set(p5, 1).size == 2);
    report("minimum dominating set: cycle C6", oracle::min_dominating_set(c6, 1).size == 2);
    auto greedy = oracle::greedy_dominating_set(p5, 1);
    auto inst = make_instance({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    report("greedy output dominates", inst.is_dominating(greedy, 1));

    return all_ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"centralization processes on decentralized networks"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "dump a synthetic event stream as an edge list");
    SourceFlags gen_src;
    add_source_flags(gen, gen_src);
    std::uint64_t gen_seed = 1;
    long gen_extra = 0;
    std::string gen_out;
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--extra-ticks", gen_extra, "ticks to generate past the initial size");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // run
    auto* runc = app.add_subcommand("run", "one centralization run");
    SourceFlags run_src;
    add_source_flags(runc, run_src);
    RunConfig cfg;
    std::string policy_name = "bdeg";
    std::string out_json, out_csv, out_audit;
    NodeId seed_node = -1;
    double stop_avg = 0.0;
    runc->add_option("--policy", policy_name, "lran|ldeg|xran|xdeg|bran|bdeg|bnde");
    runc->add_option("--r", cfg.radius, "accessible-region radius");
    runc->add_option("--k", cfg.steps, "prowl walk cap");
    runc->add_option("--epsilon", cfg.epsilons, "epsilon values to track");
    runc->add_option("--seed", cfg.seed, "run seed");
    runc->add_option("--max-ticks", cfg.max_ticks, "hard tick limit");
    runc->add_option("--tail", cfg.tail_ticks, "extra ticks after domination");
    runc->add_option("--seed-node", seed_node, "first access unit (default random)");
    runc->add_option("--stop-avg", stop_avg, "stop once mean opinion reaches this");
    runc->add_option("--out-json", out_json, "write the full run record");
    runc->add_option("--out-csv", out_csv, "write the per-tick series");
    runc->add_option("--out-audit", out_audit, "write all prowl queries as JSON lines");

    // experiments
    ExperimentPlan plan;
    std::string config_path;
    std::vector<std::string> plan_policies;
    std::vector<std::string> plan_models;
    std::size_t plan_n = 1000;
    int plan_d = 6;
    auto add_plan_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON plan (flags override)");
        cmd->add_option("--policy", plan_policies, "policies to run");
        cmd->add_option("--models", plan_models, "synthetic sources: BA SB JR RC");
        cmd->add_option("--n", plan_n, "initial size for model sources");
        cmd->add_option("--avg-degree", plan_d, "average degree for model sources");
        cmd->add_option("--r", plan.radii, "radii grid");
        cmd->add_option("--k", plan.ks, "walk cap grid");
        cmd->add_option("--reps", plan.reps, "repetitions per cell");
        cmd->add_option("--seed", plan.base_seed, "base seed");
        cmd->add_option("--max-ticks", plan.max_ticks, "per-run tick limit");
        cmd->add_option("--workers", plan.workers, "parallel runs");
        cmd->add_option("--out", plan.out_dir, "output directory");
        cmd->add_option("--threshold", plan.exp3_threshold, "average-opinion target (exp3)");
    };
    auto* e1 = app.add_subcommand("exp1", "domination costs across the (policy, r, k) grid");
    add_plan_flags(e1);
    auto* e2 = app.add_subcommand("exp2", "domination cost sweeps over degree, size, radius");
    add_plan_flags(e2);
    auto* e3 = app.add_subcommand("exp3", "average-opinion trajectories per policy");
    add_plan_flags(e3);

    // verify
    auto* ver = app.add_subcommand("verify", "cross-check against the oracle references");
    int ver_trials = 1000;
    std::uint64_t ver_seed = 7;
    ver->add_option("--trials", ver_trials, "random instances to compare");
    ver->add_option("--seed", ver_seed, "rng seed");

    try {
        app.parse(argc, argv);

        if (gen->parsed()) return cmd_generate(gen_src, gen_seed, gen_extra, gen_out);

        if (runc->parsed()) {
            cfg.policy = parse_policy(policy_name);
            if (seed_node >= 0) cfg.seed_node = seed_node;
            if (stop_avg > 0.0) cfg.stop_avg_opinion = stop_avg;
            return cmd_run(run_src, cfg, out_json, out_csv, out_audit);
        }

        if (ver->parsed()) return cmd_verify(ver_trials, ver_seed);

        // experiment subcommands share plan assembly
        if (!config_path.empty()) load_plan_config(config_path, plan);
        if (!plan_policies.empty()) plan.policies = parse_policies(plan_policies);
        if (!plan_models.empty()) {
            plan.sources.clear();
            for (const auto& m : plan_models) {
                GeneratorSpec g;
                g.model = parse_model(m);
                g.initial_size = plan_n;
                g.avg_degree = plan_d;
                plan.sources.push_back(SourceSpec::model(g));
            }
        }
        if (plan.sources.empty()) {
            for (auto m : {ModelKind::BA, ModelKind::SB, ModelKind::JR, ModelKind::RC}) {
                GeneratorSpec g;
                g.model = m;
                g.initial_size = plan_n;
                g.avg_degree = plan_d;
                plan.sources.push_back(SourceSpec::model(g));
            }
        }
        std::filesystem::create_directories(plan.out_dir);

        if (e1->parsed()) {
            auto rows = experiment1(plan);
            std::ofstream os(std::filesystem::path(plan.out_dir) / "exp1.csv");
            write_exp1_csv(os, rows);
            write_exp1_csv(std::cout, rows);
        } else if (e2->parsed()) {
            auto points = experiment2(plan);
            write_exp2_csvs(plan.out_dir, points);
            std::cout << "wrote sweep CSVs to " << plan.out_dir << "\n";
        } else if (e3->parsed()) {
            auto series = experiment3(plan);
            write_exp3_csvs(plan.out_dir, series);
            std::cout << "wrote opinion series to " << plan.out_dir << "\n";
        }
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInputError : kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
