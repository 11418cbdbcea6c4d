#pragma once

// The centralization loop. Each tick: apply the tick's edge arrivals, let
// the controller act, then run one synchronous opinion update against the
// post-selection unit set.
//
// The controller acts in two phases. While the units do not yet dominate
// the graph at radius r, every cadence-th tick is a selection opportunity:
// the policy picks one new unit through a fresh PartialView (the very first
// selection takes the configured seed node, or a random node). Once
// domination is reached it is maintained for free: any later arrival that
// lands outside the accessible region is committed immediately, so the
// dominating property is an invariant from that tick on.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prowl/dynamics.hpp"
#include "prowl/events.hpp"
#include "prowl/graph.hpp"
#include "prowl/observation.hpp"
#include "prowl/policies.hpp"
#include "prowl/random.hpp"
#include "prowl/structure.hpp"

namespace prowl {

struct RunConfig {
    int radius = 2;
    int steps = 4;  // prowl walk cap k
    PolicyKind policy = PolicyKind::bdeg;
    int cadence = 1;  // selection opportunity every `cadence` ticks
    std::vector<double> epsilons = {0.1, 0.01};
    std::uint64_t seed = 1;
    long max_ticks = 1'000'000;
    long tail_ticks = 0;  // extra ticks after domination
    std::optional<NodeId> seed_node;
    std::optional<double> stop_avg_opinion;  // run tail until mean opinion reaches this
    bool keep_series = true;
    bool keep_traces = true;
};

struct TickStats {
    std::int64_t tick;
    std::size_t nodes, edges, units;
    std::size_t anti_nb;          // nodes outside all unit neighborhoods
    std::size_t access_growth;    // access-neighborhood gain this tick
    bool dominating;
    double op_min, op_mean, op_max;
};

enum class AdditionKind { Seed, Prowl, Arrival };

inline const char* to_string(AdditionKind k) {
    switch (k) {
        case AdditionKind::Seed: return "seed";
        case AdditionKind::Prowl: return "prowl";
        case AdditionKind::Arrival: return "arrival";
    }
    return "?";
}

struct Addition {
    std::int64_t tick;
    NodeId node;
    AdditionKind kind;
    std::size_t access_growth;  // nodes newly absorbed into the access neighborhood
};

enum class RunOutcome { Dominated, MaxTicks };

struct EpsilonResult {
    double epsilon;
    std::optional<std::size_t> centralization_cost;  // |S| when all opinions >= 1-eps
    std::optional<std::int64_t> centralization_tick;
    std::optional<long> t_epsilon;  // update steps on the frozen dominated instance
};

struct RunRecord {
    RunConfig config;
    RunOutcome outcome = RunOutcome::MaxTicks;
    std::optional<std::int64_t> domination_tick;
    std::optional<long> domination_cost;  // selections spent until domination
    std::int64_t ticks = 0;
    std::size_t final_nodes = 0, final_edges = 0, final_units = 0;
    std::vector<EpsilonResult> epsilon_results;
    std::vector<TickStats> series;
    std::vector<ProwlTrace> traces;
    std::vector<Addition> additions;
    long unit_growth_violations = 0;
    bool extended_queries = false;
    long fallback_selections = 0;
    bool audits_all_legal = true;
    std::optional<NetworkInstance> dominated_snapshot;
};

namespace detail {

/// Incrementally maintained union of closed unit neighborhoods.
class AccessNeighborhood {
public:
    void resize(std::size_t n) { mask_.resize(n, 0); }

    std::size_t mark(Slot s) {
        if (mask_[s]) return 0;
        mask_[s] = 1;
        ++count_;
        return 1;
    }

    /// New edge (a, b): an endpoint joins if the other is a unit.
    std::size_t on_edge(const NetworkInstance& g, Slot a, Slot b) {
        std::size_t grown = 0;
        if (g.committed_at(a)) grown += mark(b);
        if (g.committed_at(b)) grown += mark(a);
        return grown;
    }

    /// Newly committed unit v: v and all its neighbors join.
    std::size_t on_commit(const NetworkInstance& g, Slot v) {
        std::size_t grown = mark(v);
        for (Slot t : g.adj(v)) grown += mark(t);
        return grown;
    }

    std::size_t covered() const { return count_; }

private:
    std::vector<std::uint8_t> mask_;
    std::size_t count_ = 0;
};

}  // namespace detail

/// Runs the centralization process over `start`, consuming `events`.
inline RunRecord run(NetworkInstance start, EventSource& events, const RunConfig& cfg) {
    if (cfg.radius < 1) throw std::invalid_argument("radius must be >= 1");
    if (cfg.cadence < 1) throw std::invalid_argument("cadence must be >= 1");

    RunRecord rec;
    rec.config = cfg;
    for (double eps : cfg.epsilons)
        rec.epsilon_results.push_back({eps, std::nullopt, std::nullopt, std::nullopt});

    NetworkInstance g = std::move(start);
    ProwlPolicy policy(cfg.policy, cfg.steps, mix_seed(cfg.seed, 1));
    Rng seed_rng(mix_seed(cfg.seed, 2));

    detail::AccessNeighborhood access;
    access.resize(g.node_count());
    for (Slot s : g.unit_slots()) access.on_commit(g, s);

    bool dominated = false;
    long selections = 0;
    std::int64_t dominated_since = 0;
    long window_new_nodes = 0;
    bool events_done = false;

    auto commit = [&](NodeId v, AdditionKind kind, std::int64_t tick) {
        g.commit(v);
        std::size_t growth = access.on_commit(g, g.slot_of(v));
        rec.additions.push_back({tick, v, kind, growth});
        return growth;
    };

    for (std::int64_t tick = 1; tick <= cfg.max_ticks; ++tick) {
        g.set_time(tick);
        std::size_t tick_growth = 0;

        // 1. Network evolution.
        if (!events_done) {
            auto batch = events.next_tick();
            if (!batch) {
                events_done = true;
            } else {
                for (const auto& ev : *batch) {
                    std::size_t before = g.node_count();
                    g.apply(ev);
                    if (g.node_count() != before) {
                        access.resize(g.node_count());
                        window_new_nodes += g.node_count() - before;
                    }
                    tick_growth += access.on_edge(g, g.slot_of(ev.u), g.slot_of(ev.v));
                }
            }
        }
        if (g.node_count() == 0) continue;  // nothing exists yet

        std::size_t reached = 0;
        auto reach = g.reach_mask(g.unit_slots(), cfg.radius, &reached);
        bool dominating_now = reached == g.node_count();

        // 2. Controller phase.
        if (!dominated) {
            if (!dominating_now && tick % cfg.cadence == 0) {
                if (window_new_nodes > 1) ++rec.unit_growth_violations;
                window_new_nodes = 0;
                if (g.unit_count() == 0) {
                    NodeId first = (cfg.seed_node && g.has_node(*cfg.seed_node))
                                       ? *cfg.seed_node
                                       : uniform_pick(seed_rng, g.node_ids());
                    tick_growth += commit(first, AdditionKind::Seed, tick);
                    ++selections;
                } else {
                    PartialView view(g, g.access_units(), cfg.radius);
                    auto trace = policy.select(view);
                    if (trace) {
                        trace->audit_legal = audit_is_legal(g, view.units(), cfg.radius,
                                                            view.audit_log());
                        if (!trace->audit_legal) rec.audits_all_legal = false;
                        if (trace->extended_query) rec.extended_queries = true;
                        if (trace->via_fallback) ++rec.fallback_selections;
                        tick_growth += commit(trace->chosen, AdditionKind::Prowl, tick);
                        ++selections;
                        if (cfg.keep_traces) rec.traces.push_back(std::move(*trace));
                    }
                }
                reach = g.reach_mask(g.unit_slots(), cfg.radius, &reached);
                dominating_now = reached == g.node_count();
            }
            if (dominating_now) {
                dominated = true;
                dominated_since = tick;
                rec.domination_tick = tick;
                rec.domination_cost = selections;
                rec.dominated_snapshot = g;  // state at domination, opinions included
            }
        } else if (!dominating_now) {
            // Maintenance: commit every arrival that landed outside the region.
            for (Slot s = 0; s < reach.size(); ++s)
                if (!reach[s]) tick_growth += commit(g.id_at(s), AdditionKind::Arrival, tick);
            reach = g.reach_mask(g.unit_slots(), cfg.radius, &reached);
            dominating_now = reached == g.node_count();
        }

        // 3. Opinion phase (reads the post-selection unit set).
        g.set_opinions(dynamics::step_opinions(g, reach));

        auto stats = dynamics::opinion_stats(g);
        if (cfg.keep_series) {
            rec.series.push_back({tick, g.node_count(), g.edge_count(), g.unit_count(),
                                  g.node_count() - access.covered(), tick_growth,
                                  dominating_now, stats.min, stats.mean, stats.max});
        }
        for (auto& er : rec.epsilon_results) {
            if (!er.centralization_cost && stats.min >= 1.0 - er.epsilon) {
                er.centralization_cost = g.unit_count();
                er.centralization_tick = tick;
            }
        }

        rec.ticks = tick;

        // 4. Termination.
        if (dominated) {
            bool tail_done = cfg.stop_avg_opinion
                                 ? stats.mean >= *cfg.stop_avg_opinion
                                 : tick - dominated_since >= cfg.tail_ticks;
            if (tail_done) break;
        }
    }

    rec.outcome = dominated ? RunOutcome::Dominated : RunOutcome::MaxTicks;
    rec.final_nodes = g.node_count();
    rec.final_edges = g.edge_count();
    rec.final_units = g.unit_count();

    if (rec.dominated_snapshot) {
        for (auto& er : rec.epsilon_results) {
            NetworkInstance frozen = *rec.dominated_snapshot;
            auto res = dynamics::run_to_convergence(frozen, cfg.radius, er.epsilon);
            if (res.converged) er.t_epsilon = res.steps;
        }
    }
    return rec;
}

/// Update steps the frozen dominated instance needs until every opinion
/// reaches 1 - epsilon. Requires that the run reached domination.
inline long compute_t_epsilon(const RunRecord& rec, double epsilon, long max_steps = 1'000'000) {
    if (!rec.dominated_snapshot) throw std::logic_error("run never reached domination");
    NetworkInstance frozen = *rec.dominated_snapshot;
    auto res = dynamics::run_to_convergence(frozen, rec.config.radius, epsilon, max_steps);
    if (!res.converged) throw std::runtime_error("no convergence within step limit");
    return res.steps;
}

}  // namespace prowl
