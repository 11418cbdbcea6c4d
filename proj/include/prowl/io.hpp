#pragma once

#include <charconv>
#include <ostream>
#include <string>

#include "json.hpp"
#include "prowl/controller.hpp"

namespace prowl {

/// Shortest round-trip decimal form; keeps repeated serializations
/// byte-identical.
inline std::string format_double(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, p);
}

inline nlohmann::ordered_json to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["policy"] = to_string(cfg.policy);
    j["radius"] = cfg.radius;
    j["steps"] = cfg.steps;
    j["cadence"] = cfg.cadence;
    j["epsilons"] = cfg.epsilons;
    j["seed"] = cfg.seed;
    j["max_ticks"] = cfg.max_ticks;
    j["tail_ticks"] = cfg.tail_ticks;
    if (cfg.seed_node) j["seed_node"] = *cfg.seed_node;
    if (cfg.stop_avg_opinion) j["stop_avg_opinion"] = *cfg.stop_avg_opinion;
    return j;
}

inline nlohmann::ordered_json to_json(const ProwlTrace& t) {
    nlohmann::ordered_json j;
    j["tick"] = t.tick;
    j["policy"] = to_string(t.policy);
    j["walk"] = t.walk;
    j["chosen"] = t.chosen;
    j["fallback"] = t.via_fallback;
    j["audit_legal"] = t.audit_legal;
    auto queries = nlohmann::ordered_json::array();
    for (const auto& q : t.queries)
        queries.push_back({to_string(q.kind), q.subject});
    j["queries"] = std::move(queries);
    return j;
}

inline nlohmann::ordered_json to_json(const RunRecord& rec) {
    nlohmann::ordered_json j;
    j["config"] = to_json(rec.config);
    j["outcome"] = rec.outcome == RunOutcome::Dominated ? "dominated" : "max_ticks";
    if (rec.domination_tick) {
        j["domination"] = {{"tick", *rec.domination_tick}, {"cost", *rec.domination_cost}};
    } else {
        j["domination"] = nullptr;
    }
    j["ticks"] = rec.ticks;
    j["final"] = {{"nodes", rec.final_nodes},
                  {"edges", rec.final_edges},
                  {"units", rec.final_units}};
    auto eps = nlohmann::ordered_json::array();
    for (const auto& er : rec.epsilon_results) {
        nlohmann::ordered_json e;
        e["epsilon"] = er.epsilon;
        e["centralization_cost"] =
            er.centralization_cost ? nlohmann::ordered_json(*er.centralization_cost) : nullptr;
        e["centralization_tick"] =
            er.centralization_tick ? nlohmann::ordered_json(*er.centralization_tick) : nullptr;
        e["t_epsilon"] = er.t_epsilon ? nlohmann::ordered_json(*er.t_epsilon) : nullptr;
        eps.push_back(std::move(e));
    }
    j["epsilon_results"] = std::move(eps);
    j["flags"] = {{"unit_growth_violations", rec.unit_growth_violations},
                  {"extended_queries", rec.extended_queries},
                  {"fallback_selections", rec.fallback_selections},
                  {"audits_all_legal", rec.audits_all_legal}};
    auto adds = nlohmann::ordered_json::array();
    for (const auto& a : rec.additions)
        adds.push_back({{"tick", a.tick},
                        {"node", a.node},
                        {"kind", to_string(a.kind)},
                        {"access_growth", a.access_growth}});
    j["additions"] = std::move(adds);
    auto traces = nlohmann::ordered_json::array();
    for (const auto& t : rec.traces) traces.push_back(to_json(t));
    j["traces"] = std::move(traces);
    auto series = nlohmann::ordered_json::array();
    for (const auto& s : rec.series)
        series.push_back({s.tick, s.nodes, s.edges, s.units, s.anti_nb, s.access_growth,
                          s.dominating ? 1 : 0, s.op_min, s.op_mean, s.op_max});
    j["series"] = std::move(series);
    return j;
}

/// Per-tick series; one row per tick.
inline void write_series_csv(std::ostream& os, const RunRecord& rec) {
    os << "tick,nodes,edges,units,anti_neighborhood,access_growth,dominating,"
          "opinion_min,opinion_mean,opinion_max\n";
    for (const auto& s : rec.series) {
        os << s.tick << ',' << s.nodes << ',' << s.edges << ',' << s.units << ',' << s.anti_nb
           << ',' << s.access_growth << ',' << (s.dominating ? 1 : 0) << ','
           << format_double(s.op_min) << ',' << format_double(s.op_mean) << ','
           << format_double(s.op_max) << '\n';
    }
}

}  // namespace prowl
