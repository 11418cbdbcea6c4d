#pragma once

// Loads timestamped edge lists (KONECT/SNAP style) into event streams.
//
// Format: one event per line, "u v [weight] [timestamp]", whitespace
// separated; lines starting with a comment prefix ('%' or '#') are skipped.
// Line order is the timeline; embedded timestamps are carried along but the
// protocol counts events, not stamp values. Directed or repeated input
// edges fold to undirected simple edges when applied; self-loop lines are
// dropped (and counted) at parse time.

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prowl/events.hpp"
#include "prowl/graph.hpp"

namespace prowl {

struct DatasetSpec {
    std::string path;
    std::size_t initial_stamp = 0;  // events folded into the warm-up instance
    int cadence = 1;                // selection opportunity every `cadence` events
    bool group_by_stamp = false;
    std::string comment_prefixes = "%#";
};

struct LoadStats {
    std::size_t lines = 0;            // non-blank, non-comment lines
    std::size_t events = 0;           // parsed edge arrivals
    std::size_t self_loops = 0;       // dropped at parse time
    std::size_t warmup_duplicates = 0;
    std::size_t distinct_stamps = 0;
};

struct LoadResult {
    NetworkInstance warmup;
    std::vector<GraphEvent> remaining;
    LoadStats stats;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

inline std::vector<GraphEvent> parse_edge_list(std::istream& in, const std::string& path,
                                               const std::string& comment_prefixes,
                                               LoadStats* stats = nullptr) {
    std::vector<GraphEvent> events;
    std::string line;
    std::size_t lineno = 0;
    std::int64_t last_stamp = 0;
    bool have_stamp = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (comment_prefixes.find(line[start]) != std::string::npos) continue;
        if (stats) ++stats->lines;
        std::istringstream ls(line);
        NodeId u, v;
        if (!(ls >> u >> v))
            throw ParseError(path, lineno, "expected 'u v [weight] [timestamp]'");
        double weight;
        std::int64_t stamp = 0;
        bool explicit_stamp = false;
        if (ls >> weight) {
            if (ls >> stamp) explicit_stamp = true;
        }
        std::string rest;
        if (ls >> rest) throw ParseError(path, lineno, "trailing tokens '" + rest + "'");
        if (u == v) {
            if (stats) ++stats->self_loops;
            continue;
        }
        if (stats && explicit_stamp && (!have_stamp || stamp != last_stamp)) {
            ++stats->distinct_stamps;
            last_stamp = stamp;
            have_stamp = true;
        }
        events.push_back({u, v, explicit_stamp ? stamp : static_cast<std::int64_t>(events.size())});
    }
    if (stats) stats->events = events.size();
    return events;
}

/// Loads the file, folds the first `initial_stamp` events into a warm-up
/// instance (opinions 0, no units), and returns the rest as the live stream.
inline LoadResult load(const DatasetSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) throw std::runtime_error("cannot open '" + spec.path + "'");
    LoadResult out;
    auto events = parse_edge_list(in, spec.path, spec.comment_prefixes, &out.stats);
    if (events.empty()) throw std::runtime_error("'" + spec.path + "' holds no edge events");
    if (spec.initial_stamp >= events.size())
        throw std::runtime_error("initial_stamp " + std::to_string(spec.initial_stamp) +
                                 " is not below the event count " +
                                 std::to_string(events.size()));
    for (std::size_t i = 0; i < spec.initial_stamp; ++i)
        if (!out.warmup.apply(events[i])) ++out.stats.warmup_duplicates;
    out.remaining.assign(events.begin() + static_cast<std::ptrdiff_t>(spec.initial_stamp),
                         events.end());
    return out;
}

inline PreparedRun prepare_dataset_run(const DatasetSpec& spec) {
    auto loaded = load(spec);
    PreparedRun out;
    out.start = std::move(loaded.warmup);
    out.events = std::make_unique<ReplaySource>(std::move(loaded.remaining), spec.group_by_stamp);
    return out;
}

/// Loads a whole edge list as one frozen instance (no live events).
inline PreparedRun prepare_static_run(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    auto events = parse_edge_list(in, path, "%#");
    if (events.empty()) throw std::runtime_error("'" + path + "' holds no edge events");
    PreparedRun out;
    for (const auto& ev : events) out.start.apply(ev);
    out.events = std::make_unique<StaticSource>();
    return out;
}

/// Writes events in the same format `load` reads ("u v 1 stamp").
inline void write_edge_list(std::ostream& os, const std::vector<GraphEvent>& events) {
    for (const auto& ev : events)
        os << ev.u << ' ' << ev.v << " 1 " << ev.stamp << '\n';
}

}  // namespace prowl
