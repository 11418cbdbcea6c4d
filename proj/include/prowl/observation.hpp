#pragma once

// The information firewall between a selection algorithm and the network.
// A PartialView is bound to one selection call: it knows the pre-selection
// access units and radius, answers only queries the information contract
// allows, and logs every query so a run can be audited after the fact.
//
// What the controller legitimately knows without any inquiry:
//   - every node and edge touching the accessible region (so the true
//     degrees of nodes inside it, and the existence of exterior neighbors
//     on its boundary);
//   - opinions of nodes inside the region.
// Everything else must be reached by walking: inquiring a node adjacent to
// known territory reveals that node's neighbor list with true degrees and
// opinions. Membership tests (accessible? in the B-set?) and N-degree
// lookups are answerable for nodes adjacent to known or inquired territory.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "prowl/graph.hpp"
#include "prowl/random.hpp"
#include "prowl/structure.hpp"

namespace prowl {

enum class QueryKind {
    AccessibleRegion,
    Boundary,
    Frontier,
    Inquire,
    InAccessible,
    InBset,
    NDegree,
    FallbackExterior,
};

inline const char* to_string(QueryKind k) {
    switch (k) {
        case QueryKind::AccessibleRegion: return "accessible_region";
        case QueryKind::Boundary: return "boundary";
        case QueryKind::Frontier: return "frontier";
        case QueryKind::Inquire: return "inquire";
        case QueryKind::InAccessible: return "in_accessible";
        case QueryKind::InBset: return "in_bset";
        case QueryKind::NDegree: return "ndeg";
        case QueryKind::FallbackExterior: return "fallback_exterior";
    }
    return "?";
}

struct AuditEntry {
    QueryKind kind;
    NodeId subject;  // -1 for set-valued queries
    std::int64_t tick;
};

struct NeighborInfo {
    NodeId id;
    int degree;      // true degree in the full current graph
    double opinion;
};

struct NeighborhoodReport {
    NodeId center;
    int center_degree;
    double center_opinion;
    std::vector<NeighborInfo> neighbors;
};

class FirewallViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PartialView {
public:
    /// `units` are the access units before this selection; enforce=false
    /// records violations in the log without throwing (test hook).
    PartialView(const NetworkInstance& g, std::vector<NodeId> units, int radius,
                bool enforce = true)
        : g_(g), units_(std::move(units)), radius_(radius), enforce_(enforce) {
        accessible_mask_ = g_.reach_mask(g_.slots_of(units_), radius_);
    }

    int radius() const { return radius_; }
    const std::vector<NodeId>& units() const { return units_; }

    const NodeSet& accessible_region() {
        log(QueryKind::AccessibleRegion, -1);
        if (!accessible_set_) {
            accessible_set_ =
                detail::slots_to_set(g_, detail::mask_to_slots(accessible_mask_, true));
        }
        return *accessible_set_;
    }

    /// Nodes inside the accessible region with at least one edge leaving it.
    std::vector<NodeId> boundary_nodes() {
        log(QueryKind::Boundary, -1);
        std::vector<NodeId> out;
        for (Slot s = 0; s < accessible_mask_.size(); ++s) {
            if (!accessible_mask_[s]) continue;
            for (Slot t : g_.adj(s)) {
                if (!accessible_mask_[t]) {
                    out.push_back(g_.id_at(s));
                    break;
                }
            }
        }
        return out;
    }

    /// Exterior nodes adjacent to the accessible region. Their existence is
    /// granted (edges attached to the region are known); their degrees are not.
    std::vector<NodeId> frontier_nodes() {
        log(QueryKind::Frontier, -1);
        std::unordered_set<Slot> seen;
        std::vector<NodeId> out;
        for (Slot s = 0; s < accessible_mask_.size(); ++s) {
            if (!accessible_mask_[s]) continue;
            for (Slot t : g_.adj(s)) {
                if (!accessible_mask_[t] && seen.insert(t).second) out.push_back(g_.id_at(t));
            }
        }
        return out;
    }

    /// The walk primitive: reveals v's neighborhood with true degrees and
    /// opinions. Legal for known nodes and for nodes adjacent to known or
    /// previously inquired territory.
    NeighborhoodReport inquire(NodeId v) {
        log(QueryKind::Inquire, v);
        require_walk_adjacent(v, "inquire");
        Slot s = g_.slot_of(v);
        if (!accessible_mask_[s]) visited_.insert(v);
        NeighborhoodReport rep;
        rep.center = v;
        rep.center_degree = static_cast<int>(g_.adj(s).size());
        rep.center_opinion = g_.opinion_at(s);
        for (Slot t : g_.adj(s))
            rep.neighbors.push_back(
                {g_.id_at(t), static_cast<int>(g_.adj(t).size()), g_.opinion_at(t)});
        return rep;
    }

    bool in_accessible(NodeId u) {
        log(QueryKind::InAccessible, u);
        require_walk_adjacent(u, "in_accessible");
        return accessible_mask_[g_.slot_of(u)] != 0;
    }

    bool in_bset(NodeId u) {
        log(QueryKind::InBset, u);
        require_walk_adjacent(u, "in_bset");
        if (radius_ > 2) extended_query_used_ = true;
        return bset_mask()[g_.slot_of(u)] != 0;
    }

    /// Number of u's neighbors outside the units' closed neighborhoods.
    int n_degree(NodeId u) {
        log(QueryKind::NDegree, u);
        require_walk_adjacent(u, "n_degree");
        const auto& nb = access_nb();
        int count = 0;
        for (Slot t : g_.adj(g_.slot_of(u)))
            if (!nb[t]) ++count;
        return count;
    }

    /// Escape hatch for disconnected exteriors: a uniformly random exterior
    /// node, even when no boundary edge reveals one. Logged and flagged so
    /// runs that needed it are identifiable.
    std::optional<NodeId> fallback_exterior(Rng& rng) {
        log(QueryKind::FallbackExterior, -1);
        fallback_used_ = true;
        std::vector<NodeId> exterior;
        for (Slot s = 0; s < accessible_mask_.size(); ++s)
            if (!accessible_mask_[s]) exterior.push_back(g_.id_at(s));
        if (exterior.empty()) return std::nullopt;
        return uniform_pick(rng, exterior);
    }

    bool is_unit(NodeId v) const {  // controller's own bookkeeping; not a query
        for (NodeId u : units_)
            if (u == v) return true;
        return false;
    }

    const std::vector<AuditEntry>& audit_log() const { return log_; }
    bool extended_query_used() const { return extended_query_used_; }
    bool fallback_used() const { return fallback_used_; }
    std::int64_t tick() const { return g_.time(); }

private:
    bool walk_adjacent(NodeId v) const {
        if (!g_.has_node(v)) return false;
        Slot s = g_.slot_of(v);
        if (accessible_mask_[s] || visited_.count(v)) return true;
        for (Slot t : g_.adj(s)) {
            if (accessible_mask_[t] || visited_.count(g_.id_at(t))) return true;
        }
        return false;
    }

    void require_walk_adjacent(NodeId v, const char* what) {
        if (walk_adjacent(v)) return;
        if (enforce_)
            throw FirewallViolation(std::string(what) + "(" + std::to_string(v) +
                                    ") outside the known region");
    }

    const std::vector<std::uint8_t>& bset_mask() {
        if (!bset_mask_) {
            auto exterior = detail::mask_to_slots(accessible_mask_, false);
            bset_mask_ = g_.reach_mask(exterior, bset_reach(radius_));
        }
        return *bset_mask_;
    }

    const std::vector<std::uint8_t>& access_nb() {
        if (!access_nb_) access_nb_ = detail::access_nb_mask(g_, g_.slots_of(units_));
        return *access_nb_;
    }

    void log(QueryKind kind, NodeId subject) { log_.push_back({kind, subject, g_.time()}); }

    const NetworkInstance& g_;
    std::vector<NodeId> units_;
    int radius_;
    bool enforce_;
    std::vector<std::uint8_t> accessible_mask_;
    std::optional<NodeSet> accessible_set_;
    std::optional<std::vector<std::uint8_t>> bset_mask_;
    std::optional<std::vector<std::uint8_t>> access_nb_;
    std::unordered_set<NodeId> visited_;
    std::vector<AuditEntry> log_;
    bool extended_query_used_ = false;
    bool fallback_used_ = false;
};

/// Replays an audit log against the graph state it was recorded on and
/// decides whether every subject query was walk-legal. Independent of the
/// view's own gating: it re-derives the known region step by step from the
/// log order, so it catches queries a non-enforcing view let through.
inline bool audit_is_legal(const NetworkInstance& g, const std::vector<NodeId>& units,
                           int radius, const std::vector<AuditEntry>& log,
                           std::string* why = nullptr) {
    auto accessible = g.reach_mask(g.slots_of(units), radius);
    std::unordered_set<NodeId> inquired;
    auto known_or_adjacent = [&](NodeId v) {
        if (!g.has_node(v)) return false;
        Slot s = g.slot_of(v);
        if (accessible[s] || inquired.count(v)) return true;
        for (Slot t : g.adj(s))
            if (accessible[t] || inquired.count(g.id_at(t))) return true;
        return false;
    };
    for (const auto& e : log) {
        switch (e.kind) {
            case QueryKind::AccessibleRegion:
            case QueryKind::Boundary:
            case QueryKind::Frontier:
            case QueryKind::FallbackExterior:
                break;
            case QueryKind::Inquire:
                if (!known_or_adjacent(e.subject)) {
                    if (why) *why = "illegal inquire of node " + std::to_string(e.subject);
                    return false;
                }
                if (!accessible[g.slot_of(e.subject)]) inquired.insert(e.subject);
                break;
            case QueryKind::InAccessible:
            case QueryKind::InBset:
            case QueryKind::NDegree:
                if (!known_or_adjacent(e.subject)) {
                    if (why)
                        *why = std::string("illegal ") + to_string(e.kind) + " on node " +
                               std::to_string(e.subject);
                    return false;
                }
                break;
        }
    }
    return true;
}

/// One JSON object per line: {"kind":...,"subject":...,"tick":...}.
inline void write_audit_jsonl(std::ostream& os, const std::vector<AuditEntry>& log) {
    for (const auto& e : log) {
        os << "{\"kind\":\"" << to_string(e.kind) << "\",\"subject\":" << e.subject
           << ",\"tick\":" << e.tick << "}\n";
    }
}

}  // namespace prowl
