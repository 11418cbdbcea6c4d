#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace prowl {

/// Opaque agent identifier. Datasets bring arbitrary integer labels;
/// generators number agents sequentially from 0.
using NodeId = std::int64_t;

/// Dense internal index of a node, assigned in arrival order.
using Slot = std::uint32_t;

struct GraphEvent {
    NodeId u = 0;
    NodeId v = 0;
    std::int64_t stamp = 0;
};

class InvalidEvent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownNode : public std::runtime_error {
public:
    explicit UnknownNode(NodeId v)
        : std::runtime_error("unknown node " + std::to_string(v)) {}
};

/// Sorted, duplicate-free set of node ids with O(log n) membership.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    bool contains(NodeId v) const {
        return std::binary_search(ids_.begin(), ids_.end(), v);
    }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    const std::vector<NodeId>& ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    bool operator==(const NodeSet&) const = default;

private:
    std::vector<NodeId> ids_;
};

/// One evolving network instance: node set, undirected simple edges,
/// an opinion per node, and the set of committed access units.
///
/// Growth is strictly incremental. Nodes enter only as endpoints of edge
/// arrivals, so a degree-0 node is unrepresentable, and nothing is ever
/// deleted. One simulation owns and mutates an instance; copies are cheap
/// enough at the scales we run and serve as frozen snapshots.
class NetworkInstance {
public:
    /// Applies one edge-arrival event. Unknown endpoints join the node set
    /// with opinion 0. Duplicate edges are ignored (returns false).
    /// Self-loops are invalid input and throw.
    bool apply(const GraphEvent& ev) {
        if (ev.u == ev.v)
            throw InvalidEvent("self-loop event (" + std::to_string(ev.u) + "," +
                               std::to_string(ev.v) + ")");
        Slot a = ensure_node(ev.u);
        Slot b = ensure_node(ev.v);
        auto& na = adj_[a];
        if (std::find(na.begin(), na.end(), b) != na.end()) return false;
        na.push_back(b);
        adj_[b].push_back(a);
        ++edge_count_;
        return true;
    }

    /// Marks v as an access unit and pins its opinion to 1.
    void commit(NodeId v) {
        Slot s = slot_of(v);
        if (committed_[s]) return;
        committed_[s] = 1;
        unit_slots_.push_back(s);
        opinion_[s] = 1.0;
    }

    // --- structure ------------------------------------------------------

    std::size_t node_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    bool has_node(NodeId v) const { return index_.count(v) != 0; }

    int degree(NodeId v) const { return static_cast<int>(adj_[slot_of(v)].size()); }

    std::vector<NodeId> neighbors(NodeId v) const {
        const auto& a = adj_[slot_of(v)];
        std::vector<NodeId> out;
        out.reserve(a.size());
        for (Slot s : a) out.push_back(labels_[s]);
        return out;
    }

    /// All node ids in arrival order.
    const std::vector<NodeId>& node_ids() const { return labels_; }

    // --- opinions and units ----------------------------------------------

    double opinion(NodeId v) const { return opinion_[slot_of(v)]; }
    void set_opinion(NodeId v, double value) { opinion_[slot_of(v)] = value; }

    bool is_committed(NodeId v) const { return committed_[slot_of(v)] != 0; }
    std::size_t unit_count() const { return unit_slots_.size(); }

    /// Access units in commit order.
    std::vector<NodeId> access_units() const {
        std::vector<NodeId> out;
        out.reserve(unit_slots_.size());
        for (Slot s : unit_slots_) out.push_back(labels_[s]);
        return out;
    }

    std::int64_t time() const { return time_; }
    void set_time(std::int64_t t) { time_ = t; }

    // --- distance queries -------------------------------------------------

    /// Multi-source BFS truncated at depth r: every node within distance r
    /// of some source. Throws UnknownNode for sources outside the graph.
    NodeSet within_distance(const std::vector<NodeId>& sources, int r) const {
        auto mask = reach_mask(slots_of(sources), r);
        std::vector<NodeId> out;
        for (Slot s = 0; s < mask.size(); ++s)
            if (mask[s]) out.push_back(labels_[s]);
        return NodeSet(std::move(out));
    }

    /// True iff every node lies within distance r of some member of S.
    bool is_dominating(const std::vector<NodeId>& S, int r) const {
        std::size_t reached = 0;
        auto mask = reach_mask(slots_of(S), r, &reached);
        return reached == node_count();
    }

    // --- slot-level access (hot paths) -------------------------------------

    Slot slot_of(NodeId v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw UnknownNode(v);
        return it->second;
    }
    NodeId id_at(Slot s) const { return labels_[s]; }
    std::span<const Slot> adj(Slot s) const { return adj_[s]; }
    double opinion_at(Slot s) const { return opinion_[s]; }
    bool committed_at(Slot s) const { return committed_[s] != 0; }
    const std::vector<Slot>& unit_slots() const { return unit_slots_; }
    const std::vector<double>& opinions() const { return opinion_; }
    void set_opinions(std::vector<double> values) { opinion_ = std::move(values); }

    std::vector<Slot> slots_of(const std::vector<NodeId>& ids) const {
        std::vector<Slot> out;
        out.reserve(ids.size());
        for (NodeId v : ids) out.push_back(slot_of(v));
        return out;
    }

    /// Reachability flags (one per slot) for a truncated multi-source BFS.
    std::vector<std::uint8_t> reach_mask(const std::vector<Slot>& sources, int r,
                                         std::size_t* reached_count = nullptr) const {
        std::vector<std::uint8_t> mask(node_count(), 0);
        std::deque<std::pair<Slot, int>> frontier;
        std::size_t reached = 0;
        for (Slot s : sources) {
            if (!mask[s]) {
                mask[s] = 1;
                ++reached;
                frontier.emplace_back(s, 0);
            }
        }
        while (!frontier.empty()) {
            auto [s, d] = frontier.front();
            frontier.pop_front();
            if (d == r) continue;
            for (Slot t : adj_[s]) {
                if (!mask[t]) {
                    mask[t] = 1;
                    ++reached;
                    frontier.emplace_back(t, d + 1);
                }
            }
        }
        if (reached_count) *reached_count = reached;
        return mask;
    }

private:
    Slot ensure_node(NodeId v) {
        auto it = index_.find(v);
        if (it != index_.end()) return it->second;
        Slot s = static_cast<Slot>(labels_.size());
        index_.emplace(v, s);
        labels_.push_back(v);
        adj_.emplace_back();
        opinion_.push_back(0.0);
        committed_.push_back(0);
        return s;
    }

    std::unordered_map<NodeId, Slot> index_;
    std::vector<NodeId> labels_;
    std::vector<std::vector<Slot>> adj_;
    std::vector<double> opinion_;
    std::vector<std::uint8_t> committed_;
    std::vector<Slot> unit_slots_;
    std::size_t edge_count_ = 0;
    std::int64_t time_ = 0;
};

/// Convenience: builds an instance from (u, v) pairs, skipping self-loops.
inline NetworkInstance make_instance(const std::vector<std::pair<NodeId, NodeId>>& edges) {
    NetworkInstance g;
    for (auto [u, v] : edges)
        if (u != v) g.apply({u, v, 0});
    return g;
}

}  // namespace prowl
