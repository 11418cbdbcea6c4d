#pragma once

// Independent reference implementations used to cross-check the simulator:
// exact minimum distance-r dominating sets, a greedy baseline, and a naive
// opinion-update step. Deliberately shares no search or BFS code with the
// rest of the library; distances come from Floyd-Warshall on an adjacency
// matrix. Small graphs only.

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "prowl/graph.hpp"

namespace prowl::oracle {

constexpr int kMaxNodes = 64;
constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

class SmallGraph {
public:
    static SmallGraph from_edges(const std::vector<std::pair<NodeId, NodeId>>& edges) {
        SmallGraph g;
        for (auto [u, v] : edges) {
            if (u == v) continue;
            int a = g.index(u), b = g.index(v);
            g.adj_[a][b] = g.adj_[b][a] = true;
        }
        return g;
    }

    static SmallGraph from_instance(const NetworkInstance& inst) {
        SmallGraph g;
        for (NodeId v : inst.node_ids()) g.index(v);
        for (NodeId v : inst.node_ids())
            for (NodeId u : inst.neighbors(v))
                g.adj_[g.index(v)][g.index(u)] = true;
        return g;
    }

    int size() const { return static_cast<int>(labels_.size()); }
    NodeId label(int i) const { return labels_[i]; }
    bool adjacent(int a, int b) const { return adj_[a][b]; }

    int position(NodeId v) const {
        for (int i = 0; i < size(); ++i)
            if (labels_[i] == v) return i;
        throw UnknownNode(v);
    }

    /// All-pairs shortest paths, kUnreachable across components.
    std::vector<std::vector<int>> distances() const {
        int n = size();
        std::vector<std::vector<int>> d(n, std::vector<int>(n, kUnreachable));
        for (int i = 0; i < n; ++i) d[i][i] = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (adj_[i][j]) d[i][j] = 1;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
        return d;
    }

    /// cover[i] = bitmask of nodes within distance r of i.
    std::vector<std::uint64_t> cover_masks(int r) const {
        auto d = distances();
        int n = size();
        std::vector<std::uint64_t> cover(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][j] <= r) cover[i] |= (1ULL << j);
        return cover;
    }

private:
    int index(NodeId v) {
        for (int i = 0; i < size(); ++i)
            if (labels_[i] == v) return i;
        if (size() >= kMaxNodes) throw std::invalid_argument("oracle graph too large");
        labels_.push_back(v);
        for (auto& row : adj_) row.push_back(false);
        adj_.emplace_back(labels_.size(), false);
        return size() - 1;
    }

    std::vector<NodeId> labels_;
    std::vector<std::vector<bool>> adj_;
};

struct DominatingSet {
    int size = 0;
    std::vector<NodeId> witness;
};

namespace detail {

inline void branch(const std::vector<std::uint64_t>& cover, std::uint64_t all,
                   std::uint64_t covered, std::vector<int>& chosen,
                   std::vector<int>& best, std::size_t max_ball) {
    if (covered == all) {
        if (best.empty() || chosen.size() < best.size()) best = chosen;
        return;
    }
    std::size_t uncovered = std::popcount(all & ~covered);
    std::size_t lower = (uncovered + max_ball - 1) / max_ball;
    if (!best.empty() && chosen.size() + lower >= best.size()) return;

    // Branch on the uncovered node with the fewest potential coverers.
    int n = static_cast<int>(cover.size());
    int pick = -1;
    int fewest = n + 1;
    for (int v = 0; v < n; ++v) {
        if (covered & (1ULL << v)) continue;
        int c = 0;
        for (int u = 0; u < n; ++u)
            if (cover[u] & (1ULL << v)) ++c;
        if (c < fewest) {
            fewest = c;
            pick = v;
        }
    }
    std::vector<int> candidates;
    for (int u = 0; u < n; ++u)
        if (cover[u] & (1ULL << pick)) candidates.push_back(u);
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        return std::popcount(cover[a] & ~covered) > std::popcount(cover[b] & ~covered);
    });
    for (int u : candidates) {
        chosen.push_back(u);
        branch(cover, all, covered | cover[u], chosen, best, max_ball);
        chosen.pop_back();
    }
}

}  // namespace detail

/// Exact minimum distance-r dominating set by branch and bound.
inline DominatingSet min_dominating_set(const SmallGraph& g, int r) {
    int n = g.size();
    if (n == 0) return {};
    if (n > kMaxNodes) throw std::invalid_argument("oracle graph too large");
    auto cover = g.cover_masks(r);
    std::uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    std::size_t max_ball = 1;
    for (auto m : cover) max_ball = std::max<std::size_t>(max_ball, std::popcount(m));
    std::vector<int> chosen, best;
    detail::branch(cover, all, 0, chosen, best, max_ball);
    DominatingSet out;
    out.size = static_cast<int>(best.size());
    for (int i : best) out.witness.push_back(g.label(i));
    return out;
}

/// Greedy baseline: repeatedly take the node covering the most uncovered
/// nodes (lowest position breaks ties).
inline std::vector<NodeId> greedy_dominating_set(const SmallGraph& g, int r) {
    int n = g.size();
    if (n == 0) return {};
    auto cover = g.cover_masks(r);
    std::uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    std::uint64_t covered = 0;
    std::vector<NodeId> out;
    while (covered != all) {
        int pick = -1;
        int gain = -1;
        for (int u = 0; u < n; ++u) {
            int c = std::popcount(cover[u] & ~covered);
            if (c > gain) {
                gain = c;
                pick = u;
            }
        }
        covered |= cover[pick];
        out.push_back(g.label(pick));
    }
    return out;
}

/// Naive synchronous opinion update: committed nodes hold 1; nodes outside
/// every unit's radius-r ball average their neighbors; covered non-units
/// average a fixed 1 with their non-unit neighbors. Mirrors the contract of
/// dynamics::step_opinions through an entirely separate code path.
inline std::vector<double> reference_step(const SmallGraph& g,
                                          const std::vector<double>& opinions,
                                          const std::vector<bool>& is_unit, int r) {
    int n = g.size();
    auto d = g.distances();
    std::vector<bool> accessible(n, false);
    for (int v = 0; v < n; ++v)
        for (int s = 0; s < n; ++s)
            if (is_unit[s] && d[v][s] <= r) accessible[v] = true;

    std::vector<double> next(n, 0.0);
    for (int v = 0; v < n; ++v) {
        if (is_unit[v]) {
            next[v] = 1.0;
            continue;
        }
        if (!accessible[v]) {
            double sum = 0.0;
            int count = 0;
            for (int u = 0; u < n; ++u)
                if (g.adjacent(v, u)) {
                    sum += opinions[u];
                    ++count;
                }
            next[v] = count ? sum / count : opinions[v];
            continue;
        }
        double sum = 1.0;
        int count = 1;
        for (int u = 0; u < n; ++u)
            if (g.adjacent(v, u) && !is_unit[u]) {
                sum += opinions[u];
                ++count;
            }
        next[v] = sum / count;
    }
    return next;
}

}  // namespace prowl::oracle
