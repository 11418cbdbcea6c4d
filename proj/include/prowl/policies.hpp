#pragma once

// The seven access-unit selection policies behind one interface.
//
// Two local baselines pick directly from granted information: lran takes a
// uniformly random exterior node adjacent to the accessible region, ldeg
// takes the region member with the highest N-degree. The five walk-based
// policies start at a random boundary node, step to a random exterior
// neighbor, and then walk under a policy-specific rule, inquiring each
// exterior node they stand on:
//
//   xran  random walk confined to the exterior set
//   xdeg  strictly degree-ascending walk confined to the exterior set
//   bran  random walk confined to the B-set
//   bdeg  strictly degree-ascending walk confined to the B-set
//   bnde  B-set walk ascending in N-degree while inside the accessible
//         region and in plain degree outside it
//
// Walks are capped at `max_steps` edges; ascending walks also stop as soon
// as no strictly better candidate exists. The last node of the walk is the
// selected unit.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prowl/observation.hpp"
#include "prowl/random.hpp"

namespace prowl {

enum class PolicyKind { lran, ldeg, xran, xdeg, bran, bdeg, bnde };

inline const char* to_string(PolicyKind k) {
    switch (k) {
        case PolicyKind::lran: return "lran";
        case PolicyKind::ldeg: return "ldeg";
        case PolicyKind::xran: return "xran";
        case PolicyKind::xdeg: return "xdeg";
        case PolicyKind::bran: return "bran";
        case PolicyKind::bdeg: return "bdeg";
        case PolicyKind::bnde: return "bnde";
    }
    return "?";
}

inline PolicyKind parse_policy(const std::string& name) {
    if (name == "lran") return PolicyKind::lran;
    if (name == "ldeg") return PolicyKind::ldeg;
    if (name == "xran") return PolicyKind::xran;
    if (name == "xdeg") return PolicyKind::xdeg;
    if (name == "bran") return PolicyKind::bran;
    if (name == "bdeg") return PolicyKind::bdeg;
    if (name == "bnde") return PolicyKind::bnde;
    throw std::invalid_argument("unknown policy '" + name + "'");
}

inline const std::vector<PolicyKind>& all_policies() {
    static const std::vector<PolicyKind> kAll = {
        PolicyKind::lran, PolicyKind::ldeg, PolicyKind::xran, PolicyKind::xdeg,
        PolicyKind::bran, PolicyKind::bdeg, PolicyKind::bnde};
    return kAll;
}

/// Walk-based policies; lran/ldeg select without walking.
inline bool is_walk_policy(PolicyKind k) {
    return k != PolicyKind::lran && k != PolicyKind::ldeg;
}

/// Policies whose selection is guaranteed to land in the exterior set.
inline bool is_exterior_policy(PolicyKind k) {
    return k == PolicyKind::xran || k == PolicyKind::xdeg;
}

/// Policies whose selection is guaranteed to land in the B-set.
inline bool is_bset_policy(PolicyKind k) {
    return k == PolicyKind::bran || k == PolicyKind::bdeg || k == PolicyKind::bnde;
}

struct ProwlTrace {
    std::int64_t tick = 0;
    PolicyKind policy = PolicyKind::lran;
    std::vector<NodeId> walk;  // w_0 .. w_j; singleton for non-walk policies
    NodeId chosen = -1;
    bool via_fallback = false;
    bool extended_query = false;
    bool audit_legal = true;  // filled by the independent replay
    std::vector<AuditEntry> queries;
};

class ProwlPolicy {
public:
    ProwlPolicy(PolicyKind kind, int max_steps, std::uint64_t seed)
        : kind_(kind), max_steps_(max_steps), rng_(seed) {
        if (max_steps < 1) throw std::invalid_argument("walk length must be >= 1");
    }

    PolicyKind kind() const { return kind_; }
    int max_steps() const { return max_steps_; }
    Rng& rng() { return rng_; }

    /// Selects the next access unit through the view. Returns nullopt when
    /// there is nothing to select (empty exterior).
    std::optional<ProwlTrace> select(PartialView& view) {
        ProwlTrace trace;
        trace.tick = view.tick();
        trace.policy = kind_;
        bool ok = false;
        switch (kind_) {
            case PolicyKind::lran: ok = select_lran(view, trace); break;
            case PolicyKind::ldeg: ok = select_ldeg(view, trace); break;
            default: ok = select_walk(view, trace); break;
        }
        trace.extended_query = view.extended_query_used();
        trace.queries = view.audit_log();
        if (!ok) return std::nullopt;
        return trace;
    }

private:
    bool select_lran(PartialView& view, ProwlTrace& trace) {
        auto frontier = view.frontier_nodes();
        if (frontier.empty()) return fallback(view, trace);
        trace.chosen = uniform_pick(rng_, frontier);
        trace.walk = {trace.chosen};
        return true;
    }

    bool select_ldeg(PartialView& view, ProwlTrace& trace) {
        const auto& region = view.accessible_region();
        std::vector<NodeId> best;
        int best_nd = -1;
        for (NodeId v : region) {
            if (view.is_unit(v)) continue;
            int nd = view.n_degree(v);
            if (nd > best_nd) {
                best_nd = nd;
                best.assign(1, v);
            } else if (nd == best_nd) {
                best.push_back(v);
            }
        }
        if (best.empty()) return fallback(view, trace);
        trace.chosen = uniform_pick(rng_, best);
        trace.walk = {trace.chosen};
        return true;
    }

    bool select_walk(PartialView& view, ProwlTrace& trace) {
        auto boundary = view.boundary_nodes();
        if (boundary.empty()) return fallback(view, trace);
        NodeId w0 = uniform_pick(rng_, boundary);
        trace.walk.push_back(w0);

        // First move: a uniformly random exterior neighbor of w0.
        auto rep = view.inquire(w0);
        std::vector<NodeId> outside;
        for (const auto& nb : rep.neighbors)
            if (!view.in_accessible(nb.id)) outside.push_back(nb.id);
        if (outside.empty()) return fallback(view, trace);
        NodeId cur = uniform_pick(rng_, outside);
        trace.walk.push_back(cur);

        // Subsequent moves, capped at max_steps_ edges in total.
        while (static_cast<int>(trace.walk.size()) <= max_steps_) {
            auto here = view.inquire(cur);
            std::optional<NodeId> next;
            switch (kind_) {
                case PolicyKind::xran:
                    next = random_step(view, here, /*bset=*/false);
                    break;
                case PolicyKind::bran:
                    next = random_step(view, here, /*bset=*/true);
                    break;
                case PolicyKind::xdeg:
                    next = ascend_degree(view, here, /*bset=*/false);
                    break;
                case PolicyKind::bdeg:
                    next = ascend_degree(view, here, /*bset=*/true);
                    break;
                case PolicyKind::bnde:
                    next = bnde_step(view, here);
                    break;
                default: break;
            }
            if (!next) break;
            cur = *next;
            trace.walk.push_back(cur);
        }
        trace.chosen = trace.walk.back();
        return true;
    }

    std::optional<NodeId> random_step(PartialView& view, const NeighborhoodReport& rep,
                                      bool bset) {
        std::vector<NodeId> candidates;
        for (const auto& nb : rep.neighbors) {
            bool allowed = bset ? view.in_bset(nb.id) : !view.in_accessible(nb.id);
            if (allowed) candidates.push_back(nb.id);
        }
        if (candidates.empty()) return std::nullopt;
        return uniform_pick(rng_, candidates);
    }

    std::optional<NodeId> ascend_degree(PartialView& view, const NeighborhoodReport& rep,
                                        bool bset) {
        std::vector<NodeId> best;
        int best_deg = rep.center_degree;  // strictly higher only
        for (const auto& nb : rep.neighbors) {
            bool allowed = bset ? view.in_bset(nb.id) : !view.in_accessible(nb.id);
            if (!allowed || nb.degree <= rep.center_degree) continue;
            if (nb.degree > best_deg) {
                best_deg = nb.degree;
                best.assign(1, nb.id);
            } else if (nb.degree == best_deg) {
                best.push_back(nb.id);
            }
        }
        if (best.empty()) return std::nullopt;
        return uniform_pick(rng_, best);
    }

    std::optional<NodeId> bnde_step(PartialView& view, const NeighborhoodReport& rep) {
        if (!view.in_accessible(rep.center)) {
            // N-degrees are not observable from out here; ascend plain degree.
            return ascend_degree(view, rep, /*bset=*/true);
        }
        int cur_nd = view.n_degree(rep.center);
        std::vector<NodeId> best;
        int best_nd = cur_nd;  // strictly higher only
        for (const auto& nb : rep.neighbors) {
            if (!view.in_bset(nb.id)) continue;
            int nd = view.n_degree(nb.id);
            if (nd <= cur_nd) continue;
            if (nd > best_nd) {
                best_nd = nd;
                best.assign(1, nb.id);
            } else if (nd == best_nd) {
                best.push_back(nb.id);
            }
        }
        if (best.empty()) return std::nullopt;
        return uniform_pick(rng_, best);
    }

    /// No boundary edge reveals the exterior (disconnected input data):
    /// pick a random exterior node directly so progress still happens.
    bool fallback(PartialView& view, ProwlTrace& trace) {
        auto node = view.fallback_exterior(rng_);
        if (!node) return false;  // exterior itself is empty: nothing to do
        trace.chosen = *node;
        trace.walk = {*node};
        trace.via_fallback = true;
        return true;
    }

    PolicyKind kind_;
    int max_steps_;
    Rng rng_;
};

}  // namespace prowl
