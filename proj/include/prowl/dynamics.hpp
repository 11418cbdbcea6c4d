#pragma once

#include <stdexcept>
#include <vector>

#include "prowl/graph.hpp"

namespace prowl::dynamics {

struct OpinionStats {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

/// One synchronous opinion update. `accessible` must be the reach mask of
/// the current access units at the configured radius (one flag per slot).
///
/// Per node: units hold 1; nodes outside the accessible region take the
/// mean of their neighbors' opinions (or keep their value if somehow
/// isolated); covered non-units average the constant 1 contributed by
/// their accessor with the opinions of their non-unit neighbors. All reads
/// come from the previous vector, so the update order is immaterial.
inline std::vector<double> step_opinions(const NetworkInstance& g,
                                         const std::vector<std::uint8_t>& accessible) {
    const std::size_t n = g.node_count();
    std::vector<double> next(n, 0.0);
    for (Slot v = 0; v < n; ++v) {
        if (g.committed_at(v)) {
            next[v] = 1.0;
            continue;
        }
        auto nbrs = g.adj(v);
        if (!accessible[v]) {
            if (nbrs.empty()) {
                next[v] = g.opinion_at(v);
                continue;
            }
            double sum = 0.0;
            for (Slot u : nbrs) sum += g.opinion_at(u);
            next[v] = sum / static_cast<double>(nbrs.size());
            continue;
        }
        double sum = 1.0;
        std::size_t count = 1;
        for (Slot u : nbrs) {
            if (!g.committed_at(u)) {
                sum += g.opinion_at(u);
                ++count;
            }
        }
        next[v] = sum / static_cast<double>(count);
    }
    return next;
}

/// Same update with the accessible region derived from the instance's units.
inline std::vector<double> step_opinions(const NetworkInstance& g, int radius) {
    return step_opinions(g, g.reach_mask(g.unit_slots(), radius));
}

inline OpinionStats opinion_stats(const NetworkInstance& g) {
    if (g.node_count() == 0) throw std::invalid_argument("opinion stats of empty instance");
    OpinionStats st{g.opinion_at(0), 0.0, g.opinion_at(0)};
    double sum = 0.0;
    for (Slot v = 0; v < g.node_count(); ++v) {
        double x = g.opinion_at(v);
        st.min = std::min(st.min, x);
        st.max = std::max(st.max, x);
        sum += x;
    }
    st.mean = sum / static_cast<double>(g.node_count());
    return st;
}

inline double average_opinion(const NetworkInstance& g) { return opinion_stats(g).mean; }

struct ConvergenceResult {
    bool converged = false;
    long steps = 0;
};

/// Iterates the opinion update on a frozen instance until every opinion
/// reaches 1 - epsilon. Counts steps; an instance that already satisfies
/// the bound takes 0. Non-convergence within max_steps (disconnected graph
/// or empty unit set) is reported, not thrown.
inline ConvergenceResult run_to_convergence(NetworkInstance& g, int radius, double epsilon,
                                            long max_steps = 1'000'000) {
    const double bound = 1.0 - epsilon;
    auto accessible = g.reach_mask(g.unit_slots(), radius);
    ConvergenceResult res;
    while (opinion_stats(g).min < bound) {
        if (res.steps >= max_steps) return res;
        g.set_opinions(step_opinions(g, accessible));
        ++res.steps;
    }
    res.converged = true;
    return res;
}

}  // namespace prowl::dynamics
