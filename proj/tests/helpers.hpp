#pragma once

#include <utility>
#include <vector>

#include "prowl/graph.hpp"
#include "prowl/random.hpp"

namespace testutil {

/// Random connected instance: a uniform attachment tree plus extra edges.
inline prowl::NetworkInstance random_connected(prowl::Rng& rng, std::size_t n,
                                               std::size_t extra_edges) {
    prowl::NetworkInstance g;
    for (std::size_t i = 1; i < n; ++i) {
        auto j = static_cast<prowl::NodeId>(prowl::uniform_index(rng, i));
        g.apply({static_cast<prowl::NodeId>(i), j, 0});
    }
    std::size_t added = 0;
    while (added < extra_edges) {
        auto u = static_cast<prowl::NodeId>(prowl::uniform_index(rng, n));
        auto v = static_cast<prowl::NodeId>(prowl::uniform_index(rng, n));
        if (u == v) continue;
        g.apply({u, v, 0});
        ++added;  // duplicates count as attempts so the loop always ends
    }
    return g;
}

inline prowl::NetworkInstance path(int n) {
    prowl::NetworkInstance g;
    for (int i = 0; i + 1 < n; ++i) g.apply({i, i + 1, 0});
    return g;
}

inline prowl::NetworkInstance star(int leaves) {
    prowl::NetworkInstance g;
    for (int i = 1; i <= leaves; ++i) g.apply({0, i, 0});
    return g;
}

/// The five-node teaching fixture: s - a - b, b - c, b - d, c - d.
/// Ids: s=0, a=1, b=2, c=3, d=4.
inline prowl::NetworkInstance kite() {
    return prowl::make_instance({{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
}

}  // namespace testutil
