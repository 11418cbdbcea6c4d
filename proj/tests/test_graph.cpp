#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "prowl/graph.hpp"
#include "prowl/oracle.hpp"

using namespace prowl;

TEST_CASE("first event creates both endpoints with opinion 0") {
    NetworkInstance g;
    REQUIRE(g.apply({7, 9, 0}));
    REQUIRE(g.node_count() == 2);
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.opinion(7) == 0.0);
    REQUIRE(g.opinion(9) == 0.0);
}

TEST_CASE("duplicate edges leave the instance unchanged") {
    NetworkInstance g;
    g.apply({1, 2, 0});
    REQUIRE_FALSE(g.apply({1, 2, 1}));
    REQUIRE_FALSE(g.apply({2, 1, 2}));  // orientation folds away
    REQUIRE(g.node_count() == 2);
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.degree(1) == 1);
}

TEST_CASE("new endpoint joins with opinion 0") {
    NetworkInstance g;
    g.apply({1, 2, 0});
    g.apply({2, 3, 1});
    REQUIRE(g.node_count() == 3);
    REQUIRE(g.edge_count() == 2);
    REQUIRE(g.opinion(3) == 0.0);
}

TEST_CASE("self-loop events are rejected") {
    NetworkInstance g;
    REQUIRE_THROWS_AS(g.apply({5, 5, 0}), InvalidEvent);
}

TEST_CASE("degree on fixed shapes") {
    auto star = testutil::star(4);
    REQUIRE(star.degree(0) == 4);
    REQUIRE(star.degree(1) == 1);
    auto tri = make_instance({{0, 1}, {1, 2}, {2, 0}});
    REQUIRE(tri.degree(1) == 2);
    REQUIRE_THROWS_AS(tri.degree(99), UnknownNode);
}

TEST_CASE("within_distance basics") {
    auto p3 = testutil::path(3);
    auto one_hop = p3.within_distance({0}, 1);
    REQUIRE(one_hop == NodeSet({0, 1}));

    auto p5 = testutil::path(5);
    REQUIRE(p5.within_distance({2}, 0) == NodeSet({2}));
    REQUIRE(p5.within_distance({2}, 2) == NodeSet({0, 1, 2, 3, 4}));
    REQUIRE_THROWS_AS(p5.within_distance({42}, 1), UnknownNode);
}

TEST_CASE("within_distance matches all-pairs distances on random graphs") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + uniform_index(rng, 19);
        auto g = testutil::random_connected(rng, n, n / 2);
        auto sg = oracle::SmallGraph::from_instance(g);
        auto dist = sg.distances();
        std::vector<NodeId> sources;
        std::size_t n_src = 1 + uniform_index(rng, 3);
        for (std::size_t i = 0; i < n_src; ++i)
            sources.push_back(static_cast<NodeId>(uniform_index(rng, n)));
        int r = static_cast<int>(uniform_index(rng, 4));
        auto got = g.within_distance(sources, r);
        for (NodeId v : g.node_ids()) {
            int best = oracle::kUnreachable;
            for (NodeId s : sources)
                best = std::min(best, dist[sg.position(v)][sg.position(s)]);
            REQUIRE(got.contains(v) == (best <= r));
        }
    }
}

TEST_CASE("within_distance grows with the radius") {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 3 + uniform_index(rng, 20);
        auto g = testutil::random_connected(rng, n, n);
        std::vector<NodeId> src{static_cast<NodeId>(uniform_index(rng, n))};
        auto prev = g.within_distance(src, 0);
        for (int r = 1; r <= 4; ++r) {
            auto cur = g.within_distance(src, r);
            for (NodeId v : prev) REQUIRE(cur.contains(v));
            prev = cur;
        }
    }
}

TEST_CASE("is_dominating on fixed shapes") {
    auto star = testutil::star(4);
    REQUIRE(star.is_dominating({0}, 1));
    auto p5 = testutil::path(5);
    REQUIRE_FALSE(p5.is_dominating({2}, 1));
    REQUIRE(p5.is_dominating({2}, 2));
}

TEST_CASE("is_dominating agrees with the all-pairs oracle") {
    Rng rng(13);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t n = 2 + uniform_index(rng, 19);
        auto g = testutil::random_connected(rng, n, n / 3);
        auto sg = oracle::SmallGraph::from_instance(g);
        auto dist = sg.distances();
        std::vector<NodeId> S;
        std::size_t n_s = 1 + uniform_index(rng, 4);
        for (std::size_t i = 0; i < n_s; ++i)
            S.push_back(static_cast<NodeId>(uniform_index(rng, n)));
        int r = 1 + static_cast<int>(uniform_index(rng, 3));
        bool expect = true;
        for (NodeId v : g.node_ids()) {
            int best = oracle::kUnreachable;
            for (NodeId s : S) best = std::min(best, dist[sg.position(v)][sg.position(s)]);
            if (best > r) expect = false;
        }
        REQUIRE(g.is_dominating(S, r) == expect);
    }
}

TEST_CASE("event streams grow node and edge sets monotonically") {
    Rng rng(14);
    std::vector<GraphEvent> events;
    for (int i = 0; i < 120; ++i) {
        auto u = static_cast<NodeId>(uniform_index(rng, 30));
        auto v = static_cast<NodeId>(uniform_index(rng, 30));
        if (u != v) events.push_back({u, v, i});
    }
    NetworkInstance g;
    std::set<NodeId> nodes_before;
    std::size_t edges_before = 0;
    for (const auto& ev : events) {
        g.apply(ev);
        std::set<NodeId> nodes_now(g.node_ids().begin(), g.node_ids().end());
        REQUIRE(std::includes(nodes_now.begin(), nodes_now.end(), nodes_before.begin(),
                              nodes_before.end()));
        REQUIRE(g.edge_count() >= edges_before);
        nodes_before = std::move(nodes_now);
        edges_before = g.edge_count();
    }
}

TEST_CASE("incremental application equals bulk reconstruction") {
    Rng rng(15);
    std::vector<GraphEvent> events;
    for (int i = 0; i < 200; ++i) {
        auto u = static_cast<NodeId>(uniform_index(rng, 40));
        auto v = static_cast<NodeId>(uniform_index(rng, 40));
        if (u != v) events.push_back({u, v, i});
    }
    NetworkInstance incremental;
    for (const auto& ev : events) incremental.apply(ev);

    // Independent reconstruction as canonical sets.
    std::set<NodeId> nodes;
    std::set<std::pair<NodeId, NodeId>> edges;
    for (const auto& ev : events) {
        nodes.insert(ev.u);
        nodes.insert(ev.v);
        edges.insert({std::min(ev.u, ev.v), std::max(ev.u, ev.v)});
    }
    REQUIRE(incremental.node_count() == nodes.size());
    REQUIRE(incremental.edge_count() == edges.size());
    for (auto [u, v] : edges) {
        auto nb = incremental.neighbors(u);
        REQUIRE(std::find(nb.begin(), nb.end(), v) != nb.end());
    }
}

TEST_CASE("committing a node pins its opinion to 1") {
    auto g = testutil::path(3);
    g.commit(0);
    REQUIRE(g.is_committed(0));
    REQUIRE(g.opinion(0) == 1.0);
    REQUIRE(g.access_units() == std::vector<NodeId>{0});
    REQUIRE_THROWS_AS(g.commit(99), UnknownNode);
}
