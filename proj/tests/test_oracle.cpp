#include <catch2/catch_amalgamated.hpp>

#include <bit>

#include "helpers.hpp"
#include "prowl/oracle.hpp"

using namespace prowl;
using oracle::SmallGraph;

namespace {

// Full subset enumeration; the slow yardstick for the branch-and-bound.
int brute_force_minimum(const SmallGraph& g, int r) {
    int n = g.size();
    auto cover = g.cover_masks(r);
    std::uint64_t all = (1ULL << n) - 1;
    int best = n;
    for (std::uint64_t pick = 1; pick < (1ULL << n); ++pick) {
        std::uint64_t covered = 0;
        for (int v = 0; v < n; ++v)
            if (pick & (1ULL << v)) covered |= cover[v];
        if (covered == all) best = std::min(best, std::popcount(pick));
    }
    return best;
}

}  // namespace

TEST_CASE("minimum dominating sets on fixed shapes") {
    auto star = SmallGraph::from_edges({{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    REQUIRE(oracle::min_dominating_set(star, 1).size == 1);

    auto p5 = SmallGraph::from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    REQUIRE(oracle::min_dominating_set(p5, 1).size == 2);

    auto c6 = SmallGraph::from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    REQUIRE(oracle::min_dominating_set(c6, 1).size == 2);
}

TEST_CASE("branch and bound equals full enumeration on random graphs") {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + uniform_index(rng, 9);
        auto inst = testutil::random_connected(rng, n, n / 2);
        auto g = SmallGraph::from_instance(inst);
        int r = 1 + static_cast<int>(uniform_index(rng, 2));
        auto exact = oracle::min_dominating_set(g, r);
        REQUIRE(exact.size == brute_force_minimum(g, r));
        REQUIRE(inst.is_dominating(exact.witness, r));
    }
}

TEST_CASE("witness dominates and nothing smaller does") {
    Rng rng(22);
    auto inst = testutil::random_connected(rng, 12, 6);
    auto g = SmallGraph::from_instance(inst);
    auto exact = oracle::min_dominating_set(g, 1);
    REQUIRE(inst.is_dominating(exact.witness, 1));
    REQUIRE(exact.size == brute_force_minimum(g, 1));
}

TEST_CASE("greedy output always dominates") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + uniform_index(rng, 18);
        auto inst = testutil::random_connected(rng, n, n / 2);
        auto g = SmallGraph::from_instance(inst);
        int r = 1 + static_cast<int>(uniform_index(rng, 2));
        REQUIRE(inst.is_dominating(oracle::greedy_dominating_set(g, r), r));
    }
    auto star = SmallGraph::from_edges({{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    REQUIRE(oracle::greedy_dominating_set(star, 1) == std::vector<NodeId>{0});

    auto p5 = SmallGraph::from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    REQUIRE(oracle::greedy_dominating_set(p5, 2).size() <= 2);
}

TEST_CASE("oracle rejects graphs beyond its size cap") {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 1; i < 70; ++i) edges.push_back({0, i});
    REQUIRE_THROWS_AS(SmallGraph::from_edges(edges), std::invalid_argument);
}

TEST_CASE("reference step pins committed nodes at 1") {
    auto g = SmallGraph::from_edges({{0, 1}, {1, 2}});
    std::vector<double> C{0.2, 0.4, 0.9};
    std::vector<bool> S{true, true, true};
    auto next = oracle::reference_step(g, C, S, 1);
    for (double x : next) REQUIRE(x == 1.0);
}
