#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "prowl/generators.hpp"
#include "prowl/policies.hpp"
#include "prowl/structure.hpp"

using namespace prowl;

TEST_CASE("policy names round-trip") {
    for (PolicyKind k : all_policies()) REQUIRE(parse_policy(to_string(k)) == k);
    REQUIRE_THROWS_AS(parse_policy("zdeg"), std::invalid_argument);
}

// Fixture: s=0, a=1, b=2, c=3, d=4; edges s-a, a-b, b-c, b-d, c-d.
// With S={s} and r=1 the region is {s,a}; degrees a=2, b=3, c=2, d=2.

TEST_CASE("xdeg walks to the exterior degree peak") {
    auto g = testutil::kite();
    PartialView view(g, {0}, 1);
    ProwlPolicy policy(PolicyKind::xdeg, 4, 99);
    auto trace = policy.select(view);
    REQUIRE(trace);
    REQUIRE(trace->walk == std::vector<NodeId>{1, 2});
    REQUIRE(trace->chosen == 2);
    REQUIRE(audit_is_legal(g, {0}, 1, trace->queries));
}

TEST_CASE("bdeg stops at the same peak on this fixture") {
    auto g = testutil::kite();
    PartialView view(g, {0}, 1);
    ProwlPolicy policy(PolicyKind::bdeg, 4, 7);
    auto trace = policy.select(view);
    REQUIRE(trace);
    REQUIRE(trace->walk == std::vector<NodeId>{1, 2});
    REQUIRE(trace->chosen == 2);
}

TEST_CASE("lran is forced when one node touches the region") {
    auto g = testutil::kite();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PartialView view(g, {0}, 1);
        ProwlPolicy policy(PolicyKind::lran, 4, seed);
        auto trace = policy.select(view);
        REQUIRE(trace);
        REQUIRE(trace->chosen == 2);
    }
}

TEST_CASE("ldeg picks inside the region") {
    auto g = testutil::kite();
    PartialView view(g, {0}, 1);
    ProwlPolicy policy(PolicyKind::ldeg, 4, 3);
    auto trace = policy.select(view);
    REQUIRE(trace);
    REQUIRE(trace->chosen == 1);  // only non-unit region member
}

TEST_CASE("bnde ascends n-degree once back inside the region") {
    auto g = testutil::kite();
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        PartialView view(g, {0}, 2);  // region {s,a,b}, exterior {c,d}, B {b,c,d}
        ProwlPolicy policy(PolicyKind::bnde, 4, seed);
        auto trace = policy.select(view);
        REQUIRE(trace);
        REQUIRE(b_set(g, {0}, 2).contains(trace->chosen));
        REQUIRE(audit_is_legal(g, {0}, 2, trace->queries));
    }
}

namespace {

/// Drives repeated selections on a growing instance, checking the paper's
/// membership guarantees against ground truth at every call.
void check_policy_invariants(PolicyKind kind, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.model = ModelKind::BA;
    spec.initial_size = 60;
    spec.avg_degree = 6;
    spec.seed = mix_seed(seed, 17);
    auto model = make_model(spec);
    auto g = grow_to(*model, spec.initial_size);

    Rng pick(seed);
    g.commit(uniform_pick(pick, g.node_ids()));
    ProwlPolicy policy(kind, 4, seed);

    int selections = 0;
    while (!g.is_dominating(g.access_units(), 2) && selections < 100) {
        auto units = g.access_units();
        auto sets = compute_structural_sets(g, units, 2);
        PartialView view(g, units, 2);
        auto trace = policy.select(view);
        REQUIRE(trace);

        for (NodeId u : units) REQUIRE(trace->chosen != u);
        if (is_exterior_policy(kind)) REQUIRE(sets.exterior.contains(trace->chosen));
        if (is_bset_policy(kind)) REQUIRE(sets.bset.contains(trace->chosen));
        REQUIRE(trace->walk.size() <= 5);  // w_0..w_k with k = 4
        if (is_walk_policy(kind)) {
            REQUIRE(trace->chosen == trace->walk.back());
            for (std::size_t i = 0; i + 1 < trace->walk.size(); ++i) {
                auto nb = g.neighbors(trace->walk[i]);
                REQUIRE(std::find(nb.begin(), nb.end(), trace->walk[i + 1]) != nb.end());
            }
        }
        // Strict criterion ascent along the tail of degree walks.
        if (kind == PolicyKind::xdeg || kind == PolicyKind::bdeg) {
            for (std::size_t i = 1; i + 1 < trace->walk.size(); ++i)
                REQUIRE(g.degree(trace->walk[i + 1]) > g.degree(trace->walk[i]));
        }
        REQUIRE(audit_is_legal(g, units, 2, trace->queries));

        g.commit(trace->chosen);
        ++selections;
        auto batch = model->next_tick();
        for (const auto& ev : *batch) g.apply(ev);
    }
    REQUIRE(g.is_dominating(g.access_units(), 2));
}

}  // namespace

TEST_CASE("membership and walk invariants hold for every policy") {
    for (PolicyKind kind : all_policies())
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) check_policy_invariants(kind, seed);
}

TEST_CASE("identical seeds give identical traces") {
    auto g = testutil::kite();
    for (PolicyKind kind : all_policies()) {
        PartialView va(g, {0}, 2);
        PartialView vb(g, {0}, 2);
        ProwlPolicy pa(kind, 4, 12345);
        ProwlPolicy pb(kind, 4, 12345);
        auto a = pa.select(va);
        auto b = pb.select(vb);
        REQUIRE(a);
        REQUIRE(b);
        REQUIRE(a->walk == b->walk);
        REQUIRE(a->chosen == b->chosen);
    }
}

TEST_CASE("a cheating query is rejected and flagged") {
    // A policy that ignores the walk rules and inquires a far node.
    auto g = testutil::path(8);
    PartialView enforcing(g, {0}, 1);
    REQUIRE_THROWS_AS(enforcing.inquire(7), FirewallViolation);

    PartialView lax(g, {0}, 1, /*enforce=*/false);
    lax.inquire(7);
    REQUIRE_FALSE(audit_is_legal(g, {0}, 1, lax.audit_log()));
}
