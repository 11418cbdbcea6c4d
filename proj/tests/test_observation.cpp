#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "prowl/observation.hpp"

using namespace prowl;

TEST_CASE("accessible region basics") {
    auto p5 = testutil::path(5);
    PartialView empty(p5, {}, 2);
    REQUIRE(empty.accessible_region().empty());

    auto p3 = testutil::path(3);
    PartialView v1(p3, {0}, 1);
    REQUIRE(v1.accessible_region() == NodeSet({0, 1}));

    PartialView v2(p5, {0}, 2);
    REQUIRE(v2.accessible_region() == NodeSet({0, 1, 2}));
}

TEST_CASE("accessible region grows with the unit set") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 4 + uniform_index(rng, 20);
        auto g = testutil::random_connected(rng, n, n / 2);
        NodeId a = static_cast<NodeId>(uniform_index(rng, n));
        NodeId b = static_cast<NodeId>(uniform_index(rng, n));
        PartialView small(g, {a}, 2);
        PartialView big(g, {a, b}, 2);
        for (NodeId v : small.accessible_region()) REQUIRE(big.accessible_region().contains(v));
    }
}

TEST_CASE("boundary nodes") {
    auto p3 = testutil::path(3);
    PartialView view(p3, {0}, 1);
    REQUIRE(view.boundary_nodes() == std::vector<NodeId>{1});

    PartialView all(p3, {1}, 1);  // dominates the whole path
    REQUIRE(all.boundary_nodes().empty());

    PartialView none(p3, {}, 1);
    REQUIRE(none.boundary_nodes().empty());
}

TEST_CASE("inquiry reports true degrees and opinions") {
    auto p3 = testutil::path(3);
    p3.set_opinion(2, 0.25);
    PartialView view(p3, {0}, 1);
    auto rep = view.inquire(1);
    REQUIRE(rep.center == 1);
    REQUIRE(rep.center_degree == 2);
    REQUIRE(rep.neighbors.size() == 2);
    for (const auto& nb : rep.neighbors) {
        REQUIRE(nb.degree == 1);
        if (nb.id == 2) REQUIRE(nb.opinion == 0.25);
    }

    auto star = testutil::star(4);
    PartialView sv(star, {0}, 1);
    auto center = sv.inquire(0);
    REQUIRE(center.neighbors.size() == 4);
    for (const auto& nb : center.neighbors) REQUIRE(nb.degree == 1);
}

TEST_CASE("inquiring beyond the walk frontier is a firewall violation") {
    auto p5 = testutil::path(5);
    PartialView view(p5, {0}, 1);  // knows {0,1}; node 2 is frontier
    REQUIRE_THROWS_AS(view.inquire(4), FirewallViolation);
    REQUIRE_NOTHROW(view.inquire(2));   // adjacent to known 1
    REQUIRE_NOTHROW(view.inquire(3));   // adjacent to inquired 2
    REQUIRE_THROWS_AS(view.in_bset(99), FirewallViolation);
}

TEST_CASE("a non-enforcing view records what the auditor then rejects") {
    auto p5 = testutil::path(5);
    PartialView view(p5, {0}, 1, /*enforce=*/false);
    view.inquire(4);  // slips through, but stays on the log
    std::string why;
    REQUIRE_FALSE(audit_is_legal(p5, {0}, 1, view.audit_log(), &why));
    REQUIRE(why.find("4") != std::string::npos);
}

TEST_CASE("legal walks replay clean") {
    auto p5 = testutil::path(5);
    PartialView view(p5, {0}, 1);
    view.accessible_region();
    view.boundary_nodes();
    auto rep = view.inquire(1);
    view.in_accessible(2);
    view.inquire(2);
    view.n_degree(3);
    view.in_bset(3);
    REQUIRE(audit_is_legal(p5, {0}, 1, view.audit_log()));
}

TEST_CASE("frontier lists exterior nodes touching the region") {
    auto kite = testutil::kite();  // 0-1, 1-2, 2-3, 2-4, 3-4
    PartialView view(kite, {0}, 1);
    auto frontier = view.frontier_nodes();
    REQUIRE(frontier == std::vector<NodeId>{2});
}

TEST_CASE("b-set membership through the view") {
    auto kite = testutil::kite();
    PartialView view(kite, {0}, 2);  // region {0,1,2}; exterior {3,4}
    REQUIRE(view.in_bset(2));        // adjacent to the exterior
    REQUIRE(view.in_bset(3));
    REQUIRE_FALSE(view.in_bset(1));
    REQUIRE_FALSE(view.extended_query_used());

    PartialView wide(kite, {0}, 3);  // radius beyond 2 flags the query
    wide.in_bset(1);
    REQUIRE(wide.extended_query_used());
}

TEST_CASE("audit log exports as JSON lines") {
    auto p3 = testutil::path(3);
    PartialView view(p3, {0}, 1);
    view.boundary_nodes();
    view.inquire(1);
    std::ostringstream os;
    write_audit_jsonl(os, view.audit_log());
    REQUIRE(os.str() ==
            "{\"kind\":\"boundary\",\"subject\":-1,\"tick\":0}\n"
            "{\"kind\":\"inquire\",\"subject\":1,\"tick\":0}\n");
}
