#include "doctest.h"

#include <cmath>
#include <random>

#include "graphrec/enrich.hpp"
#include "graphrec/errors.hpp"

#include "fixtures.hpp"

using namespace graphrec;

namespace {

Timestamp content_event(const RecGraph& g, int item_node, int content_node) {
    for (const Arc& a : g.arcs)
        if (a.src == item_node && a.dst == content_node)
            return a.event_time;
    return -1;
}

} // namespace

TEST_CASE("half-life decay halves exactly at the half-life") {
    CHECK(edf(0.0, 10.0) == 1.0);
    CHECK(edf(10.0, 10.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(edf(20.0, 10.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(ldf(10.0, 2.0, 10.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("both decays are strictly decreasing and stay positive") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        double tau = 1.0 + static_cast<double>(rng() % 1000);
        // keep steep*tau modest so successive doubles stay distinguishable
        double steep = (0.5 + static_cast<double>(rng() % 100) * 0.295) / tau;
        double prev_e = 2.0, prev_l = 2.0;
        for (int i = 0; i < 200; ++i) {
            double x = tau * 0.05 * i;
            double e = edf(x, tau);
            double l = ldf(x, steep, tau);
            CHECK(e > 0.0);
            CHECK(l > 0.0);
            CHECK(e <= 1.0);
            CHECK(l <= 1.0);
            CHECK(e < prev_e);
            CHECK(l < prev_l);
            prev_e = e;
            prev_l = l;
        }
    }
}

TEST_CASE("logistic decay survives extreme arguments") {
    // exp overflow region: very steep slope, age far below the midpoint
    CHECK(ldf(0.0, 100.0, 730.0) == 1.0);
    // underflow region: very old edge; must stay strictly positive
    double tiny = ldf(1e7, 100.0, 7.0);
    CHECK(tiny > 0.0);
    CHECK(tiny < 1e-300);
}

TEST_CASE("item-content arcs carry the item's most recent event") {
    auto s = fixtures::guiding_stream();
    auto catalog = fixtures::guiding_catalog(s);
    RecGraph g = attach_content(build_bip(s), catalog, ContentMode::CI);

    CHECK(g.nodes.size() == 8);   // 6 + c1 + c2
    CHECK(g.edge_count() == 9);   // 5 + one arc per (item, feature)

    int c1 = g.find_node(NodeKind::Content, catalog.features.find("c1").value());
    int c2 = g.find_node(NodeKind::Content, catalog.features.find("c2").value());
    auto item = [&](const char* name) {
        return g.find_node(NodeKind::Item, s.items.find(name).value());
    };
    CHECK(content_event(g, item("i1"), c1) == 1);
    CHECK(content_event(g, item("i2"), c1) == 6);
    CHECK(content_event(g, item("i3"), c2) == 4);
    CHECK(content_event(g, item("i4"), c2) == 5);
}

TEST_CASE("user-side content mirrors interactions per graph kind") {
    auto s = fixtures::guiding_stream();
    auto catalog = fixtures::guiding_catalog(s);

    SUBCASE("bipartite: user-content arcs") {
        RecGraph g = attach_content(build_bip(s), catalog, ContentMode::CIU);
        CHECK(g.nodes.size() == 8);
        CHECK(g.edge_count() == 12); // 9 + u1-c1, u1-c2, u2-c2

        int u1 = g.find_node(NodeKind::User, s.users.find("u1").value());
        int u2 = g.find_node(NodeKind::User, s.users.find("u2").value());
        int c1 = g.find_node(NodeKind::Content, catalog.features.find("c1").value());
        int c2 = g.find_node(NodeKind::Content, catalog.features.find("c2").value());
        CHECK(content_event(g, u1, c1) == 6); // via i1@1 and i2@6
        CHECK(content_event(g, u1, c2) == 4); // via i3@4
        CHECK(content_event(g, u2, c2) == 5); // via i3@2 and i4@5
        CHECK(content_event(g, u2, c1) == -1);
    }

    SUBCASE("session graph: session-content arcs, not user-content") {
        RecGraph base = build_stg(s, 3);
        RecGraph g = attach_content(base, catalog, ContentMode::CIU);
        CHECK(g.edge_count() == base.edge_count() + 4 + 5);
        int u1 = g.find_node(NodeKind::User, s.users.find("u1").value());
        int c1 = g.find_node(NodeKind::Content, catalog.features.find("c1").value());
        CHECK(content_event(g, u1, c1) == -1);

        int s11 = g.find_node(NodeKind::Session, s.users.find("u1").value(), 1);
        int c2 = g.find_node(NodeKind::Content, catalog.features.find("c2").value());
        CHECK(content_event(g, s11, c1) == 6); // i2 at t=6
        CHECK(content_event(g, s11, c2) == 4); // i3 at t=4
    }

    SUBCASE("link-stream graph: contemporary content copies") {
        RecGraph g = attach_content(build_lsg(s), catalog, ContentMode::CIU);
        // 8 distinct (t, feature) nodes; 8 item-side + 8 user-side arcs
        CHECK(g.nodes.size() == 16 + 8);
        CHECK(g.edge_count() == 18 + 16);
        int u1t4 = g.find_node(NodeKind::TemporalUser, s.users.find("u1").value(), 4);
        int c2t4 = g.find_node(NodeKind::TemporalContent, catalog.features.find("c2").value(), 4);
        REQUIRE(u1t4 >= 0);
        REQUIRE(c2t4 >= 0);
        CHECK(content_event(g, u1t4, c2t4) == 4);
    }
}

TEST_CASE("content injection only ever adds") {
    auto s = fixtures::guiding_stream();
    auto catalog = fixtures::guiding_catalog(s);
    for (GraphKind kind : {GraphKind::BIP, GraphKind::STG, GraphKind::LSG}) {
        RecGraph base = build_graph(s, kind, 3);
        RecGraph ci = attach_content(base, catalog, ContentMode::CI);
        RecGraph ciu = attach_content(base, catalog, ContentMode::CIU);

        // existing arcs unchanged, in place
        for (std::size_t i = 0; i < base.arcs.size(); ++i) {
            CHECK(ci.arcs[i].src == base.arcs[i].src);
            CHECK(ci.arcs[i].dst == base.arcs[i].dst);
            CHECK(ci.arcs[i].base_weight == base.arcs[i].base_weight);
            CHECK(ci.arcs[i].event_time == base.arcs[i].event_time);
        }
        CHECK(ci.nodes.size() >= base.nodes.size());

        // the user-side mode strictly extends the item-side mode
        CHECK(ciu.nodes.size() >= ci.nodes.size());
        CHECK(ciu.edge_count() >= ci.edge_count());
        for (std::size_t i = 0; i < ci.arcs.size(); ++i) {
            CHECK(ciu.arcs[i].src == ci.arcs[i].src);
            CHECK(ciu.arcs[i].dst == ci.arcs[i].dst);
        }
    }
}

TEST_CASE("attaching content to an item without features is an error") {
    auto s = fixtures::guiding_stream();
    auto partial = fixtures::make_catalog(s, {{"i1", {"c1"}}, {"i2", {"c1"}}, {"i3", {"c2"}}});
    RecGraph base = build_bip(s);
    CHECK_THROWS_AS(attach_content(base, partial, ContentMode::CI), ConsistencyError);
    CHECK_NOTHROW(attach_content(base, partial, ContentMode::None));
}

TEST_CASE("effective weights decay with age and respect causality") {
    auto s = fixtures::guiding_stream();
    RecGraph g = build_bip(s);

    auto flat = effective_weights(g, 6, DecaySpec::none());
    for (double w : flat)
        CHECK(w == 1.0);

    auto decayed = effective_weights(g, 6, DecaySpec::edf(2.0));
    for (std::size_t i = 0; i < g.arcs.size(); ++i) {
        double expected = std::exp2(-static_cast<double>(6 - g.arcs[i].event_time) / 2.0);
        CHECK(decayed[i] == doctest::Approx(expected).epsilon(1e-12));
        CHECK(decayed[i] <= 1.0);
        CHECK(decayed[i] > 0.0);
    }
    // pair symmetry
    for (std::size_t m = 0; m < g.edge_count(); ++m)
        CHECK(decayed[2 * m] == decayed[2 * m + 1]);

    CHECK_THROWS_AS(effective_weights(g, 5, DecaySpec::none()), TemporalCausalityError);
}
