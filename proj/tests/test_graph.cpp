#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ovc/canonical.hpp"
#include "ovc/graph.hpp"

using namespace ovc;

static bool same_class(const std::string& a, const std::string& b) {
    return canonicalize(parse_graph(a)).key == canonicalize(parse_graph(b)).key;
}

TEST_CASE("parse reads edge and leg multiplicities") {
    Graph g = parse_graph("(1,2)^2(3)");
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0].lo == 1);
    CHECK(g.edges()[0].hi == 2);
    CHECK(g.edges()[0].mult == 2);
    REQUIRE(g.legs().size() == 1);
    CHECK(g.legs()[0].vertex == 3);
    CHECK(g.legs()[0].mult == 1);

    Graph h = parse_graph("(2,15)(15,3)");
    CHECK(h.edge_count() == 2);
    CHECK(h.vertex_set() == std::vector<int>{2, 3, 15});

    CHECK(parse_graph("1").empty());
    CHECK(parse_graph(" (1 , 2) ^ 2 ( 3 ) ") == g);
    // repeated factors accumulate multiplicity
    CHECK(parse_graph("(1,2)(2,1)") == parse_graph("(1,2)^2"));
}

TEST_CASE("parse rejects malformed notation with a position") {
    CHECK_THROWS_AS(parse_graph("(1,2"), ParseError);
    CHECK_THROWS_AS(parse_graph("(1,2)^0"), ParseError);
    CHECK_THROWS_AS(parse_graph("(0,2)"), ParseError);
    CHECK_THROWS_AS(parse_graph(""), ParseError);
    CHECK_THROWS_AS(parse_graph("(1,2)x"), ParseError);
    CHECK_THROWS_AS(parse_graph("1(1,2)"), ParseError);
    try {
        parse_graph("(1,2)(3");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 7);
    }
}

TEST_CASE("render displays edges before legs with exponents") {
    CHECK(render_graph(parse_graph("(3)(1,2)^2")) == "(1,2)^2(3)");
    CHECK(render_graph(Graph{}) == "1");
    CHECK(render_graph(parse_graph("(2,3)(1,2)")) == "(1,2)(2,3)");
    CHECK(render_graph(parse_graph("(1,1)")) == "(1,1)");
}

TEST_CASE("parse and render round-trip on canonical forms") {
    std::mt19937 rng(7);
    for (int it = 0; it < 300; ++it) {
        Graph g = canonicalize(testing::random_graph(rng)).graph;
        CHECK(parse_graph(render_graph(g)) == g);
    }
}

TEST_CASE("inspect reports vertices, edges and legs") {
    auto [verts, ec, lc] = inspect(parse_graph("(1,2)^2(3)"));
    CHECK(verts == std::vector<int>{1, 2, 3});
    CHECK(ec == 2);
    CHECK(lc == 1);

    auto empty = inspect(Graph{});
    CHECK(empty.vertices.empty());
    CHECK(empty.edge_count == 0);
    CHECK(empty.leg_count == 0);

    auto path = inspect(parse_graph("(1,2)(2,3)"));
    CHECK(path.vertices == std::vector<int>{1, 2, 3});
    CHECK(path.edge_count == 2);
    CHECK(path.leg_count == 0);
}

TEST_CASE("with_leg and with_edge increment multiplicities") {
    CHECK(parse_graph("(1,2)").with_leg(2) == parse_graph("(2)(1,2)"));
    CHECK(parse_graph("(1,2)").with_edge(3, 4) == parse_graph("(1,2)(3,4)"));
    CHECK(parse_graph("(1,2)").with_edge(1, 1) == parse_graph("(1,1)(1,2)"));
    CHECK(parse_graph("(1,2)(3)").with_leg(3) == parse_graph("(1,2)(3)^2"));
}

TEST_CASE("fresh vertex is the smallest unused positive label") {
    CHECK(parse_graph("(1,2)").fresh_vertex() == 3);
    CHECK(parse_graph("(1,3)").fresh_vertex() == 2);
    CHECK(parse_graph("(2,3)(5)").fresh_vertex() == 1);
    CHECK(Graph{}.fresh_vertex() == 1);
}

TEST_CASE("canonicalize merges relabeled graphs") {
    CHECK(same_class("(2,15)(15,3)", "(1,2)(2,3)"));
    CHECK(same_class("(2,1)(1,3)", "(1,2)(2,3)"));
    CHECK(same_class("(5,6)^2(1)", "(1,2)^2(3)"));
    CHECK(same_class("(1,2)(2,3)^2", "(1,2)^2(2,3)"));
    CHECK(same_class("(1,2)(2,3)(3,1)(1)^2", "(3,4)(3,2)(2,4)(3)^2"));
    CHECK_FALSE(same_class("(1,2)(2,3)", "(1,2)(3,4)"));
    CHECK_FALSE(same_class("(1,2)", "(1,2)^2"));
    CHECK_FALSE(same_class("(1,2)(1)", "(1,2)"));
    // legs at different orbits do not merge
    CHECK_FALSE(same_class("(1,2)(2,3)(1)", "(1,2)(2,3)(2)"));
}

TEST_CASE("canonical graphs use consecutive labels starting at 1") {
    for (const char* text : {"(7,9)", "(4,8)(8,12)^3(5)", "(10)(11)^2", "(6,6)(2,3)"}) {
        Graph canon = canonicalize(parse_graph(text)).graph;
        auto vs = canon.vertex_set();
        for (std::size_t i = 0; i < vs.size(); ++i)
            CHECK(vs[i] == static_cast<int>(i) + 1);
    }
}

TEST_CASE("canonicalize is invariant under random relabelings") {
    std::mt19937 rng(20240811);
    for (int it = 0; it < 1000; ++it) {
        Graph g = testing::random_graph(rng);
        Graph h = testing::random_relabeling(g, rng);
        CHECK(canonicalize(g).key == canonicalize(h).key);
    }
}

TEST_CASE("canonicalize matches the exhaustive oracle") {
    std::mt19937 rng(99);
    for (int it = 0; it < 250; ++it) {
        Graph g = testing::random_graph(rng, 6);
        CHECK(canonicalize(g).key == testing::reference_canonical_key(g));
    }
}

TEST_CASE("canonicalize is idempotent") {
    std::mt19937 rng(11);
    for (int it = 0; it < 300; ++it) {
        CanonicalForm cf = canonicalize(testing::random_graph(rng));
        CanonicalForm again = canonicalize(cf.graph);
        CHECK(again.key == cf.key);
        CHECK(again.graph == cf.graph);
    }
}

TEST_CASE("canonicalize rejects graphs above the vertex cap") {
    Graph big;
    for (int v = 1; v <= kVertexCap + 1; ++v)
        big = big.with_leg(v);
    try {
        canonicalize(big);
        FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find(std::to_string(kVertexCap)) != std::string::npos);
    }
    Graph at_cap;
    for (int v = 1; v <= kVertexCap; ++v)
        at_cap = at_cap.with_leg(v);
    CHECK_NOTHROW(canonicalize(at_cap));
}

TEST_CASE("highly symmetric graphs canonicalize quickly") {
    Graph g;
    for (int i = 0; i < 4; ++i)
        g = g.with_edge(2 * i + 1, 2 * i + 2);
    for (int v = 9; v <= 12; ++v)
        g = g.with_leg(v);
    CanonicalForm cf = canonicalize(g);
    CHECK(cf.graph.vertex_count() == 12);
    CHECK(cf.graph.edge_count() == 4);
    CHECK(cf.graph.leg_count() == 4);
    std::mt19937 rng(5);
    Graph h = testing::random_relabeling(g, rng);
    CHECK(canonicalize(h).key == cf.key);
}

TEST_CASE("graph labels and multiplicities are validated") {
    CHECK_THROWS_AS(Graph{}.with_edge(0, 1), DomainError);
    CHECK_THROWS_AS(Graph{}.with_leg(-3), DomainError);
    CHECK_THROWS_AS(Graph{}.with_leg(1, 0), DomainError);
}
