#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "ovc/adjudication.hpp"
#include "ovc/identities.hpp"

using namespace ovc;

static Graph G(const std::string& text) { return parse_graph(text); }

TEST_CASE("catalog enumerates multigraph classes by edge count") {
    Catalog one = enumerate_monomials(1);
    REQUIRE(one.entries.size() == 1);
    CHECK(one.entries[0] == canonicalize(G("(1,2)")).graph);

    Catalog two = enumerate_monomials(2);
    CHECK(two.entries.size() == 4); // cumulative: 1 + 3
    std::set<Encoding> keys;
    for (const auto& m : two.entries)
        keys.insert(encode_labeled(m));
    for (const char* want : {"(1,2)", "(1,2)^2", "(1,2)(1,3)", "(1,2)(3,4)"})
        CHECK(keys.count(canonicalize(G(want)).key) == 1);

    Catalog three = enumerate_monomials(3);
    CHECK(three.entries.size() == 12); // cumulative: 1 + 3 + 8
    const char* classes[] = {"(1,2)^3",           "(1,2)^2(1,3)",      "(1,2)^2(3,4)",
                             "(1,2)(1,3)(1,4)",   "(1,2)(2,3)(3,1)",   "(1,2)(2,3)(3,4)",
                             "(1,2)(1,3)(4,5)",   "(1,2)(3,4)(5,6)"};
    std::set<Encoding> three_keys;
    for (const auto& m : three.entries)
        three_keys.insert(encode_labeled(m));
    for (const char* want : classes)
        CHECK(three_keys.count(canonicalize(G(want)).key) == 1);
}

TEST_CASE("catalog counts match a brute-force classification") {
    // Independent oracle: classify all 3-edge multisets over 6 labels with
    // the exhaustive-permutation canonical key.
    std::vector<std::pair<int, int>> pairs;
    for (int u = 1; u <= 6; ++u)
        for (int v = u + 1; v <= 6; ++v)
            pairs.emplace_back(u, v);
    std::set<Encoding> classes;
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a; b < pairs.size(); ++b)
            for (std::size_t c = b; c < pairs.size(); ++c) {
                Graph g;
                g = g.with_edge(pairs[a].first, pairs[a].second);
                g = g.with_edge(pairs[b].first, pairs[b].second);
                g = g.with_edge(pairs[c].first, pairs[c].second);
                classes.insert(testing::reference_canonical_key(g));
            }
    CHECK(classes.size() == 8);
}

TEST_CASE("catalog respects the vertex bound") {
    Catalog bounded = enumerate_monomials(3, 4);
    for (const auto& m : bounded.entries)
        CHECK(m.vertex_count() <= 4);
    // (1,2)(3,4)(5,6) and (1,2)(1,3)(4,5) are excluded at 4 vertices
    CHECK(bounded.entries.size() == 10);
}

TEST_CASE("catalog entries are canonical, loop-free and closed under relabeling") {
    Catalog cat = enumerate_monomials(3);
    std::set<Encoding> keys;
    std::mt19937 rng(8);
    for (const auto& m : cat.entries) {
        CHECK(m.leg_free());
        CHECK_FALSE(m.has_self_loop());
        CHECK(canonicalize(m).graph == m);
        keys.insert(encode_labeled(m));
    }
    CHECK(keys.size() == cat.entries.size());
    for (const auto& m : cat.entries) {
        Graph relabeled = testing::random_relabeling(m, rng);
        CHECK(keys.count(canonicalize(relabeled).key) == 1);
    }
}

TEST_CASE("catalog rejects out-of-cap bounds") {
    CHECK_THROWS_AS(enumerate_monomials(0), CapacityError);
    CHECK_THROWS_AS(enumerate_monomials(6), CapacityError);
    CHECK_THROWS_AS(enumerate_monomials(2, 1), CapacityError);
    CHECK_THROWS_AS(enumerate_monomials(2, 13), CapacityError);
}

TEST_CASE("identity records carry zero-sum families") {
    Catalog cat = enumerate_monomials(2);
    auto records = generate_identities(cat);
    REQUIRE(records.size() == cat.entries.size());
    for (const auto& rec : records) {
        CHECK(rec.zero_sum_ok);
        CHECK(rec.delta1.coefficient_sum() == 0);
        CHECK(rec.delta2.coefficient_sum() == 0);
    }
    // Delta (1,2) with the full normalization
    Polynomial expected = parse_polynomial("2(1,2)^2 - 8(1,2)(2,3) + 6(1,2)(3,4)");
    CHECK(records[0].monomial == canonicalize(G("(1,2)")).graph);
    CHECK(records[0].delta1 == expected);

    nlohmann::ordered_json doc = identity_to_json(records[0]);
    CHECK(doc["monomial"] == "(1,2)");
    CHECK(doc["zero_sum_ok"] == true);
    CHECK(doc["delta"]["terms"].size() == 3);
    CHECK(doc["delta2"]["terms"].size() == 8);
}

TEST_CASE("verify_catalog aggregates the fourth-order checks") {
    Catalog single;
    single.bounds = {1, 2};
    single.entries.push_back(canonicalize(G("(1,2)")).graph);
    Report rep = verify_catalog(single);
    CHECK(rep.pass == true);
    CHECK(rep.data["failures"] == 0);
    CHECK(rep.data["per_monomial"].size() == 1);
    CHECK(rep.data["per_monomial"][0]["lhs_sign_class_bound"] == 48);

    Report empty = verify_catalog(Catalog{});
    CHECK(empty.pass == true); // vacuous
    CHECK(empty.data["per_monomial"].empty());
}

TEST_CASE("published tables adjudicate against the derived calculus") {
    auto entries = adjudicate_published_tables();
    auto find = [&](const std::string& label) -> const AdjudicationEntry& {
        for (const auto& e : entries)
            if (e.label == label)
                return e;
        throw std::runtime_error("missing entry " + label);
    };

    CHECK(find("half-delta[(1,2)]").agrees);
    CHECK(find("half-delta[(1,2)(3,4)]").agrees);
    CHECK(find("wick[(1)(2)(3)(4)]").agrees);
    CHECK(find("wick[(1)^2(2)(3)]").agrees);
    CHECK(find("wick[(1)^2(2)^2]").agrees);
    CHECK(find("wick[(1)^3(2)]").agrees);

    const auto& sq = find("half-delta[(1,2)^2]");
    CHECK_FALSE(sq.agrees);
    CHECK(sq.best_scale == 1);
    REQUIRE(sq.deviations.size() == 2); // printed 6(1,2)(3,4) vs derived 3(1,2)^2(3,4)

    const auto& path = find("half-delta[(1,2)(2,3)]");
    CHECK_FALSE(path.agrees);
    REQUIRE(path.deviations.size() == 1);
    CHECK(path.deviations[0].find("printed -9") != std::string::npos);
    CHECK(path.deviations[0].find("derived -6") != std::string::npos);

    const auto& legs = find("half-delta-squared-legs[(1,2)]");
    CHECK_FALSE(legs.agrees);
    REQUIRE(legs.deviations.size() == 1);
    CHECK(legs.deviations[0].find("printed 1") != std::string::npos);
    CHECK(legs.deviations[0].find("derived 3") != std::string::npos);

    const auto& d2 = find("quarter-delta-squared[(1,2)]");
    CHECK_FALSE(d2.agrees);
    CHECK(d2.best_scale == 2);
    CHECK_FALSE(d2.agrees_scaled);
    REQUIRE(d2.deviations.size() == 1); // the path coefficient survives the rescale
    CHECK(d2.deviations[0].find("printed 96") != std::string::npos);
    CHECK(d2.deviations[0].find("derived 72") != std::string::npos);

    const auto& lhs4 = find("quarter-wick-delta4[(1,2)]");
    CHECK_FALSE(lhs4.agrees);
    CHECK(lhs4.best_scale == 2);
    REQUIRE(lhs4.deviations.size() == 1);
    CHECK(lhs4.deviations[0].find("printed 288") != std::string::npos);
    CHECK(lhs4.deviations[0].find("derived 216") != std::string::npos);

    const auto& inline_wick = find("wick-inline[(1)(2)(3)(4)]");
    CHECK_FALSE(inline_wick.agrees);
}
