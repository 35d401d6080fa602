#ifndef OVC_IDENTITIES_HPP
#define OVC_IDENTITIES_HPP

#include <chrono>
#include <set>
#include <string>
#include <vector>

#include "ovc/operators.hpp"

namespace ovc {

struct CatalogBounds {
    int max_edges = 0;
    int max_vertices = 0;
};

/// Every canonical leg-free, loop-free multigraph without isolated vertices,
/// with 1..max_edges edges and at most max_vertices vertices, each class
/// appearing exactly once. Ordered by (edge count, encoding) so reports are
/// stable across runs.
struct Catalog {
    CatalogBounds bounds;
    std::vector<Graph> entries;
};

inline constexpr int kMaxCatalogEdges = 5;

inline Catalog enumerate_monomials(int max_edges, int max_vertices = -1) {
    if (max_vertices < 0)
        max_vertices = std::min(2 * max_edges, kVertexCap);
    if (max_edges < 1 || max_edges > kMaxCatalogEdges)
        throw CapacityError("max_edges must be in [1, " + std::to_string(kMaxCatalogEdges) +
                            "], got " + std::to_string(max_edges));
    if (max_vertices < 2 || max_vertices > kVertexCap)
        throw CapacityError("max_vertices must be in [2, " + std::to_string(kVertexCap) +
                            "], got " + std::to_string(max_vertices));

    int labels = std::min(2 * max_edges, max_vertices);
    std::vector<std::pair<int, int>> pairs; // candidate edges, no self-loops
    for (int u = 1; u <= labels; ++u)
        for (int v = u + 1; v <= labels; ++v)
            pairs.emplace_back(u, v);

    std::set<Encoding> seen;
    std::vector<std::pair<long, Graph>> found; // (edge count, canonical graph)

    // Multisets of candidate edges, built in non-decreasing pair order.
    std::vector<int> stack;
    auto record = [&](const std::vector<int>& picks) {
        Graph g;
        for (int idx : picks)
            g = g.with_edge(pairs[idx].first, pairs[idx].second);
        if (g.vertex_count() > max_vertices)
            return;
        CanonicalForm cf = canonicalize(g);
        if (seen.insert(cf.key).second)
            found.emplace_back(cf.graph.edge_count(), cf.graph);
    };
    std::function<void(int)> grow = [&](int min_idx) {
        if (!stack.empty())
            record(stack);
        if (static_cast<int>(stack.size()) == max_edges)
            return;
        for (int i = min_idx; i < static_cast<int>(pairs.size()); ++i) {
            stack.push_back(i);
            grow(i);
            stack.pop_back();
        }
    };
    grow(0);

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first)
            return a.first < b.first;
        return encode_labeled(a.second) < encode_labeled(b.second);
    });

    Catalog cat;
    cat.bounds = {max_edges, max_vertices};
    for (auto& [edges, g] : found)
        cat.entries.push_back(std::move(g));
    return cat;
}

/// The two identity families attached to a monomial M: Delta M, whose
/// quenched mean vanishes under stochastic stability, and Delta^2 M, the
/// fourth-order family. Both must have coefficient sum exactly zero.
struct IdentityRecord {
    Graph monomial;
    Polynomial delta1;
    Polynomial delta2;
    bool zero_sum_ok = false;
};

inline std::vector<IdentityRecord> generate_identities(const Catalog& catalog) {
    std::vector<IdentityRecord> records;
    records.reserve(catalog.entries.size());
    for (const Graph& m : catalog.entries) {
        IdentityRecord rec;
        rec.monomial = m;
        rec.delta1 = big_delta(m);
        rec.delta2 = big_delta(rec.delta1);
        rec.zero_sum_ok =
            rec.delta1.coefficient_sum() == 0 && rec.delta2.coefficient_sum() == 0;
        records.push_back(std::move(rec));
    }
    return records;
}

inline nlohmann::ordered_json identity_to_json(const IdentityRecord& rec) {
    return nlohmann::ordered_json{{"monomial", render_graph(rec.monomial)},
                                  {"delta", polynomial_to_wire_json(rec.delta1)},
                                  {"delta2", polynomial_to_wire_json(rec.delta2)},
                                  {"zero_sum_ok", rec.zero_sum_ok}};
}

/// Runs the fourth-order check across a catalog. Failures are reported, not
/// raised.
inline Report verify_catalog(const Catalog& catalog) {
    Report rep;
    rep.check = "verify_catalog";
    rep.inputs = {{"max_edges", catalog.bounds.max_edges},
                  {"max_vertices", catalog.bounds.max_vertices},
                  {"entries", catalog.entries.size()}};
    auto t0 = std::chrono::steady_clock::now();
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    std::size_t failures = 0;
    for (const Graph& m : catalog.entries) {
        Report one = fourth_order_check(m);
        bool ok = one.pass.value_or(false);
        if (!ok)
            ++failures;
        table.push_back({{"monomial", render_graph(m)},
                         {"residual_zero", ok},
                         {"lhs_sign_class_bound", one.data["lhs_sign_class_bound"]},
                         {"lhs_pre_merge_addends", one.data["lhs_pre_merge_addends"]},
                         {"lhs_distinct_terms", one.data["lhs_distinct_terms"]},
                         {"delta_distinct_terms", one.data["delta_distinct_terms"]},
                         {"delta2_distinct_terms", one.data["delta2_distinct_terms"]}});
    }
    rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              t0)
                        .count();
    rep.pass = failures == 0;
    rep.data["per_monomial"] = std::move(table);
    rep.data["failures"] = failures;
    if (failures > 0)
        rep.notes.push_back(std::to_string(failures) + " monomial(s) left a nonzero residual");
    return rep;
}

} // namespace ovc

#endif
