#ifndef OVC_OPERATORS_HPP
#define OVC_OPERATORS_HPP

#include <functional>
#include <string>
#include <vector>

#include "ovc/polynomial.hpp"
#include "ovc/report.hpp"
#include "ovc/wire.hpp"

namespace ovc {

// How Wick pairs landing on a single vertex (diagonal overlap factors) are
// treated. Unit is the convention for all symbolic theorem checks; Kernel
// keeps the self-loop in the graph so the numeric oracle can value it;
// Symbol detaches it onto a fresh isolated looped vertex, which acts as a
// formal diagonal constant `d` per term.
enum class DiagonalMode { Unit, Symbol, Kernel };

inline std::string to_string(DiagonalMode m) {
    switch (m) {
    case DiagonalMode::Unit: return "unit";
    case DiagonalMode::Symbol: return "symbol";
    case DiagonalMode::Kernel: return "kernel";
    }
    return "?";
}

/// delta_v^(+): attach a leg at an existing vertex.
inline Polynomial delta_plus(const Graph& g, int v) {
    if (!g.has_vertex(v))
        throw DomainError("delta_plus: vertex " + std::to_string(v) + " is not in " +
                          render_graph(g));
    return Polynomial::monomial(g.with_leg(v), 1);
}

/// delta_v^(-): attach a leg at a fresh vertex, with sign -1. The fixed
/// fresh-index rule is observationally irrelevant after canonicalization.
inline Polynomial delta_minus(const Graph& g, int v) {
    if (!g.has_vertex(v))
        throw DomainError("delta_minus: vertex " + std::to_string(v) + " is not in " +
                          render_graph(g));
    return Polynomial::monomial(g.with_leg(g.fresh_vertex()), -1);
}

namespace detail {

// Pre-merge addend bookkeeping for the cancellation diagnostics: each
// canonical term carries the number of raw addends merged into it.
struct CountedPolynomial {
    Polynomial poly;
    std::map<Encoding, long long> addends;

    void add(const Graph& g, const Rational& c, long long raw_count) {
        CanonicalForm cf = canonicalize(g);
        addends[cf.key] += raw_count;
        poly.add_canonical(std::move(cf), c);
    }

    long long total_addends() const {
        long long t = 0;
        for (const auto& [k, v] : addends)
            t += v;
        return t;
    }
};

inline CountedPolynomial delta_counted(const CountedPolynomial& in) {
    CountedPolynomial out;
    for (const auto& [key, term] : in.poly.terms()) {
        long long parent = 1;
        if (auto it = in.addends.find(key); it != in.addends.end())
            parent = it->second;
        auto vs = term.graph.vertex_set();
        if (vs.empty())
            continue; // delta of the empty product vanishes
        for (int v : vs)
            out.add(term.graph.with_leg(v), term.coeff, parent);
        out.add(term.graph.with_leg(term.graph.fresh_vertex()),
                -term.coeff * static_cast<int>(vs.size()),
                parent * static_cast<long long>(vs.size()));
    }
    return out;
}

template <typename Emit>
void for_each_matching(std::vector<int>& slots, std::vector<std::pair<int, int>>& pairs,
                       const Emit& emit) {
    if (slots.empty()) {
        emit(pairs);
        return;
    }
    int a = slots[0];
    for (std::size_t j = 1; j < slots.size(); ++j) {
        int b = slots[j];
        std::vector<int> rest;
        rest.reserve(slots.size() - 2);
        for (std::size_t t = 1; t < slots.size(); ++t)
            if (t != j)
                rest.push_back(slots[t]);
        pairs.emplace_back(a, b);
        for_each_matching(rest, pairs, emit);
        pairs.pop_back();
    }
}

inline Graph contract_matching(const Graph& base, const std::vector<std::pair<int, int>>& pairs,
                               DiagonalMode mode) {
    Graph out = base;
    for (const auto& [a, b] : pairs) {
        if (a != b) {
            out = out.with_edge(a, b);
        } else {
            switch (mode) {
            case DiagonalMode::Unit:
                break; // diagonal overlap valued 1
            case DiagonalMode::Kernel:
                out = out.with_edge(a, a);
                break;
            case DiagonalMode::Symbol: {
                int w = out.fresh_vertex();
                out = out.with_edge(w, w);
                break;
            }
            }
        }
    }
    return out;
}

inline CountedPolynomial wick_counted(const CountedPolynomial& in, DiagonalMode mode) {
    CountedPolynomial out;
    for (const auto& [key, term] : in.poly.terms()) {
        long long parent = 1;
        if (auto it = in.addends.find(key); it != in.addends.end())
            parent = it->second;
        std::vector<int> slots;
        for (const auto& l : term.graph.legs())
            for (int k = 0; k < l.mult; ++k)
                slots.push_back(l.vertex);
        if (slots.size() % 2 != 0)
            throw ParityError("odd leg count in term " + render_graph(term.graph));
        Graph base = term.graph.without_legs();
        std::vector<std::pair<int, int>> pairs;
        for_each_matching(slots, pairs, [&](const std::vector<std::pair<int, int>>& m) {
            out.add(contract_matching(base, m, mode), term.coeff, parent);
        });
    }
    return out;
}

} // namespace detail

/// Linear extension of the leg-attaching derivation: for each term,
/// delta(G) = sum over v in V(G) of (v)G - (v')G with v' fresh. V(G)
/// includes leg-only vertices; every output term gains exactly one leg.
inline Polynomial delta(const Polynomial& p) {
    detail::CountedPolynomial in;
    in.poly = p;
    return detail::delta_counted(in).poly;
}

inline Polynomial delta(const Graph& g) { return delta(Polynomial::monomial(g)); }

/// Wick contraction: per term, sum over perfect matchings of the leg slots;
/// a matched pair becomes an edge, same-vertex pairs follow the diagonal
/// mode. Terms with an odd leg count raise a ParityError.
inline Polynomial wick(const Polynomial& p, DiagonalMode mode = DiagonalMode::Unit) {
    detail::CountedPolynomial in;
    in.poly = p;
    return detail::wick_counted(in, mode).poly;
}

namespace detail {
inline void require_leg_free(const Polynomial& p, const char* op) {
    for (const auto& [key, term] : p.terms())
        if (!term.graph.leg_free())
            throw DomainError(std::string(op) + " is defined on leg-free inputs; got " +
                              render_graph(term.graph));
}
} // namespace detail

/// The stability operator Delta := C delta^2 on leg-free polynomials.
inline Polynomial big_delta(const Polynomial& p, DiagonalMode mode = DiagonalMode::Unit) {
    detail::require_leg_free(p, "big_delta");
    return wick(delta(delta(p)), mode);
}

inline Polynomial big_delta(const Graph& g, DiagonalMode mode = DiagonalMode::Unit) {
    return big_delta(Polynomial::monomial(g), mode);
}

/// Closed form of (1/2) Delta M for a leg-free monomial M on r replicas:
///   sum_{l<m} Q_{l,m} M  -  r sum_l Q_{l,r+1} M  +  r(r+1)/2 Q_{r+1,r+2} M.
/// Must agree with big_delta(M, Unit)/2 identically; the two routes are kept
/// independent on purpose.
inline Polynomial closed_form_half_delta(const Graph& m) {
    if (!m.leg_free())
        throw DomainError("closed_form_half_delta is defined on leg-free monomials; got " +
                          render_graph(m));
    auto vs = m.vertex_set();
    int r = static_cast<int>(vs.size());
    Polynomial out;
    if (r == 0)
        return out;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            out.add(m.with_edge(vs[i], vs[j]), 1);
    int f1 = m.fresh_vertex();
    for (int v : vs)
        out.add(m.with_edge(v, f1), -r);
    int f2 = m.with_leg(f1).fresh_vertex();
    out.add(m.with_edge(f1, f2), Rational(r) * (r + 1) / 2);
    return out;
}

struct PowerDiagnostics {
    int order = 0;
    // A-priori count of sign-bearing contraction classes: 2^k sign patterns
    // of (delta+ + delta-)^k times (k-1)!! Wick pairings.
    long long sign_class_bound = 0;
    long long pre_merge_addends = 0; // raw addends actually generated
    std::size_t result_terms = 0;
};

inline long long double_factorial(int k) {
    long long v = 1;
    for (int i = k; i > 1; i -= 2)
        v *= i;
    return v;
}

/// C delta^k on a leg-free polynomial, k even.
inline Polynomial wick_delta_power(const Polynomial& p, int k,
                                   DiagonalMode mode = DiagonalMode::Unit,
                                   PowerDiagnostics* diag = nullptr) {
    if (k < 2 || k % 2 != 0)
        throw DomainError("wick_delta_power requires an even order k >= 2, got " +
                          std::to_string(k));
    detail::require_leg_free(p, "wick_delta_power");
    detail::CountedPolynomial cur;
    cur.poly = p;
    for (const auto& [key, term] : p.terms())
        cur.addends[key] = 1;
    for (int i = 0; i < k; ++i)
        cur = detail::delta_counted(cur);
    cur = detail::wick_counted(cur, mode);
    if (diag) {
        diag->order = k;
        diag->sign_class_bound = double_factorial(k - 1) * (1LL << k);
        diag->pre_merge_addends = cur.total_addends();
        diag->result_terms = cur.poly.term_count();
    }
    return cur.poly;
}

inline Polynomial wick_delta_power(const Graph& g, int k, DiagonalMode mode = DiagonalMode::Unit,
                                   PowerDiagnostics* diag = nullptr) {
    return wick_delta_power(Polynomial::monomial(g), k, mode, diag);
}

namespace detail {
inline nlohmann::ordered_json term_table(const Polynomial& p) {
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& [key, term] : p.terms())
        t.push_back({{"graph", render_graph(term.graph)},
                     {"coeff", rational_to_string(term.coeff)}});
    return t;
}
} // namespace detail

/// Fourth-order identity check: residual = C delta^4 M - 3 Delta^2 M.
inline Report fourth_order_check(const Graph& m, DiagonalMode mode = DiagonalMode::Unit) {
    if (!m.leg_free())
        throw DomainError("fourth_order_check expects a leg-free monomial");
    Report rep;
    rep.check = "fourth_order";
    rep.inputs = {{"monomial", render_graph(m)}, {"diagonal", to_string(mode)}};
    PowerDiagnostics diag;
    Polynomial lhs = wick_delta_power(m, 4, mode, &diag);
    Polynomial d1 = big_delta(m, mode);
    Polynomial d2 = big_delta(d1, mode);
    Polynomial residual = lhs - Rational(3) * d2;
    rep.pass = residual.is_zero();
    rep.data["lhs_terms"] = detail::term_table(lhs);
    rep.data["delta_terms"] = detail::term_table(d1);
    rep.data["delta2_terms"] = detail::term_table(d2);
    rep.data["residual"] = polynomial_to_wire_json(residual);
    rep.data["lhs_sign_class_bound"] = diag.sign_class_bound;
    rep.data["lhs_pre_merge_addends"] = diag.pre_merge_addends;
    rep.data["lhs_distinct_terms"] = lhs.term_count();
    rep.data["delta_distinct_terms"] = d1.term_count();
    rep.data["delta2_distinct_terms"] = d2.term_count();
    if (!residual.is_zero())
        rep.notes.push_back("nonzero residual: " + residual.str());
    return rep;
}

/// Probe of the order-2k generalization: residual =
/// C delta^(2k) M - (2k-1)!! Delta^k M. For k >= 3 the outcome is reported
/// without asserting pass/fail; the even-order statement beyond 4 is a
/// conjecture probe here.
inline Report higher_order_explore(const Graph& m, int k,
                                   DiagonalMode mode = DiagonalMode::Unit) {
    if (k < 1)
        throw DomainError("higher_order_explore requires k >= 1");
    if (!m.leg_free())
        throw DomainError("higher_order_explore expects a leg-free monomial");
    if (2 * k > 8 || m.vertex_count() + 2 * k > kVertexCap)
        throw CapacityError("order " + std::to_string(2 * k) + " on " + render_graph(m) +
                            " exceeds the combinatorial budget");
    Report rep;
    rep.check = "higher_order_explore";
    rep.inputs = {{"monomial", render_graph(m)},
                  {"order", 2 * k},
                  {"diagonal", to_string(mode)}};
    PowerDiagnostics diag;
    Polynomial lhs = k == 1 ? wick(delta(delta(Polynomial::monomial(m))), mode)
                            : wick_delta_power(m, 2 * k, mode, &diag);
    Polynomial rhs = Polynomial::monomial(m);
    for (int i = 0; i < k; ++i)
        rhs = big_delta(rhs, mode);
    long long multiplier = double_factorial(2 * k - 1);
    Polynomial residual = lhs - Rational(multiplier) * rhs;
    rep.data["multiplier"] = multiplier;
    rep.data["residual"] = polynomial_to_wire_json(residual);
    rep.data["residual_terms"] = residual.term_count();
    if (k <= 2)
        rep.pass = residual.is_zero();
    else
        rep.notes.push_back(residual.is_zero() ? "residual vanished (conjecture holds here)"
                                               : "nonzero residual: " + residual.str());
    return rep;
}

} // namespace ovc

#endif
