#ifndef OVC_GRAPH_HPP
#define OVC_GRAPH_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "ovc/errors.hpp"

namespace ovc {

/// A generalized overlap graph: a multiset of unordered edges (overlap
/// factors, self-loops allowed) plus a multiset of legs (unpaired Gaussian
/// insertions) over positive replica indices. Values are immutable; the
/// with_* builders return modified copies.
class Graph {
public:
    struct Edge {
        int lo = 0;   // lo <= hi; lo == hi is a self-loop
        int hi = 0;
        int mult = 0; // >= 1

        friend bool operator==(const Edge&, const Edge&) = default;
    };
    struct Leg {
        int vertex = 0;
        int mult = 0; // >= 1

        friend bool operator==(const Leg&, const Leg&) = default;
    };

    Graph() = default;

    static Graph from_parts(std::vector<Edge> edges, std::vector<Leg> legs) {
        Graph g;
        for (const auto& e : edges)
            g.bump_edge(e.lo, e.hi, e.mult);
        for (const auto& l : legs)
            g.bump_leg(l.vertex, l.mult);
        return g;
    }

    // Edges sorted ascending by (hi, lo); this matches the canonical key
    // layout so iteration order doubles as encoding order.
    const std::vector<Edge>& edges() const { return edges_; }
    // Legs sorted ascending by vertex.
    const std::vector<Leg>& legs() const { return legs_; }

    bool empty() const { return edges_.empty() && legs_.empty(); }
    bool leg_free() const { return legs_.empty(); }

    bool has_self_loop() const {
        for (const auto& e : edges_)
            if (e.lo == e.hi)
                return true;
        return false;
    }

    // Endpoints of edges plus leg vertices, sorted; no isolated vertices are
    // ever stored.
    std::vector<int> vertex_set() const {
        std::vector<int> vs;
        for (const auto& e : edges_) {
            vs.push_back(e.lo);
            vs.push_back(e.hi);
        }
        for (const auto& l : legs_)
            vs.push_back(l.vertex);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    int vertex_count() const { return static_cast<int>(vertex_set().size()); }

    bool has_vertex(int v) const {
        for (const auto& e : edges_)
            if (e.lo == v || e.hi == v)
                return true;
        for (const auto& l : legs_)
            if (l.vertex == v)
                return true;
        return false;
    }

    long edge_count() const {
        long n = 0;
        for (const auto& e : edges_)
            n += e.mult;
        return n;
    }

    long leg_count() const {
        long n = 0;
        for (const auto& l : legs_)
            n += l.mult;
        return n;
    }

    // Smallest positive integer not in the vertex set. A fixed rule keeps
    // runs reproducible; canonicalization makes the choice observationally
    // irrelevant.
    int fresh_vertex() const {
        auto vs = vertex_set();
        int candidate = 1;
        for (int v : vs) {
            if (v == candidate)
                ++candidate;
            else if (v > candidate)
                break;
        }
        return candidate;
    }

    Graph with_leg(int v, int mult = 1) const {
        check_label(v);
        check_mult(mult);
        Graph g = *this;
        g.bump_leg(v, mult);
        return g;
    }

    Graph with_edge(int u, int v, int mult = 1) const {
        check_label(u);
        check_label(v);
        check_mult(mult);
        Graph g = *this;
        g.bump_edge(std::min(u, v), std::max(u, v), mult);
        return g;
    }

    Graph without_legs() const {
        Graph g;
        g.edges_ = edges_;
        return g;
    }

    // Applies an injective relabeling; vertices absent from the map keep
    // their label.
    Graph relabeled(const std::map<int, int>& pi) const {
        auto image = [&pi](int v) {
            auto it = pi.find(v);
            return it == pi.end() ? v : it->second;
        };
        Graph g;
        for (const auto& e : edges_)
            g.bump_edge_unordered(image(e.lo), image(e.hi), e.mult);
        for (const auto& l : legs_)
            g.bump_leg(image(l.vertex), l.mult);
        return g;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    static void check_label(int v) {
        if (v < 1)
            throw DomainError("vertex label must be >= 1, got " + std::to_string(v));
    }
    static void check_mult(int m) {
        if (m < 1)
            throw DomainError("multiplicity must be >= 1, got " + std::to_string(m));
    }

    void bump_edge_unordered(int u, int v, int mult) {
        bump_edge(std::min(u, v), std::max(u, v), mult);
    }

    void bump_edge(int lo, int hi, int mult) {
        check_label(lo);
        check_mult(mult);
        Edge e{lo, hi, mult};
        auto cmp = [](const Edge& a, const Edge& b) {
            return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
        };
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e, cmp);
        if (it != edges_.end() && it->lo == lo && it->hi == hi)
            it->mult += mult;
        else
            edges_.insert(it, e);
    }

    void bump_leg(int v, int mult) {
        check_label(v);
        check_mult(mult);
        Leg l{v, mult};
        auto cmp = [](const Leg& a, const Leg& b) { return a.vertex < b.vertex; };
        auto it = std::lower_bound(legs_.begin(), legs_.end(), l, cmp);
        if (it != legs_.end() && it->vertex == v)
            it->mult += mult;
        else
            legs_.insert(it, l);
    }

    std::vector<Edge> edges_;
    std::vector<Leg> legs_;
};

struct Inspection {
    std::vector<int> vertices;
    long edge_count = 0;
    long leg_count = 0;
};

inline Inspection inspect(const Graph& g) {
    return Inspection{g.vertex_set(), g.edge_count(), g.leg_count()};
}

// Grammar (whitespace ignored, ints are base-10 >= 1):
//   factor := "(" int "," int ")" ["^" int] | "(" int ")" ["^" int]
//   graph  := factor+ | "1"
inline Graph parse_graph(const std::string& text) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto parse_int = [&](const char* what) {
        skip_ws();
        std::size_t start = i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError(std::string("expected ") + what, i);
        long value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            value = value * 10 + (text[i] - '0');
            if (value > 1'000'000)
                throw ParseError("integer too large", start);
            ++i;
        }
        if (value < 1)
            throw ParseError(std::string(what) + " must be >= 1", start);
        return static_cast<int>(value);
    };

    skip_ws();
    if (i < text.size() && text[i] == '1') {
        std::size_t j = i + 1;
        while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        if (j == text.size())
            return Graph{}; // the empty product
    }

    Graph g;
    bool any = false;
    while (true) {
        skip_ws();
        if (i >= text.size())
            break;
        if (text[i] != '(')
            throw ParseError("expected '('", i);
        ++i;
        int a = parse_int("vertex label");
        skip_ws();
        bool is_edge = false;
        int b = 0;
        if (i < text.size() && text[i] == ',') {
            ++i;
            b = parse_int("vertex label");
            is_edge = true;
            skip_ws();
        }
        if (i >= text.size() || text[i] != ')')
            throw ParseError("expected ')'", i);
        ++i;
        int mult = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
            ++i;
            mult = parse_int("exponent");
        }
        if (is_edge)
            g = g.with_edge(a, b, mult);
        else
            g = g.with_leg(a, mult);
        any = true;
    }
    if (!any)
        throw ParseError("expected a factor or '1'", i);
    return g;
}

// Round trip: parse(render(g)) has the same canonical form as g. Edges are
// displayed before legs, each group sorted, with exponents for
// multiplicity > 1.
inline std::string render_graph(const Graph& g) {
    if (g.empty())
        return "1";
    std::vector<Graph::Edge> display = g.edges();
    std::sort(display.begin(), display.end(), [](const Graph::Edge& a, const Graph::Edge& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });
    std::string out;
    for (const auto& e : display) {
        out += "(" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ")";
        if (e.mult > 1)
            out += "^" + std::to_string(e.mult);
    }
    for (const auto& l : g.legs()) {
        out += "(" + std::to_string(l.vertex) + ")";
        if (l.mult > 1)
            out += "^" + std::to_string(l.mult);
    }
    return out;
}

} // namespace ovc

#endif
