#ifndef OVC_POLYNOMIAL_HPP
#define OVC_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ovc/canonical.hpp"
#include "ovc/graph.hpp"
#include "ovc/rational.hpp"

namespace ovc {

/// Finite linear combination of canonical graphs with exact rational
/// coefficients. Keys are canonical encodings, so terms that differ only by
/// a relabeling merge; zero coefficients are dropped on the spot.
class Polynomial {
public:
    struct Term {
        Graph graph; // canonically relabeled
        Rational coeff;
    };
    using TermMap = std::map<Encoding, Term>;

    Polynomial() = default;

    static Polynomial monomial(const Graph& g, const Rational& c = 1) {
        Polynomial p;
        p.add(g, c);
        return p;
    }

    static Polynomial constant(const Rational& c) { return monomial(Graph{}, c); }

    void add(const Graph& g, const Rational& c) {
        if (c == 0)
            return;
        add_canonical(canonicalize(g), c);
    }

    void add_canonical(CanonicalForm cf, const Rational& c) {
        if (c == 0)
            return;
        auto it = terms_.find(cf.key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(cf.key), Term{std::move(cf.graph), c});
            return;
        }
        it->second.coeff += c;
        if (it->second.coeff == 0)
            terms_.erase(it);
    }

    Polynomial& operator+=(const Polynomial& other) {
        for (const auto& [key, term] : other.terms_)
            add_canonical(CanonicalForm{term.graph, key}, term.coeff);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& other) {
        for (const auto& [key, term] : other.terms_)
            add_canonical(CanonicalForm{term.graph, key}, -term.coeff);
        return *this;
    }

    Polynomial& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [key, term] : terms_)
            term.coeff *= c;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rational coefficient(const Graph& g) const {
        auto it = terms_.find(canonicalize(g).key);
        return it == terms_.end() ? Rational(0) : it->second.coeff;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size())
            return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            if (ia->first != ib->first || ia->second.coeff != ib->second.coeff)
                return false;
        }
        return true;
    }

    /// Sum of coefficients, i.e. the evaluation at the degenerate point where
    /// every overlap (self-loops included) equals 1. Defined for leg-free
    /// polynomials only.
    Rational coefficient_sum() const {
        Rational s = 0;
        for (const auto& [key, term] : terms_) {
            if (!term.graph.leg_free())
                throw DomainError("coefficient sum is undefined for terms with legs: " +
                                  render_graph(term.graph));
            s += term.coeff;
        }
        return s;
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [key, term] : terms_) {
            Rational c = term.coeff;
            bool negative = c < 0;
            if (negative)
                c = -c;
            if (first) {
                if (negative)
                    out += "-";
                first = false;
            } else {
                out += negative ? " - " : " + ";
            }
            bool unit_graph = term.graph.empty();
            if (c != 1 || unit_graph) {
                out += rational_to_string(c);
                if (!unit_graph)
                    out += " ";
            }
            if (!unit_graph)
                out += render_graph(term.graph);
        }
        return out;
    }

private:
    TermMap terms_;
};

inline Polynomial combine(const std::vector<std::pair<Rational, Polynomial>>& parts) {
    Polynomial out;
    for (const auto& [c, p] : parts) {
        if (c == 0)
            continue;
        for (const auto& [key, term] : p.terms())
            out.add_canonical(CanonicalForm{term.graph, key}, c * term.coeff);
    }
    return out;
}

// Parses the str() format: terms joined by +/-, each an optional rational
// coefficient followed by graph notation ("2(1,2)^2 - 4(1,2)(2,3) + 1").
inline Polynomial parse_polynomial(const std::string& text) {
    Polynomial out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip_ws();
    if (i == text.size())
        throw ParseError("empty polynomial", 0);
    if (text.compare(i, 1, "0") == 0 && i + 1 == text.size())
        return out;
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size())
            break;
        Rational sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", i);
        }
        std::size_t num_start = i;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) ||
                                   text[i] == '/'))
            ++i;
        Rational coeff = 1;
        if (i > num_start)
            coeff = rational_from_string(text.substr(num_start, i - num_start));
        skip_ws();
        std::size_t graph_start = i;
        while (i < text.size() && text[i] != '+' && text[i] != '-')
            ++i;
        std::string graph_text = text.substr(graph_start, i - graph_start);
        while (!graph_text.empty() && std::isspace(static_cast<unsigned char>(graph_text.back())))
            graph_text.pop_back();
        Graph g;
        if (!graph_text.empty())
            g = parse_graph(graph_text);
        else if (i == num_start)
            throw ParseError("expected coefficient or graph", i);
        out.add(g, sign * coeff);
        first = false;
    }
    return out;
}

} // namespace ovc

#endif
