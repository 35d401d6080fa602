#ifndef OVC_ADJUDICATION_HPP
#define OVC_ADJUDICATION_HPP

#include <string>
#include <vector>

#include "ovc/operators.hpp"

namespace ovc {

/// Comparison of an engine-derived operator table against the variant
/// printed in the source literature for this calculus. Where they disagree,
/// the engine's table is rederived from the elementary operator rules and
/// cross-checked by the closed form and the numeric oracle; the printed
/// variant is reported, never adopted.
struct AdjudicationEntry {
    std::string label;
    Polynomial printed;
    Polynomial derived;
    // Scale in {1,2,3} minimizing the number of differing terms between
    // printed and scale*derived; catches tables that are off by a global
    // display factor.
    int best_scale = 1;
    bool agrees = false;       // printed == derived, literally
    bool agrees_scaled = false; // printed == best_scale * derived
    std::vector<std::string> deviations; // term-level diffs at best_scale
};

namespace detail {

inline AdjudicationEntry adjudicate(std::string label, const Polynomial& printed,
                                    const Polynomial& derived) {
    AdjudicationEntry e;
    e.label = std::move(label);
    e.printed = printed;
    e.derived = derived;
    e.agrees = printed == derived;

    auto diff_count = [&](int scale) {
        Polynomial d = printed - Rational(scale) * derived;
        return d.term_count();
    };
    std::size_t best = diff_count(1);
    e.best_scale = 1;
    for (int s : {2, 3}) {
        std::size_t c = diff_count(s);
        if (c < best) {
            best = c;
            e.best_scale = s;
        }
    }
    Polynomial residual = printed - Rational(e.best_scale) * derived;
    e.agrees_scaled = residual.is_zero();
    for (const auto& [key, term] : residual.terms()) {
        Polynomial scaled = Rational(e.best_scale) * derived;
        e.deviations.push_back(
            render_graph(term.graph) + ": printed " +
            rational_to_string(printed.coefficient(term.graph)) + ", derived " +
            rational_to_string(scaled.coefficient(term.graph)) +
            (e.best_scale != 1 ? " (at scale " + std::to_string(e.best_scale) + ")" : ""));
    }
    return e;
}

} // namespace detail

/// Rederives every operator table the literature prints for the single-edge
/// chain and adjudicates the printed coefficients against the engine.
inline std::vector<AdjudicationEntry> adjudicate_published_tables() {
    auto P = [](const char* s) { return parse_polynomial(s); };
    std::vector<AdjudicationEntry> out;

    Polynomial half_delta_12 = closed_form_half_delta(parse_graph("(1,2)"));
    out.push_back(detail::adjudicate("half-delta[(1,2)]",
                                     P("(1,2)^2 - 4(1,2)(2,3) + 3(1,2)(3,4)"), half_delta_12));

    out.push_back(detail::adjudicate("half-delta[(1,2)^2]",
                                     P("(1,2)^3 - 4(1,2)^2(1,3) + 6(1,2)(3,4)"),
                                     closed_form_half_delta(parse_graph("(1,2)^2"))));

    out.push_back(detail::adjudicate(
        "half-delta[(1,2)(2,3)]",
        P("2(1,2)^2(2,3) - 9(1,2)(2,3)(3,4) + (1,2)(2,3)(3,1) - 3(1,2)(1,3)(1,4) "
          "+ 6(1,2)(1,3)(4,5)"),
        closed_form_half_delta(parse_graph("(1,2)(2,3)"))));

    out.push_back(detail::adjudicate(
        "half-delta[(1,2)(3,4)]",
        P("2(1,2)^2(3,4) + 4(1,2)(2,3)(3,4) - 16(1,2)(1,3)(4,5) + 10(1,2)(3,4)(5,6)"),
        closed_form_half_delta(parse_graph("(1,2)(3,4)"))));

    // Quarter Delta^2 (1,2); the printed table carries an extra global
    // factor of 2 on top of one wrong coefficient.
    Polynomial quarter_d2 = big_delta(big_delta(parse_graph("(1,2)")));
    quarter_d2 *= Rational(1, 4);
    out.push_back(detail::adjudicate(
        "quarter-delta-squared[(1,2)]",
        P("2(1,2)^3 - 24(1,2)^2(1,3) - 8(1,2)(2,3)(3,1) + 18(1,2)^2(3,4) "
          "- 144(1,2)(1,3)(4,5) + 96(1,2)(2,3)(3,4) + 60(1,2)(3,4)(5,6) "
          "+ 24(1,2)(1,3)(1,4)"),
        quarter_d2));

    // Half delta^2 (1,2) before contraction (the five-term leg table).
    Polynomial half_d2_legs = delta(delta(Polynomial::monomial(parse_graph("(1,2)"))));
    half_d2_legs *= Rational(1, 2);
    out.push_back(detail::adjudicate(
        "half-delta-squared-legs[(1,2)]",
        P("(1,2)(1)(2) - 4(1,2)(1)(3) + (1,2)(3)(4) + (1,2)(1)^2 - (1,2)(3)^2"),
        half_d2_legs));

    // Collapsed fourth-order table: printed as 3 * the quarter table above,
    // inheriting its scale and coefficient deviations.
    Polynomial quarter_lhs = wick_delta_power(parse_graph("(1,2)"), 4);
    quarter_lhs *= Rational(1, 4);
    out.push_back(detail::adjudicate(
        "quarter-wick-delta4[(1,2)]",
        P("6(1,2)^3 - 72(1,2)^2(1,3) - 24(1,2)(2,3)(3,1) + 54(1,2)^2(3,4) "
          "- 432(1,2)(1,3)(4,5) + 288(1,2)(2,3)(3,4) + 180(1,2)(3,4)(5,6) "
          "+ 72(1,2)(1,3)(1,4)"),
        quarter_lhs));

    // Four-leg contraction tables; these four agree as printed.
    out.push_back(detail::adjudicate("wick[(1)(2)(3)(4)]", P("3(1,2)(3,4)"),
                                     wick(P("(1)(2)(3)(4)"))));
    out.push_back(
        detail::adjudicate("wick[(1)^2(2)(3)]", P("2(1,2)(2,3) + (1,2)"), wick(P("(1)^2(2)(3)"))));
    out.push_back(
        detail::adjudicate("wick[(1)^2(2)^2]", P("2(1,2)^2 + 1"), wick(P("(1)^2(2)^2"))));
    out.push_back(detail::adjudicate("wick[(1)^3(2)]", P("3(1,2)"), wick(P("(1)^3(2)"))));

    // The inline two-edge contraction example printed as 3(1,2); the
    // four-distinct-leg table above is the consistent variant.
    out.push_back(
        detail::adjudicate("wick-inline[(1)(2)(3)(4)]", P("3(1,2)"), wick(P("(1)(2)(3)(4)"))));

    return out;
}

inline nlohmann::ordered_json adjudication_to_json(const std::vector<AdjudicationEntry>& entries) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        arr.push_back({{"label", e.label},
                       {"printed", polynomial_to_wire_json(e.printed)},
                       {"derived", polynomial_to_wire_json(e.derived)},
                       {"agrees", e.agrees},
                       {"best_scale", e.best_scale},
                       {"agrees_at_scale", e.agrees_scaled},
                       {"deviations", e.deviations}});
    }
    return arr;
}

} // namespace ovc

#endif
