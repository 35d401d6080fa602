#ifndef OVC_WIRE_HPP
#define OVC_WIRE_HPP

#include <string>

#include <json.hpp>

#include "ovc/polynomial.hpp"

namespace ovc {

using Json = nlohmann::ordered_json;

// Wire format: {"terms":[{"graph":"<graph notation>","coeff":"<decimal or a/b>"}]},
// terms sorted by graph encoding. Coefficients travel as strings so nothing
// is ever rounded.
inline Json polynomial_to_wire_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [key, term] : p.terms()) {
        terms.push_back(Json{{"graph", render_graph(term.graph)},
                             {"coeff", rational_to_string(term.coeff)}});
    }
    return Json{{"terms", std::move(terms)}};
}

inline std::string to_wire(const Polynomial& p) { return polynomial_to_wire_json(p).dump(); }

inline Polynomial polynomial_from_wire_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("wire document must be an object with a 'terms' array");
    Polynomial p;
    for (const auto& t : doc["terms"]) {
        if (!t.is_object() || !t.contains("graph") || !t.contains("coeff") ||
            !t["graph"].is_string() || !t["coeff"].is_string())
            throw ParseError("wire term must carry string 'graph' and 'coeff' fields");
        p.add(parse_graph(t["graph"].get<std::string>()),
              rational_from_string(t["coeff"].get<std::string>()));
    }
    return p;
}

inline Polynomial from_wire(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid wire document: ") + e.what());
    }
    return polynomial_from_wire_json(doc);
}

} // namespace ovc

#endif
