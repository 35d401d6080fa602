#ifndef OVC_RATIONAL_HPP
#define OVC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "ovc/errors.hpp"

namespace ovc {

// Exact rational coefficients. All catalog results are integers, but the
// operator tables carry a 1/2 display convention, so halves must be
// representable without rounding.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts a signed decimal integer or "a/b".
inline Rational rational_from_string(const std::string& text) {
    if (text.empty())
        throw ParseError("empty rational literal");
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' ||
                  ((c == '+' || c == '-') && (i == 0 || text[i - 1] == '/'));
        if (!ok)
            throw ParseError("invalid character in rational literal '" + text + "'", i);
    }
    try {
        Rational r(text);
        return r;
    } catch (const std::exception&) {
        throw ParseError("cannot parse rational literal '" + text + "'");
    }
}

inline double rational_to_double(const Rational& r) {
    return r.convert_to<double>();
}

} // namespace ovc

#endif
