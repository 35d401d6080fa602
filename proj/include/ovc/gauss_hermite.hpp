#ifndef OVC_GAUSS_HERMITE_HPP
#define OVC_GAUSS_HERMITE_HPP

#include <cmath>
#include <map>
#include <vector>

#include "ovc/errors.hpp"

namespace ovc {

/// Nodes and weights for the standard normal weight e^{-x^2/2}/sqrt(2 pi).
/// An n-point rule integrates polynomials up to degree 2n-1 exactly.
struct GaussHermiteRule {
    int npoints = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Probabilists' Hermite polynomial He_n via the three-term recurrence.
inline long double hermite_he(int n, long double x) {
    long double hm = 1.0L, h = x;
    if (n == 0)
        return hm;
    for (int k = 1; k < n; ++k) {
        long double next = x * h - static_cast<long double>(k) * hm;
        hm = h;
        h = next;
    }
    return h;
}

inline GaussHermiteRule build_gauss_hermite(int n) {
    // Roots of He_{k+1} interlace those of He_k; bisection on each bracket,
    // then Newton polish (He_n' = n He_{n-1}).
    std::vector<long double> roots{0.0L}; // He_1
    for (int k = 1; k < n; ++k) {
        int next = k + 1;
        long double bound = std::sqrt(4.0L * next + 6.0L);
        std::vector<long double> brackets;
        brackets.push_back(-bound);
        for (long double r : roots)
            brackets.push_back(r);
        brackets.push_back(bound);
        std::vector<long double> out(next);
        for (int i = 0; i < next; ++i) {
            long double a = brackets[i], b = brackets[i + 1];
            long double fa = hermite_he(next, a);
            for (int it = 0; it < 200; ++it) {
                long double mid = 0.5L * (a + b);
                long double fm = hermite_he(next, mid);
                if (fm == 0) {
                    a = b = mid;
                    break;
                }
                if ((fa > 0) == (fm > 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
                if (b - a < 1e-30L)
                    break;
            }
            long double x = 0.5L * (a + b);
            for (int it = 0; it < 4; ++it) {
                long double f = hermite_he(next, x);
                long double fp = next * hermite_he(next - 1, x);
                if (fp != 0)
                    x -= f / fp;
            }
            out[i] = x;
        }
        roots = std::move(out);
    }

    long double fact = 1.0L; // (n-1)!
    for (int k = 2; k < n; ++k)
        fact *= k;

    GaussHermiteRule rule;
    rule.npoints = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        long double hnm1 = hermite_he(n - 1, roots[i]);
        rule.nodes[i] = static_cast<double>(roots[i]);
        rule.weights[i] = static_cast<double>(fact / (n * hnm1 * hnm1));
    }
    return rule;
}

} // namespace detail

inline const GaussHermiteRule& gauss_hermite(int npoints) {
    if (npoints < 2 || npoints > 64)
        throw CapacityError("gauss_hermite supports 2..64 points, got " +
                            std::to_string(npoints));
    static std::map<int, GaussHermiteRule> cache;
    auto it = cache.find(npoints);
    if (it == cache.end())
        it = cache.emplace(npoints, detail::build_gauss_hermite(npoints)).first;
    return it->second;
}

} // namespace ovc

#endif
