#ifndef OVC_TESTS_HELPERS_HPP
#define OVC_TESTS_HELPERS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "ovc/canonical.hpp"
#include "ovc/graph.hpp"

namespace ovc::testing {

// Independent canonicalization oracle: enumerate every bijection onto
// {1..n} and take the minimal encoding. Factorial, so keep n small.
inline Encoding reference_canonical_key(const Graph& g) {
    auto vs = g.vertex_set();
    int n = static_cast<int>(vs.size());
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    Encoding best;
    bool have = false;
    do {
        std::map<int, int> pi;
        for (int i = 0; i < n; ++i)
            pi[vs[i]] = labels[i];
        Encoding key = encode_labeled(g.relabeled(pi));
        if (!have || key < best) {
            best = key;
            have = true;
        }
    } while (std::next_permutation(labels.begin(), labels.end()));
    if (!have)
        best = encode_labeled(g);
    return best;
}

inline Graph random_graph(std::mt19937& rng, int max_vertices = 8, bool allow_legs = true,
                          bool allow_loops = true) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    int n = nv(rng);
    std::uniform_int_distribution<int> vert(1, n);
    std::uniform_int_distribution<int> count(0, 4);
    std::uniform_int_distribution<int> mult(1, 3);
    Graph g;
    int edges = count(rng);
    for (int i = 0; i < edges; ++i) {
        int u = vert(rng), v = vert(rng);
        if (!allow_loops && u == v)
            continue;
        g = g.with_edge(u, v, mult(rng));
    }
    if (allow_legs) {
        int legs = count(rng) / 2;
        for (int i = 0; i < legs; ++i)
            g = g.with_leg(vert(rng), mult(rng));
    }
    return g;
}

// Random injective relabeling into a larger label range.
inline Graph random_relabeling(const Graph& g, std::mt19937& rng, int label_range = 40) {
    auto vs = g.vertex_set();
    std::vector<int> pool(label_range);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::map<int, int> pi;
    for (std::size_t i = 0; i < vs.size(); ++i)
        pi[vs[i]] = pool[i];
    return g.relabeled(pi);
}

// Jacobi eigenvalue iteration for small symmetric matrices (row-major).
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                off += a[i * n + j] * a[i * n + j];
        if (off < 1e-26)
            break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-18)
                    continue;
                double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i)
        eig[i] = a[i * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace ovc::testing

#endif
