#ifndef OVC_CONTRACTION_HPP
#define OVC_CONTRACTION_HPP

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "ovc/polynomial.hpp"

namespace ovc {

/// Compiled evaluation plan for a leg-free polynomial against a replica
/// state: per unique connected component, a brute-force contraction over all
/// state assignments; per term, a product of component values. Components
/// are deduplicated across terms by canonical form, and the replica-product
/// structure factorizes over components because replicas are independent
/// under one disorder sample.
class EvalPlan {
public:
    struct Component {
        int nv = 0;
        std::vector<std::array<int, 3>> edges; // (u, v, mult) with 0-based u <= v
    };
    struct Term {
        double coeff = 0;
        std::vector<std::pair<int, int>> factors; // (component index, power)
    };

    static EvalPlan compile(const Polynomial& p) {
        EvalPlan plan;
        std::map<Encoding, int> comp_index;
        for (const auto& [key, term] : p.terms()) {
            const Graph& g = term.graph;
            if (!g.leg_free())
                throw DomainError("cannot evaluate a polynomial with legs: " + render_graph(g));
            Term t;
            t.coeff = rational_to_double(term.coeff);
            std::map<int, int> powers; // component index -> multiplicity
            for (const Graph& comp : split_components(g)) {
                CanonicalForm cf = canonicalize(comp);
                auto it = comp_index.find(cf.key);
                int idx;
                if (it == comp_index.end()) {
                    idx = static_cast<int>(plan.comps_.size());
                    comp_index.emplace(cf.key, idx);
                    plan.comps_.push_back(to_component(cf.graph));
                } else {
                    idx = it->second;
                }
                ++powers[idx];
            }
            for (auto [idx, pow] : powers)
                t.factors.emplace_back(idx, pow);
            plan.terms_.push_back(std::move(t));
        }
        return plan;
    }

    int max_component_vertices() const {
        int m = 0;
        for (const auto& c : comps_)
            m = std::max(m, c.nv);
        return m;
    }

    std::size_t component_count() const { return comps_.size(); }

    /// w: per-state weights (length s); kernel: s x s row-major edge values.
    /// scratch must have component_count() capacity.
    double evaluate(const double* w, const double* kernel, int s,
                    std::vector<double>& scratch) const {
        scratch.resize(comps_.size());
        for (std::size_t i = 0; i < comps_.size(); ++i)
            scratch[i] = contract(comps_[i], w, kernel, s);
        double total = 0;
        for (const auto& t : terms_) {
            double v = t.coeff;
            for (auto [idx, pow] : t.factors)
                for (int k = 0; k < pow; ++k)
                    v *= scratch[idx];
            total += v;
        }
        return total;
    }

private:
    static std::vector<Graph> split_components(const Graph& g) {
        auto vs = g.vertex_set();
        std::map<int, int> root;
        for (int v : vs)
            root[v] = v;
        std::function<int(int)> find = [&](int v) {
            while (root[v] != v)
                v = root[v] = root[root[v]];
            return v;
        };
        for (const auto& e : g.edges())
            root[find(e.lo)] = find(e.hi);
        std::map<int, Graph> parts;
        for (const auto& e : g.edges()) {
            Graph& part = parts[find(e.lo)];
            part = part.with_edge(e.lo, e.hi, e.mult);
        }
        std::vector<Graph> out;
        for (auto& [r, part] : parts)
            out.push_back(std::move(part));
        return out;
    }

    static Component to_component(const Graph& canon) {
        Component c;
        c.nv = canon.vertex_count();
        for (const auto& e : canon.edges())
            c.edges.push_back({e.lo - 1, e.hi - 1, e.mult});
        return c;
    }

    static double contract(const Component& c, const double* w, const double* kernel, int s) {
        if (c.nv == 0)
            return 1.0;
        if (c.nv == 1) {
            // single vertex, self-loops only
            double total = 0;
            for (int x = 0; x < s; ++x) {
                double v = w[x];
                for (const auto& [u, vv, mult] : c.edges)
                    for (int t = 0; t < mult; ++t)
                        v *= kernel[x * s + x];
                total += v;
            }
            return total;
        }
        if (c.nv == 2) {
            double total = 0;
            for (int x = 0; x < s; ++x) {
                double wx = w[x];
                for (int y = 0; y < s; ++y) {
                    double v = wx * w[y];
                    for (const auto& [u, vv, mult] : c.edges) {
                        double k = kernel[(u == vv ? (u == 0 ? x * s + x : y * s + y)
                                                   : x * s + y)];
                        for (int t = 0; t < mult; ++t)
                            v *= k;
                    }
                    total += v;
                }
            }
            return total;
        }
        if (c.nv > 8)
            throw CapacityError("contraction over a component with " + std::to_string(c.nv) +
                                " replicas is out of budget");
        std::array<int, 8> x{};
        double total = 0;
        while (true) {
            double v = 1;
            for (int i = 0; i < c.nv; ++i)
                v *= w[x[i]];
            for (const auto& [u, vv, mult] : c.edges) {
                double k = kernel[x[u] * s + x[vv]];
                for (int t = 0; t < mult; ++t)
                    v *= k;
            }
            total += v;
            int pos = 0;
            while (pos < c.nv && ++x[pos] == s) {
                x[pos] = 0;
                ++pos;
            }
            if (pos == c.nv)
                break;
        }
        return total;
    }

    std::vector<Component> comps_;
    std::vector<Term> terms_;
};

} // namespace ovc

#endif
