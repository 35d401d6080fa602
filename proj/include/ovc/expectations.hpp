#ifndef OVC_EXPECTATIONS_HPP
#define OVC_EXPECTATIONS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ovc/contraction.hpp"
#include "ovc/gauss_hermite.hpp"
#include "ovc/spin_model.hpp"

namespace ovc {

/// Disorder-average settings: tensor Gauss-Hermite up to kQuadDimCap
/// coupling dimensions, seeded plain Monte Carlo beyond (when mc_samples
/// is set). Everything is evaluated in a fixed order with compensated
/// summation, so results are run-to-run identical.
struct QuadratureSpec {
    int nodes_per_dim = 20;
    long mc_samples = 0;
    std::uint64_t seed = 12345;
};

namespace detail {

struct Kahan {
    double sum = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// Spin flip symmetry: H, K and both kernels are invariant under a global
// flip, so everything runs over 2^(N-1) configuration classes.
struct ReplicaEnv {
    int n = 0;
    int s = 0; // number of classes
    int m = 0; // coupling dimension
    std::vector<double> pairprod; // s*m entries of s_i s_j
    std::vector<double> kernel;   // s*s class kernel matrix
};

inline ReplicaEnv make_env(int n, KernelMode mode) {
    if (n < 2 || n > kEnumCapN)
        throw DomainError("spin count must be in [2, " + std::to_string(kEnumCapN) + "], got " +
                          std::to_string(n));
    ReplicaEnv env;
    env.n = n;
    env.s = 1 << (n - 1);
    env.m = pair_count(n);
    env.pairprod.resize(static_cast<std::size_t>(env.s) * env.m);
    for (int c = 0; c < env.s; ++c) {
        int d = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                env.pairprod[static_cast<std::size_t>(c) * env.m + d++] =
                    config_spin(c, i) * config_spin(c, j);
    }
    env.kernel.resize(static_cast<std::size_t>(env.s) * env.s);
    for (int a = 0; a < env.s; ++a)
        for (int b = 0; b < env.s; ++b)
            env.kernel[static_cast<std::size_t>(a) * env.s + b] = overlap_kernel(a, b, n, mode);
    return env;
}

// out[c] = scale * sum_d J_d * pairprod[c][d]
inline void class_energies(const ReplicaEnv& env, const double* coupl, double scale,
                           double* out) {
    for (int c = 0; c < env.s; ++c) {
        const double* row = env.pairprod.data() + static_cast<std::size_t>(c) * env.m;
        double acc = 0;
        for (int d = 0; d < env.m; ++d)
            acc += coupl[d] * row[d];
        out[c] = scale * acc;
    }
}

inline void gibbs_weights(const double* energy, double beta, int s, double* w) {
    double emin = energy[0];
    for (int c = 1; c < s; ++c)
        emin = std::min(emin, energy[c]);
    double z = 0;
    for (int c = 0; c < s; ++c) {
        w[c] = std::exp(-beta * (energy[c] - emin));
        z += w[c];
    }
    for (int c = 0; c < s; ++c)
        w[c] /= z;
}

// Visits every tensor quadrature node in a fixed odometer order.
template <class F>
void for_each_quad_node(const GaussHermiteRule& rule, int dims, F&& visit) {
    std::vector<int> idx(dims, 0);
    std::vector<double> coord(dims);
    while (true) {
        double wq = 1;
        for (int d = 0; d < dims; ++d) {
            coord[d] = rule.nodes[idx[d]];
            wq *= rule.weights[idx[d]];
        }
        visit(coord.data(), wq);
        int pos = 0;
        while (pos < dims && ++idx[pos] == rule.npoints) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == dims)
            break;
    }
}

// Seeded Box-Muller normals; avoids the implementation-defined sequence of
// std::normal_distribution so a seed pins the exact stream.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 1e-300);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() {
        return (rng_() >> 11) * 0x1.0p-53;
    }
    std::mt19937_64 rng_;
    double spare_ = 0;
    bool have_ = false;
};

template <class F>
void for_each_mc_node(long samples, std::uint64_t seed, int dims, F&& visit) {
    NormalStream stream(seed);
    std::vector<double> coord(dims);
    double wq = 1.0 / static_cast<double>(samples);
    for (long i = 0; i < samples; ++i) {
        for (int d = 0; d < dims; ++d)
            coord[d] = stream.next();
        visit(coord.data(), wq);
    }
}

template <class F>
void average_disorder(int dims, const QuadratureSpec& spec, F&& visit) {
    if (dims <= kQuadDimCap) {
        for_each_quad_node(gauss_hermite(spec.nodes_per_dim), dims, visit);
    } else if (spec.mc_samples > 0) {
        for_each_mc_node(spec.mc_samples, spec.seed, dims, visit);
    } else {
        throw CapacityError("coupling dimension " + std::to_string(dims) +
                            " exceeds the tensor quadrature cap of " +
                            std::to_string(kQuadDimCap) +
                            " and no Monte Carlo samples are configured");
    }
}

} // namespace detail

/// Quenched expectation of a leg-free polynomial: disorder average of the
/// replica-product Gibbs expectation of each term's edge product, edges
/// valued by the kernel mode. Linear in P.
inline double quenched_expect(const Polynomial& p, int n, double beta,
                              const QuadratureSpec& spec, KernelMode mode) {
    if (p.is_zero())
        return 0.0;
    detail::ReplicaEnv env = detail::make_env(n, mode);
    EvalPlan plan = EvalPlan::compile(p);
    std::vector<double> energy(env.s), w(env.s), scratch;
    detail::Kahan acc;
    double scale = -1.0 / std::sqrt(static_cast<double>(n));
    detail::average_disorder(env.m, spec, [&](const double* coupl, double wq) {
        detail::class_energies(env, coupl, scale, energy.data());
        detail::gibbs_weights(energy.data(), beta, env.s, w.data());
        acc.add(wq * plan.evaluate(w.data(), env.kernel.data(), env.s, scratch));
    });
    return acc.sum;
}

/// Deformed expectation at fixed disorder J: average over the independent
/// deformation couplings J' of the product of per-replica deformed states
/// applied to the edge product. Even in lambda by the sign symmetry of J'.
inline double deformed_expect(const Polynomial& p, double lambda, const SpinModel& model,
                              const QuadratureSpec& spec, KernelMode mode) {
    validate_model(model);
    if (p.is_zero())
        return 0.0;
    detail::ReplicaEnv env = detail::make_env(model.n, mode);
    EvalPlan plan = EvalPlan::compile(p);
    std::vector<double> h(env.s), k(env.s), tilted(env.s), w(env.s), scratch;
    detail::class_energies(env, model.couplings.data(), -1.0 / std::sqrt(model.n), h.data());
    detail::Kahan acc;
    detail::average_disorder(env.m, spec, [&](const double* coupl, double wq) {
        detail::class_energies(env, coupl, -1.0 / model.n, k.data());
        for (int c = 0; c < env.s; ++c)
            tilted[c] = model.beta * h[c] - lambda * k[c];
        detail::gibbs_weights(tilted.data(), 1.0, env.s, w.data());
        acc.add(wq * plan.evaluate(w.data(), env.kernel.data(), env.s, scratch));
    });
    return acc.sum;
}

/// E_{lambda K} on a grid lambda = j*step: the full deformed quenched
/// measure (averaged over both J and J'), all grid points evaluated in one
/// sweep over the tensor product of both disorder grids.
inline std::vector<double> averaged_deformed_sweep(const Polynomial& p, int n, double beta,
                                                   const QuadratureSpec& spec, KernelMode mode,
                                                   double step,
                                                   const std::vector<int>& multiples) {
    detail::ReplicaEnv env = detail::make_env(n, mode);
    if (env.m > kQuadDimCap)
        throw CapacityError("deformed sweeps use tensor quadrature only; coupling dimension " +
                            std::to_string(env.m) + " exceeds " + std::to_string(kQuadDimCap));
    EvalPlan plan = EvalPlan::compile(p);
    int levels = static_cast<int>(multiples.size());
    int jmax = 0;
    for (int j : multiples)
        jmax = std::max(jmax, std::abs(j));
    int width = 2 * jmax + 1; // tilt exponent offsets -jmax..jmax

    const GaussHermiteRule& rule = gauss_hermite(spec.nodes_per_dim);

    // Precompute the deformation-side tables once: per inner node, its
    // weight and e^{step*j*K(c)} for every class and grid multiple.
    std::size_t inner_nodes = 1;
    for (int d = 0; d < env.m; ++d)
        inner_nodes *= static_cast<std::size_t>(rule.npoints);
    std::vector<double> inner_weight(inner_nodes);
    std::vector<double> tilt(inner_nodes * static_cast<std::size_t>(env.s) * width);
    {
        std::vector<double> k(env.s);
        std::size_t at = 0;
        detail::for_each_quad_node(rule, env.m, [&](const double* kcoupl, double wk) {
            detail::class_energies(env, kcoupl, -1.0 / n, k.data());
            inner_weight[at] = wk;
            double* row = tilt.data() + at * env.s * width;
            for (int c = 0; c < env.s; ++c) {
                double t = std::exp(step * k[c]);
                double tml = 1.0 / t;
                double* cr = row + static_cast<std::size_t>(c) * width + jmax;
                cr[0] = 1.0;
                for (int e = 1; e <= jmax; ++e) {
                    cr[e] = cr[e - 1] * t;
                    cr[-e] = cr[-(e - 1)] * tml;
                }
            }
            ++at;
        });
    }

    std::vector<double> h(env.s), base(env.s), w(env.s), scratch;
    std::vector<detail::Kahan> acc(levels);
    double hscale = -1.0 / std::sqrt(static_cast<double>(n));
    detail::for_each_quad_node(rule, env.m, [&](const double* jcoupl, double wj) {
        detail::class_energies(env, jcoupl, hscale, h.data());
        double hmin = h[0];
        for (int c = 1; c < env.s; ++c)
            hmin = std::min(hmin, h[c]);
        for (int c = 0; c < env.s; ++c)
            base[c] = std::exp(-beta * (h[c] - hmin));
        for (std::size_t at = 0; at < inner_nodes; ++at) {
            const double* row = tilt.data() + at * env.s * width;
            double wnode = wj * inner_weight[at];
            for (int lvl = 0; lvl < levels; ++lvl) {
                int j = multiples[lvl];
                double z = 0;
                for (int c = 0; c < env.s; ++c) {
                    w[c] = base[c] * row[static_cast<std::size_t>(c) * width + jmax + j];
                    z += w[c];
                }
                double inv = 1.0 / z;
                for (int c = 0; c < env.s; ++c)
                    w[c] *= inv;
                acc[lvl].add(wnode * plan.evaluate(w.data(), env.kernel.data(), env.s, scratch));
            }
        }
    });

    std::vector<double> out(levels);
    for (int lvl = 0; lvl < levels; ++lvl)
        out[lvl] = acc[lvl].sum;
    return out;
}

inline double averaged_deformed_expect(const Polynomial& p, double lambda, int n, double beta,
                                       const QuadratureSpec& spec, KernelMode mode) {
    return averaged_deformed_sweep(p, n, beta, spec, mode, lambda, {1})[0];
}

/// (1/N) Av log Z: the quenched free-energy density (times -beta).
inline double quenched_log_z_density(int n, double beta, const QuadratureSpec& spec) {
    detail::ReplicaEnv env = detail::make_env(n, KernelMode::Exact);
    std::vector<double> energy(env.s);
    detail::Kahan acc;
    double scale = -1.0 / std::sqrt(static_cast<double>(n));
    detail::average_disorder(env.m, spec, [&](const double* coupl, double wq) {
        detail::class_energies(env, coupl, scale, energy.data());
        double emin = energy[0];
        for (int c = 1; c < env.s; ++c)
            emin = std::min(emin, energy[c]);
        double z = 0;
        for (int c = 0; c < env.s; ++c)
            z += std::exp(-beta * (energy[c] - emin));
        acc.add(wq * (std::log(2 * z) - beta * emin));
    });
    return acc.sum / n;
}

} // namespace ovc

#endif
