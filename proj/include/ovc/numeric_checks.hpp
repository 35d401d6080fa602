#ifndef OVC_NUMERIC_CHECKS_HPP
#define OVC_NUMERIC_CHECKS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "ovc/expectations.hpp"
#include "ovc/operators.hpp"
#include "ovc/report.hpp"

namespace ovc {

struct OracleConfig {
    int n = 3;
    double beta = 0.5;
    double lambda_step = 0.05;
    double beta_step = 1e-3;
    int quad_nodes = 20;
    long mc_samples = 0;
    std::uint64_t seed = 12345;
    KernelMode kernel = KernelMode::Exact;

    QuadratureSpec quadrature() const { return {quad_nodes, mc_samples, seed}; }
};

inline OracleConfig config_from_json(const nlohmann::ordered_json& doc) {
    OracleConfig cfg;
    if (!doc.is_object())
        throw ParseError("config must be a JSON object");
    auto grab = [&](const char* name, auto& field) {
        if (doc.contains(name)) {
            try {
                field = doc[name].template get<std::decay_t<decltype(field)>>();
            } catch (const nlohmann::json::exception&) {
                throw ParseError(std::string("config field '") + name + "' has the wrong type");
            }
        }
    };
    grab("N", cfg.n);
    grab("beta", cfg.beta);
    grab("lambda_step", cfg.lambda_step);
    grab("beta_step", cfg.beta_step);
    grab("quad_nodes", cfg.quad_nodes);
    grab("mc_samples", cfg.mc_samples);
    grab("seed", cfg.seed);
    if (doc.contains("kernel")) {
        std::string k = doc["kernel"].get<std::string>();
        if (k == "exact")
            cfg.kernel = KernelMode::Exact;
        else if (k == "idealized")
            cfg.kernel = KernelMode::Idealized;
        else
            throw ParseError("config kernel must be 'exact' or 'idealized', got '" + k + "'");
    }
    return cfg;
}

inline nlohmann::ordered_json config_to_json(const OracleConfig& cfg) {
    return {{"N", cfg.n},
            {"beta", cfg.beta},
            {"lambda_step", cfg.lambda_step},
            {"beta_step", cfg.beta_step},
            {"quad_nodes", cfg.quad_nodes},
            {"mc_samples", cfg.mc_samples},
            {"seed", cfg.seed},
            {"kernel", to_string(cfg.kernel)}};
}

namespace detail {

// 5-point central first derivative at spacing h.
inline double first_derivative(double fm2, double fm1, double fp1, double fp2, double h) {
    return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
}

// 5-point second derivative at spacing h.
inline double second_derivative(double fm2, double fm1, double f0, double fp1, double fp2,
                                double h) {
    return (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
}

} // namespace detail

/// Central finite differences plus one Richardson level on
/// lambda -> E_{lambda K}(M) at lambda = 0, against the quenched expectation
/// of C delta^k M with self-loops retained and valued by the exact kernel.
/// The identity is exact at finite N, so quadrature-grade function values
/// make 1e-3 relative error comfortably reachable.
inline Report lambda_derivative_check(const Graph& m, const OracleConfig& cfg, int order) {
    if (order % 2 != 0)
        throw DomainError("odd-order lambda derivatives vanish by parity; order must be 2 or 4");
    if (order != 2 && order != 4)
        throw DomainError("lambda_derivative_check supports order 2 or 4");
    if (cfg.n > 3)
        throw DomainError("quadrature-exact lambda derivatives require N <= 3");

    Report rep;
    rep.check = "lambda_derivative";
    rep.inputs = {{"monomial", render_graph(m)}, {"order", order}, {"N", cfg.n},
                  {"beta", cfg.beta},            {"h", cfg.lambda_step},
                  {"quad_nodes", cfg.quad_nodes}};

    double h0 = cfg.lambda_step / 2; // grid j*h0 covers steps h and h/2
    std::vector<int> js = {-4, -2, -1, 0, 1, 2, 4};
    std::vector<double> f = averaged_deformed_sweep(Polynomial::monomial(m), cfg.n, cfg.beta,
                                                    cfg.quadrature(), KernelMode::Exact, h0, js);
    auto F = [&](int j) {
        for (std::size_t i = 0; i < js.size(); ++i)
            if (js[i] == j)
                return f[i];
        throw DomainError("missing grid point");
    };

    double h = cfg.lambda_step;
    double lhs = 0;
    if (order == 2) {
        double d_h = (F(2) - 2 * F(0) + F(-2)) / (h * h);
        double d_h2 = (F(1) - 2 * F(0) + F(-1)) / (h0 * h0);
        lhs = (4 * d_h2 - d_h) / 3;
        rep.data["fd_coarse"] = d_h;
        rep.data["fd_fine"] = d_h2;
    } else {
        double h4 = h * h * h * h;
        double h04 = h0 * h0 * h0 * h0;
        double d_h = (F(4) - 4 * F(2) + 6 * F(0) - 4 * F(-2) + F(-4)) / h4;
        double d_h2 = (F(2) - 4 * F(1) + 6 * F(0) - 4 * F(-1) + F(-2)) / h04;
        lhs = (4 * d_h2 - d_h) / 3;
        rep.data["fd_coarse"] = d_h;
        rep.data["fd_fine"] = d_h2;
    }

    Polynomial image = wick_delta_power(m, order, DiagonalMode::Kernel);
    double rhs = quenched_expect(image, cfg.n, cfg.beta, cfg.quadrature(), KernelMode::Exact);

    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.rel_error = relative_error(lhs, rhs);
    rep.ratio = rhs != 0 ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
    rep.pass = *rep.rel_error <= 1e-3;
    if (order == 4) {
        Polynomial d2 = big_delta(big_delta(m, DiagonalMode::Kernel), DiagonalMode::Kernel);
        double alt = 3 * quenched_expect(d2, cfg.n, cfg.beta, cfg.quadrature(), KernelMode::Exact);
        rep.data["three_delta_squared"] = alt;
        rep.notes.push_back("fourth derivative also matches 3 E(Delta^2 M): rel err " +
                            std::to_string(relative_error(lhs, alt)));
    }
    return rep;
}

/// (1/beta) d/dbeta E_N(M) against N E_N(Delta M), Delta in kernel mode with
/// the exact kernel. Exact at finite N.
inline Report beta_derivative_check(const Graph& m, const OracleConfig& cfg) {
    if (!(cfg.beta > 0))
        throw DomainError("beta_derivative_check requires beta > 0");
    if (cfg.n > 4)
        throw DomainError("beta_derivative_check requires N <= 4");

    Report rep;
    rep.check = "beta_derivative";
    rep.inputs = {{"monomial", render_graph(m)}, {"N", cfg.n}, {"beta", cfg.beta},
                  {"step", cfg.beta_step},       {"quad_nodes", cfg.quad_nodes}};

    Polynomial mono = Polynomial::monomial(m);
    double h = cfg.beta_step;
    auto E = [&](double beta) {
        return quenched_expect(mono, cfg.n, beta, cfg.quadrature(), KernelMode::Exact);
    };
    double eprime = detail::first_derivative(E(cfg.beta - 2 * h), E(cfg.beta - h),
                                             E(cfg.beta + h), E(cfg.beta + 2 * h), h);
    double lhs = eprime / cfg.beta;
    Polynomial d1 = big_delta(m, DiagonalMode::Kernel);
    double rhs =
        cfg.n * quenched_expect(d1, cfg.n, cfg.beta, cfg.quadrature(), KernelMode::Exact);

    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.rel_error = relative_error(lhs, rhs);
    rep.ratio = rhs != 0 ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
    rep.pass = *rep.rel_error <= 1e-4;
    return rep;
}

/// Measures rho = [((1/beta) d/dbeta)^2 E_N(M)] / [N^2 E_N(Delta^2 M)].
/// Iterating the first-order identity forces rho = 1; the literature prints
/// a variant with an extra factor 3. The measurement adjudicates and the
/// conflict is recorded rather than silently resolved.
inline Report beta_second_derivative_ratio(const Graph& m, const OracleConfig& cfg) {
    if (!(cfg.beta > 0))
        throw DomainError("beta_second_derivative_ratio requires beta > 0");
    if (cfg.n > 4)
        throw DomainError("beta_second_derivative_ratio requires N <= 4");

    Report rep;
    rep.check = "beta_second_derivative_ratio";
    rep.inputs = {{"monomial", render_graph(m)}, {"N", cfg.n}, {"beta", cfg.beta},
                  {"step", cfg.beta_step},       {"quad_nodes", cfg.quad_nodes}};

    Polynomial mono = Polynomial::monomial(m);
    double h = cfg.beta_step;
    double b = cfg.beta;
    auto E = [&](double beta) {
        return quenched_expect(mono, cfg.n, beta, cfg.quadrature(), KernelMode::Exact);
    };
    double fm2 = E(b - 2 * h), fm1 = E(b - h), f0 = E(b), fp1 = E(b + h), fp2 = E(b + 2 * h);
    double eprime = detail::first_derivative(fm2, fm1, fp1, fp2, h);
    double esecond = detail::second_derivative(fm2, fm1, f0, fp1, fp2, h);
    // ((1/b) d/db)^2 = E''/b^2 - E'/b^3
    double lhs = esecond / (b * b) - eprime / (b * b * b);

    Polynomial d2 = big_delta(big_delta(m, DiagonalMode::Kernel), DiagonalMode::Kernel);
    double base = quenched_expect(d2, cfg.n, cfg.beta, cfg.quadrature(), KernelMode::Exact);
    double rhs = static_cast<double>(cfg.n) * cfg.n * base;

    rep.lhs = lhs;
    rep.rhs = rhs;
    if (std::abs(rhs) < 1e-13) {
        rep.notes.push_back("denominator N^2 E(Delta^2 M) is zero; ratio undefined, not a failure");
        return rep;
    }
    double rho = lhs / rhs;
    rep.ratio = rho;
    rep.rel_error = std::abs(rho - 1.0);
    rep.pass = *rep.rel_error <= 1e-2;
    rep.data["distance_to_1"] = std::abs(rho - 1.0);
    rep.data["distance_to_3"] = std::abs(rho - 3.0);
    rep.notes.push_back("candidate rho = 1 (iterated first-order identity) vs printed variant "
                        "rho = 3; measured value adjudicates");
    return rep;
}

/// Pure-quadrature consistency: Av_J E_{lambda K}(M) at (beta, lambda)
/// equals the quenched expectation at beta_tilde = sqrt(beta^2 + lambda^2/N).
/// No finite differences are involved, so this validates the numerics module
/// itself at near machine precision before it adjudicates anything symbolic.
inline Report effective_beta_check(const Graph& m, const OracleConfig& cfg, double lambda) {
    if (cfg.n > 3)
        throw DomainError("effective_beta_check requires N <= 3");
    Report rep;
    rep.check = "effective_beta";
    rep.inputs = {{"monomial", render_graph(m)}, {"N", cfg.n},
                  {"beta", cfg.beta},            {"lambda", lambda},
                  {"kernel", to_string(cfg.kernel)}, {"quad_nodes", cfg.quad_nodes}};

    Polynomial mono = Polynomial::monomial(m);
    double lhs = lambda == 0
                     ? quenched_expect(mono, cfg.n, cfg.beta, cfg.quadrature(), cfg.kernel)
                     : averaged_deformed_expect(mono, lambda, cfg.n, cfg.beta, cfg.quadrature(),
                                                cfg.kernel);
    double beta_eff = std::sqrt(cfg.beta * cfg.beta + lambda * lambda / cfg.n);
    double rhs = quenched_expect(mono, cfg.n, beta_eff, cfg.quadrature(), cfg.kernel);

    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.rel_error = relative_error(lhs, rhs);
    rep.ratio = rhs != 0 ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
    rep.pass = *rep.rel_error <= 1e-6;
    rep.data["beta_eff"] = beta_eff;
    return rep;
}

/// Tabulates E_N(Delta M) and E_N(Delta^2 M) against 1/N and 1/N^2. The
/// quadrature node count shrinks with the coupling dimension to keep the
/// sweep tractable; this is a qualitative trend check, not a tolerance test.
inline Report rate_trend(const Graph& m, const std::vector<int>& ns, const OracleConfig& cfg) {
    Report rep;
    rep.check = "rate_trend";
    rep.inputs = {{"monomial", render_graph(m)}, {"beta", cfg.beta},
                  {"quad_nodes", cfg.quad_nodes}, {"Ns", ns}};

    Polynomial d1 = big_delta(m, DiagonalMode::Kernel);
    Polynomial d2 = big_delta(d1, DiagonalMode::Kernel);

    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    std::vector<double> v1;
    for (int n : ns) {
        int dims = pair_count(n);
        QuadratureSpec spec = cfg.quadrature();
        if (dims <= kQuadDimCap) {
            // keep the tensor grid below ~3e5 nodes
            int cap = spec.nodes_per_dim;
            while (cap > 4 && std::pow(static_cast<double>(cap), dims) > 3e5)
                --cap;
            spec.nodes_per_dim = cap;
        }
        double e1 = quenched_expect(d1, n, cfg.beta, spec, KernelMode::Exact);
        double e2 = quenched_expect(d2, n, cfg.beta, spec, KernelMode::Exact);
        v1.push_back(e1);
        table.push_back({{"N", n},
                         {"delta_mean", e1},
                         {"delta2_mean", e2},
                         {"one_over_N", 1.0 / n},
                         {"one_over_N2", 1.0 / (static_cast<double>(n) * n)},
                         {"nodes_per_dim", dims <= kQuadDimCap ? spec.nodes_per_dim : 0},
                         {"mc_samples", dims <= kQuadDimCap ? 0 : spec.mc_samples}});
    }
    rep.data["table"] = std::move(table);

    if (v1.size() < 2) {
        rep.notes.push_back("single N: trend n/a");
        return rep;
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < v1.size(); ++i)
        if (!(std::abs(v1[i]) < std::abs(v1[i - 1])))
            decreasing = false;
    rep.pass = decreasing;
    rep.notes.push_back(decreasing ? "|E_N(Delta M)| strictly decreasing in N"
                                   : "|E_N(Delta M)| is not monotone over the given Ns");
    return rep;
}

/// Sanity probe of the thermodynamic-limit monotonicity: (1/N) Av log Z is
/// increasing in N.
inline Report free_energy_trend(const std::vector<int>& ns, const OracleConfig& cfg) {
    Report rep;
    rep.check = "free_energy_trend";
    rep.inputs = {{"beta", cfg.beta}, {"quad_nodes", cfg.quad_nodes}, {"Ns", ns}};
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    std::vector<double> vals;
    for (int n : ns) {
        int dims = pair_count(n);
        QuadratureSpec spec = cfg.quadrature();
        if (dims <= kQuadDimCap) {
            int cap = spec.nodes_per_dim;
            while (cap > 4 && std::pow(static_cast<double>(cap), dims) > 3e5)
                --cap;
            spec.nodes_per_dim = cap;
        }
        double v = quenched_log_z_density(n, cfg.beta, spec);
        vals.push_back(v);
        table.push_back({{"N", n}, {"log_z_density", v}});
    }
    rep.data["table"] = std::move(table);
    if (vals.size() >= 2) {
        bool increasing = true;
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (!(vals[i] > vals[i - 1]))
                increasing = false;
        rep.pass = increasing;
        rep.notes.push_back(increasing ? "free-energy density increases with N"
                                       : "free-energy density is not monotone");
    }
    return rep;
}

} // namespace ovc

#endif
