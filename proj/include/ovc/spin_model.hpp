#ifndef OVC_SPIN_MODEL_HPP
#define OVC_SPIN_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ovc/errors.hpp"

namespace ovc {

inline constexpr int kEnumCapN = 14;   // 2^N configurations enumerable
inline constexpr int kQuadDimCap = 8;  // tensor quadrature up to this many couplings

/// A finite mean-field spin-glass instance: N spins, one standard-normal
/// coupling per unordered pair (scaled by 1/sqrt(N) in the Hamiltonian),
/// inverse temperature beta.
struct SpinModel {
    int n = 0;
    std::vector<double> couplings; // pair order (0,1),(0,2),...,(1,2),...
    double beta = 0.0;
};

inline int pair_count(int n) { return n * (n - 1) / 2; }

inline void validate_model(const SpinModel& m) {
    if (m.n < 2 || m.n > kEnumCapN)
        throw DomainError("spin count must be in [2, " + std::to_string(kEnumCapN) + "], got " +
                          std::to_string(m.n));
    if (static_cast<int>(m.couplings.size()) != pair_count(m.n))
        throw DomainError("expected " + std::to_string(pair_count(m.n)) + " couplings, got " +
                          std::to_string(m.couplings.size()));
    if (!(m.beta >= 0))
        throw DomainError("beta must be >= 0");
}

inline int config_spin(std::uint32_t config, int i) { return (config >> i) & 1u ? -1 : 1; }

inline double overlap_q(std::uint32_t a, std::uint32_t b, int n) {
    int disagree = __builtin_popcount((a ^ b) & ((1u << n) - 1));
    return static_cast<double>(n - 2 * disagree) / n;
}

enum class KernelMode { Idealized, Exact };

inline std::string to_string(KernelMode m) {
    return m == KernelMode::Idealized ? "idealized" : "exact";
}

/// Edge value between two replica configurations. Idealized is the squared
/// overlap q^2; Exact is the true covariance of the rescaled deformation
/// energy, (q^2 - 1/N)/2, whose diagonal is the constant (1 - 1/N)/2.
inline double overlap_kernel(std::uint32_t a, std::uint32_t b, int n, KernelMode mode) {
    double q = overlap_q(a, b, n);
    double q2 = q * q;
    return mode == KernelMode::Idealized ? q2 : (q2 - 1.0 / n) / 2.0;
}

// H(J, sigma) = -(1/sqrt(N)) sum_{i<j} J_ij s_i s_j
inline double hamiltonian(const SpinModel& m, std::uint32_t config) {
    double acc = 0;
    int d = 0;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j)
            acc += m.couplings[d++] * config_spin(config, i) * config_spin(config, j);
    return -acc / std::sqrt(static_cast<double>(m.n));
}

struct GibbsState {
    std::vector<double> weights; // over all 2^N configurations, sums to 1
    double log_z = 0.0;
    double minus_beta_f = 0.0; // (1/N) log Z for this disorder
};

inline GibbsState gibbs_state(const SpinModel& m) {
    validate_model(m);
    std::size_t total = 1u << m.n;
    std::vector<double> energy(total);
    double emin = 0;
    for (std::size_t c = 0; c < total; ++c) {
        energy[c] = hamiltonian(m, static_cast<std::uint32_t>(c));
        if (c == 0 || energy[c] < emin)
            emin = energy[c];
    }
    GibbsState g;
    g.weights.resize(total);
    double z_shifted = 0;
    for (std::size_t c = 0; c < total; ++c) {
        g.weights[c] = std::exp(-m.beta * (energy[c] - emin));
        z_shifted += g.weights[c];
    }
    for (double& w : g.weights)
        w /= z_shifted;
    g.log_z = std::log(z_shifted) - m.beta * emin;
    g.minus_beta_f = g.log_z / m.n;
    return g;
}

} // namespace ovc

#endif
