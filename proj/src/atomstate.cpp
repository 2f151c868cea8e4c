#include "starkcav/atomstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace starkcav {
namespace {

constexpr double kTol = 1e-12;

double safe_xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

}  // namespace

double TwoQubitXState::phase() const {
    if (std::abs(r14) == 0.0 || std::abs(r23) == 0.0) return 0.0;
    return std::arg(r14 * std::conj(r23));
}

void TwoQubitXState::validate() const {
    if (std::abs(trace() - 1.0) > kTol) {
        throw InvalidStateError("X state: trace deviates from 1 by " +
                                std::to_string(trace() - 1.0));
    }
    const double diag[] = {r11, r22, r33, r44};
    for (double x : diag) {
        if (x < -kTol) {
            throw InvalidStateError("X state: negative diagonal entry " +
                                    std::to_string(x));
        }
    }
    if (std::norm(r23) > r22 * r33 + kTol) {
        throw InvalidStateError("X state: |r23|^2 exceeds r22 r33");
    }
    if (std::norm(r14) > r11 * r44 + kTol) {
        throw InvalidStateError("X state: |r14|^2 exceeds r11 r44");
    }
}

TwoQubitXState reduce_to_atoms(const Populations& pops) {
    if (!pops.valid) {
        throw InvalidPopulationsError(
            "reduce_to_atoms: populations out of range by " +
            std::to_string(pops.violation));
    }
    TwoQubitXState s;
    s.r11 = pops.a2;
    s.r22 = pops.e2;
    s.r33 = pops.e2;
    s.r44 = pops.b2;
    s.r23 = pops.e2;
    s.r14 = 0.0;
    return s;
}

int poisson_truncation(double mean, double tail_tol) {
    if (mean == 0.0) return 0;
    double term = std::exp(-mean);  // P_0
    double cumulative = term;
    int n = 0;
    while (1.0 - cumulative > tail_tol) {
        ++n;
        term *= mean / n;
        cumulative += term;
        if (n > 4096) {
            throw TruncationError("poisson_truncation: mean too large");
        }
    }
    return n;
}

TwoQubitXState reduce_coherent_mix(const SystemParams& p, double t, int n_max,
                                   Backend backend) {
    const double mean = std::norm(p.alpha);

    // Tail mass past n_max must be negligible.
    double term = std::exp(-mean);
    double cumulative = term;
    std::vector<double> weight(n_max + 1);
    weight[0] = term;
    for (int n = 1; n <= n_max; ++n) {
        term *= mean / n;
        weight[n] = term;
        cumulative += term;
    }
    if (1.0 - cumulative > 1e-10) {
        throw TruncationError("reduce_coherent_mix: tail mass " +
                              std::to_string(1.0 - cumulative) +
                              " past n_max=" + std::to_string(n_max));
    }

    TwoQubitXState mix;
    for (int n = 0; n <= n_max; ++n) {
        if (weight[n] == 0.0) continue;
        SystemParams pn = p;
        pn.n = n;
        const Populations pops = backend == Backend::exact
                                     ? populations_exact(pn, t)
                                     : populations_symmetric(pn, t);
        const TwoQubitXState s = reduce_to_atoms(pops);
        mix.r11 += weight[n] * s.r11;
        mix.r22 += weight[n] * s.r22;
        mix.r33 += weight[n] * s.r33;
        mix.r44 += weight[n] * s.r44;
        mix.r23 += weight[n] * s.r23;
        mix.r14 += weight[n] * s.r14;
    }

    // Renormalize the (tiny) truncated tail so the mixture stays trace 1.
    const double tr = mix.trace();
    mix.r11 /= tr;
    mix.r22 /= tr;
    mix.r33 /= tr;
    mix.r44 /= tr;
    mix.r23 /= tr;
    mix.r14 /= tr;
    return mix;
}

EigenSpectrum4 xstate_eigenvalues(const TwoQubitXState& s) {
    const double outer =
        std::sqrt((s.r11 - s.r44) * (s.r11 - s.r44) + 4.0 * std::norm(s.r14));
    const double inner =
        std::sqrt((s.r22 - s.r33) * (s.r22 - s.r33) + 4.0 * std::norm(s.r23));

    std::array<double, 4> eta = {0.5 * (s.r11 + s.r44 + outer),
                                 0.5 * (s.r11 + s.r44 - outer),
                                 0.5 * (s.r22 + s.r33 + inner),
                                 0.5 * (s.r22 + s.r33 - inner)};
    std::sort(eta.begin(), eta.end(), std::greater<>());
    return {eta};
}

double von_neumann_entropy(std::span<const double> probs) {
    double entropy = 0.0;
    for (double p : probs) {
        if (p < -kTol) {
            throw InvalidStateError("entropy: negative probability " +
                                    std::to_string(p));
        }
        entropy -= safe_xlog2x(p);
    }
    return entropy;
}

double von_neumann_entropy(const EigenSpectrum4& spec) {
    return von_neumann_entropy(std::span<const double>(spec.eta));
}

double binary_entropy(double x) {
    if (x < -kTol || x > 1.0 + kTol) {
        throw InvalidStateError("binary_entropy: argument " +
                                std::to_string(x) + " outside [0,1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    return -safe_xlog2x(x) - safe_xlog2x(1.0 - x);
}

std::pair<double, double> marginal_entropies(const TwoQubitXState& s) {
    return {binary_entropy(s.r11 + s.r22), binary_entropy(s.r11 + s.r33)};
}

}  // namespace starkcav
