#include "starkcav/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace starkcav {
namespace {

Eigen::Matrix4cd dense_matrix(const TwoQubitXState& s) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = s.r11;
    m(1, 1) = s.r22;
    m(2, 2) = s.r33;
    m(3, 3) = s.r44;
    m(1, 2) = s.r23;
    m(2, 1) = std::conj(s.r23);
    m(0, 3) = s.r14;
    m(3, 0) = std::conj(s.r14);
    return m;
}

double dense_entropy(const Eigen::Matrix4cd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw SolverError("dense 4x4 Hermitian eigensolver failed");
    }
    const Eigen::Vector4d eig = solver.eigenvalues();
    return von_neumann_entropy(
        std::span<const double>(eig.data(), static_cast<size_t>(eig.size())));
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

double coherence_jsd(const TwoQubitXState& s) {
    s.validate();
    const Eigen::Matrix4cd rho = dense_matrix(s);
    Eigen::Matrix4cd diag = Eigen::Matrix4cd::Zero();
    diag.diagonal() = rho.diagonal();

    const double divergence = dense_entropy(0.5 * (rho + diag)) -
                              0.5 * (dense_entropy(rho) + dense_entropy(diag));
    // Rounding can push an exact zero a few ulp negative.
    return std::sqrt(std::max(divergence, 0.0));
}

double coherence_closed_form(double e2) {
    if (e2 < -1e-12 || e2 > 0.5 + 1e-12) {
        throw std::domain_error("coherence_closed_form: e2 outside [0, 1/2]");
    }
    e2 = std::clamp(e2, 0.0, 0.5);
    return std::sqrt(3.0 * e2 * (1.0 - 0.5 * std::log2(3.0)));
}

double mutual_information(const TwoQubitXState& s) {
    const auto [sa, sb] = marginal_entropies(s);
    return sa + sb - von_neumann_entropy(xstate_eigenvalues(s));
}

DiscordBreakdown discord_closed_form(const TwoQubitXState& s) {
    s.validate();
    DiscordBreakdown out;

    const double sa = binary_entropy(s.r11 + s.r22);
    const double sb = binary_entropy(s.r11 + s.r33);
    const double s_ab = von_neumann_entropy(xstate_eigenvalues(s));
    out.mutual = sa + sb - s_ab;

    const double off = std::abs(s.r14) + std::abs(s.r23);
    const double bias = 1.0 - 2.0 * (s.r33 + s.r44);
    out.zeta1 =
        binary_entropy(0.5 * (1.0 + std::sqrt(bias * bias + 4.0 * off * off)));
    out.zeta2 = -(xlog2x(s.r11) + xlog2x(s.r22) + xlog2x(s.r33) +
                  xlog2x(s.r44)) -
                sb;

    out.j1 = sa - out.zeta1;
    out.j2 = sa - out.zeta2;
    out.q1 = sb - s_ab + out.zeta1;
    out.q2 = sb - s_ab + out.zeta2;

    out.j_branch = out.j1 >= out.j2 ? 1 : 2;
    out.q_branch = out.q1 <= out.q2 ? 1 : 2;
    out.j = std::max(out.j1, out.j2);
    out.q = std::min(out.q1, out.q2);
    return out;
}

std::pair<double, double> discord_dynamical(double e2, double b2) {
    const double a2 = 1.0 - 2.0 * e2 - b2;
    const double spread = 1.0 - 2.0 * e2 - 2.0 * b2;
    const double q1 =
        binary_entropy(1.0 - e2 - b2) + xlog2x(a2) + xlog2x(b2) +
        xlog2x(2.0 * e2) +
        binary_entropy(
            0.5 * (1.0 + std::sqrt(spread * spread + 4.0 * e2 * e2)));
    const double q2 = 2.0 * e2;
    return {q1, q2};
}

double conditional_entropy(const TwoQubitXState& s, double theta, double phi) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double mag14 = std::abs(s.r14);
    const double mag23 = std::abs(s.r23);
    double cross = 0.0;
    if (mag14 > 0.0 && mag23 > 0.0) {
        cross = 2.0 * mag14 * mag23 *
                std::cos(2.0 * phi + std::arg(s.r14) - std::arg(s.r23));
    }
    const double coh = mag14 * mag14 + mag23 * mag23 + cross;

    double entropy = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const double sign = (j == 1) ? -1.0 : 1.0;
        const double p =
            0.5 * (1.0 + sign * ct * (1.0 - 2.0 * s.r11 - 2.0 * s.r33));
        if (p <= 0.0) continue;

        const double spread = 1.0 - 2.0 * (s.r33 + s.r44) +
                              sign * ct * (1.0 - 2.0 * s.r11 - 2.0 * s.r44);
        const double upsilon =
            0.25 * spread * spread + st * st * std::max(coh, 0.0);
        const double ratio = std::min(std::sqrt(upsilon) / p, 1.0);
        entropy += p * binary_entropy(0.5 * (1.0 + ratio));
    }
    return entropy;
}

BruteForceResult discord_bruteforce(const TwoQubitXState& s, int theta_steps,
                                    int phi_steps) {
    if (theta_steps < 9 || phi_steps < 9) {
        throw std::invalid_argument("discord_bruteforce: need >= 9 steps");
    }
    s.validate();

    constexpr double half_pi = std::numbers::pi / 2.0;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    BruteForceResult best;
    best.min_conditional_entropy = std::numeric_limits<double>::infinity();
    for (int i = 0; i < theta_steps; ++i) {
        const double theta = half_pi * i / (theta_steps - 1);
        for (int j = 0; j < phi_steps; ++j) {
            const double phi = two_pi * j / phi_steps;
            const double ce = conditional_entropy(s, theta, phi);
            if (ce < best.min_conditional_entropy) {
                best.min_conditional_entropy = ce;
                best.argmin = {theta, phi};
            }
        }
    }

    // Classical correlation pairs the measured marginal's entropy with the
    // conditional entropy as in the closed-form J_i = H(r11+r22) - zeta_i;
    // this is what makes classical (diagonal) states carry zero discord.
    const double sa = binary_entropy(s.r11 + s.r22);
    const double mutual = mutual_information(s);
    best.q = mutual - (sa - best.min_conditional_entropy);
    return best;
}

}  // namespace starkcav
