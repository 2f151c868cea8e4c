// correlations.hpp — Quantum coherence (root Jensen-Shannon divergence),
// entropic quantum discord, classical correlation and mutual information for
// two-qubit X states, each with a closed form and an independent
// brute-force route.

#pragma once

#include "starkcav/atomstate.hpp"
#include "starkcav/propagator.hpp"

namespace starkcav {

// Projective-measurement Bloch angles on subsystem B,
// theta in [0, pi/2], phi in [0, 2 pi).
struct MeasurementAngles {
    double theta = 0.0;
    double phi = 0.0;
};

// C(rho) = sqrt(J(rho, rho_d)) with
// J(rho, sigma) = S((rho+sigma)/2) - (S(rho) + S(sigma))/2 and rho_d the
// dephased (diagonal) state. Generic dense-eigensolver route; independent
// of the closed form below.
double coherence_jsd(const TwoQubitXState& s);

// Closed form for the dynamical state: sqrt(3 e2 (1 - log2(3)/2)).
// Throws std::domain_error outside e2 in [0, 1/2].
double coherence_closed_form(double e2);

// I(rho) = S_A + S_B - S_AB.
double mutual_information(const TwoQubitXState& s);

// Closed-form discord pipeline for a general X state:
//   zeta1 = H((1 + sqrt((1-2(r33+r44))^2 + 4(|r14|+|r23|)^2))/2)
//   zeta2 = -sum r_ii log2 r_ii - H(r11 + r33)
//   J_i = H(r11 + r22) - zeta_i,          J = max(J1, J2)
//   Q_i = H(r11 + r33) + sum eta log2 eta + zeta_i,  Q = min(Q1, Q2)
// J_i + Q_i = I for each branch, so argmax J_i == argmin Q_i.
struct DiscordBreakdown {
    double q = 0.0;
    double q1 = 0.0, q2 = 0.0;
    double j = 0.0;
    double j1 = 0.0, j2 = 0.0;
    double zeta1 = 0.0, zeta2 = 0.0;
    double mutual = 0.0;
    int q_branch = 0;  // 1 or 2
    int j_branch = 0;
};

DiscordBreakdown discord_closed_form(const TwoQubitXState& s);

// The specialization of (Q1, Q2) to the dynamical state diag(a2,e2,e2,b2)
// with r23 = e2: the spectrum collapses to {a2, b2, 2 e2, 0}, Q2 to 2 e2.
// Equal to the generic pipeline by construction.
std::pair<double, double> discord_dynamical(double e2, double b2);

// Conditional entropy sum_j p_j S(rho_A|j) after the projective measurement
// (theta, phi) on B, evaluated from the closed p_j / upsilon_j forms with
// the measurement cross term expanded as
//   2 |r14||r23| cos(2 phi + arg(r14) - arg(r23)).
double conditional_entropy(const TwoQubitXState& s, double theta, double phi);

struct BruteForceResult {
    double q = 0.0;
    MeasurementAngles argmin;
    double min_conditional_entropy = 0.0;
};

// Grid minimization of the conditional entropy over theta in [0, pi/2]
// (theta_steps points inclusive) and phi in [0, 2 pi) (phi_steps points),
// lowest-index tie-break. Q = I - S_B + min conditional entropy.
// Requires at least 9 steps per axis.
BruteForceResult discord_bruteforce(const TwoQubitXState& s, int theta_steps,
                                    int phi_steps);

// One time point of a sweep.
struct CorrelationSample {
    double t = 0.0;
    Backend backend = Backend::exact;
    Populations pops;
    double coherence = 0.0;
    double discord = 0.0;
    double classical = 0.0;
    double mutual_info = 0.0;
    bool valid = true;
};

}  // namespace starkcav
