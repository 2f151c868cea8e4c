// atomstate.hpp — Reduced two-qubit density matrix in X form plus the
// entropy primitives built on it. Base-2 logarithms everywhere; entropies
// are in bits.

#pragma once

#include <array>
#include <span>
#include <utility>

#include "starkcav/errors.hpp"
#include "starkcav/model.hpp"
#include "starkcav/propagator.hpp"

namespace starkcav {

// Basis order (|e1 e2>, |e1 g2>, |g1 e2>, |g1 g2>). Only the independent
// entries of the Hermitian X matrix are stored: the four diagonals, the
// inner coherence r23 and the outer coherence r14.
struct TwoQubitXState {
    double r11 = 0.0;
    double r22 = 0.0;
    double r33 = 0.0;
    double r44 = 0.0;
    Complex r23{0.0, 0.0};
    Complex r14{0.0, 0.0};

    double trace() const { return r11 + r22 + r33 + r44; }

    // Relative phase arg(r14 * conj(r23)), recorded for the projective
    // measurement cross term; 0 when either coherence vanishes.
    double phase() const;

    // Trace 1 (1e-12), nonnegative diagonals and the X-form PSD bounds
    // |r23|^2 <= r22 r33, |r14|^2 <= r11 r44, each with 1e-12 slack.
    // Throws InvalidStateError.
    void validate() const;
};

// The dynamical reduced state: diag(a2, e2, e2, b2) with r23 = e2, r14 = 0.
// Throws InvalidPopulationsError when pops are flagged out of range.
TwoQubitXState reduce_to_atoms(const Populations& pops);

// Poisson-weighted convex mixture of per-Fock-level reduced states,
//   rho = sum_n P_n(|alpha|^2) rho^(n),  P_n = e^{-|a|^2} |a|^(2n) / n!,
// truncated at n_max. Throws TruncationError if the tail mass past n_max
// exceeds 1e-10, and propagates per-level population errors.
TwoQubitXState reduce_coherent_mix(const SystemParams& p, double t, int n_max,
                                   Backend backend);

// Smallest n_max whose Poisson tail mass is below tail_tol.
int poisson_truncation(double mean, double tail_tol = 1e-10);

// Eigenvalues of a density matrix, descending.
struct EigenSpectrum4 {
    std::array<double, 4> eta{};
};

// Closed-form X-state spectrum:
//   eta12 = (r11 + r44 +- sqrt((r11-r44)^2 + 4|r14|^2)) / 2
//   eta34 = (r22 + r33 +- sqrt((r22-r33)^2 + 4|r23|^2)) / 2
EigenSpectrum4 xstate_eigenvalues(const TwoQubitXState& s);

// -sum p log2 p with 0 log 0 = 0. Entries in [-1e-12, 0) are truncated to
// zero; anything more negative throws InvalidStateError.
double von_neumann_entropy(std::span<const double> probs);
double von_neumann_entropy(const EigenSpectrum4& spec);

// Binary Shannon entropy in bits; x is clamped from [-1e-12, 1+1e-12].
double binary_entropy(double x);

// (S_A, S_B) = (H(r11 + r22), H(r11 + r33)).
std::pair<double, double> marginal_entropies(const TwoQubitXState& s);

}  // namespace starkcav
