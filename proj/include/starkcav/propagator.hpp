// propagator.hpp — Two time-evolution backends for the invariant subspace.
//
// `exact`:     residual-validated spectral decomposition of the full 4x4
//              symmetric generator; norm conserving, ground truth.
// `symmetric`: the closed-form solution of the reduced three-level model
//              (c = d), built from its analytic eigenvalues and mode
//              weights; drives the bundled figure presets but does not
//              conserve the weighted norm. Never silently substituted for
//              `exact`.

#pragma once

#include <array>

#include <Eigen/Dense>

#include "starkcav/errors.hpp"
#include "starkcav/model.hpp"

namespace starkcav {

enum class Backend { exact, symmetric };

const char* backend_name(Backend b);

// Population triple of the reduced dynamics. a2 + 2*e2 + b2 == 1 holds
// bit-exactly for closed-form backends (a2 is defined by subtraction there)
// and to rounding for the exact backend. Out-of-range entries are flagged,
// never clamped; `violation` is the largest bound overshoot.
struct Populations {
    double e2 = 0.0;
    double b2 = 0.0;
    double a2 = 1.0;
    bool valid = true;
    double violation = 0.0;
};

Populations make_populations(double e2, double b2, double a2);

// ---------------------------------------------------------------- exact --

struct SpectralDecomposition {
    Eigen::Vector4d eigenvalues;   // ascending
    Eigen::Matrix4d eigenvectors;  // orthogonal, columns match eigenvalues
    double residual = 0.0;         // ||H - V L V^T|| (Frobenius)
};

// Throws SolverError if the solver fails or the reconstruction residual
// exceeds 1e-10 * max(||H||, 1); for a symmetric 4x4 that is a defect.
SpectralDecomposition decompose(const Eigen::Matrix4d& h);

// Caches one decomposition per parameter point; cheap to evaluate on a time
// grid and safe to share read-only across workers.
class ExactPropagator {
  public:
    explicit ExactPropagator(const SystemParams& p);

    // V exp(-i L t) V^T psi
    AmplitudeVector apply(const AmplitudeVector& psi, double t) const;
    // Evolution of the reference initial state (1,0,0,0).
    AmplitudeVector at(double t) const { return apply(initial_state(), t); }

    Populations populations(double t) const;
    const SpectralDecomposition& decomposition() const { return dec_; }

  private:
    SpectralDecomposition dec_;
};

AmplitudeVector evolve_exact(const SystemParams& p, double t);

// e2 := (|c|^2 + |d|^2)/2, b2 := |b|^2, a2 := |a|^2.
Populations populations_exact(const AmplitudeVector& psi);
Populations populations_exact(const SystemParams& p, double t);

// -------------------------------------------------------------- quartic --

// Coefficients (c0, c1, c2, c3) of the monic characteristic quartic
// M^4 + c3 M^3 + c2 M^2 + c1 M + c0 of the 4x4 generator, computed from
// traces/principal minors (canonical).
std::array<double, 4> quartic_from_matrix(const Eigen::Matrix4d& h);

// Explicit coefficient formulas in terms of (xi, f) for the reduced
// model. They drop the xi4 terms and the sqrt(n+2) couplings, so they
// disagree with the canonical coefficients; the gap is quantified by test
// rather than patched. Comparison surface only.
std::array<double, 4> quartic_closed_form(const DressedCoefficients& c);

double quartic_eval(const std::array<double, 4>& coeffs, double m);

// ------------------------------------------------------------ symmetric --

// Analytic eigenvalues of the reduced model: chi1,2 = (xi1 + xi2 -+
// sqrt(delta))/2, chi3 = xi4. Throws std::domain_error if delta < 0
// (impossible for real couplings of equal sign).
std::array<double, 3> symmetric_eigenvalues(const DressedCoefficients& c);

// The same eigenvalues expanded directly in (wz, wc, gamma, n); equal to
// symmetric_eigenvalues to rounding. Kept for the identity test.
std::array<double, 3> symmetric_eigenvalues_expanded(const SystemParams& p);

// Mode weights k1..k3. `solved` comes from the 3x3 linear system
//   sum k = 0,  sum k chi = 0,  sum k chi^2 = f1 (f1 + f2)
// and is the production path; `rational` evaluates the closed rational
// expressions in (delta, F) alongside. Throws DegeneracyError when the
// spectrum gap falls under 1e-9 relative (vanishing denominators); callers
// should use the exact backend there.
struct SymmetricWeights {
    std::array<double, 3> solved{};
    std::array<double, 3> rational{};
    double condition_residual = 0.0;   // max |condition violation| of `solved`
    double max_rel_deviation = 0.0;    // rational vs solved
};

SymmetricWeights symmetric_weights(const DressedCoefficients& c);

// Mode-sum propagator of the reduced model (canonical symmetric backend).
// Phases follow the Schroedinger sign e^{-i chi t}; populations are
// convention independent. f1 = 0 (lambda2 = 0) decouples the top level:
// the amplitudes collapse to a = e^{-i xi1 t}, e = b = 0.
class SymmetricPropagator {
  public:
    explicit SymmetricPropagator(const SystemParams& p);

    SymmetricAmplitudes at(double t) const;

    // e2 = |e|^2, b2 = |b|^2, a2 = 1 - 2 e2 - b2 (by definition).
    Populations populations(double t) const;

    const std::array<double, 3>& eigenvalues() const { return chi_; }
    const SymmetricWeights& weights() const { return weights_; }

  private:
    std::array<double, 3> chi_{};
    SymmetricWeights weights_;
    std::array<Complex, 3> b_coef_{};  // k_j
    std::array<Complex, 3> e_coef_{};  // -k_j (chi_j + xi4) / (f1 + f2)
    std::array<Complex, 3> a_coef_{};
    bool decoupled_ = false;
    double xi1_ = 0.0;
};

SymmetricAmplitudes evolve_symmetric(const SystemParams& p, double t);
Populations populations_symmetric(const SystemParams& p, double t);

// The explicit trigonometric population series for |e|^2 and |b|^2, with
// a2 = 1 - 2 e2 - b2. Internally inconsistent with the mode sum (|e|^2
// does not even vanish at t = 0); kept unpatched as a cross-check
// surface, flagged via Populations::valid.
Populations populations_closed_form(const SystemParams& p, double t);

}  // namespace starkcav
