// model.hpp — Physical parameters and the dressed coefficients of the
// four-dimensional invariant subspace {|e1 e2,n>, |e1 g2,n+1>, |g1 e2,n+1>,
// |g1 g2,n+2>} for two two-level atoms coupled to one cavity mode with
// intensity-dependent Stark shifts.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace starkcav {

using Complex = std::complex<double>;

// All physical constants of one simulation point. hbar = 1; every frequency
// is a dimensionless multiple of the atom-field coupling (lambda1 = lambda2
// = 1 is the conventional unit), time in units of 1/lambda.
struct SystemParams {
    double wz = 0.0;       // atomic transition frequency
    double wc = 0.0;       // cavity mode frequency
    double gamma1 = 0.0;   // Stark-shift strength, atom 1
    double gamma2 = 0.0;   // Stark-shift strength, atom 2
    double lambda1 = 1.0;  // atom 1 - field coupling
    double lambda2 = 1.0;  // atom 2 - field coupling
    int n = 0;             // Fock excitation index
    Complex alpha{0.0, 0.0};  // coherent amplitude (coherent-mixing mode only)

    // Throws std::invalid_argument on non-finite fields, negative couplings
    // or negative n. Zero total coupling is allowed but makes the dynamics
    // trivial; see trivial_coupling().
    void validate() const;

    bool trivial_coupling() const { return lambda1 == 0.0 && lambda2 == 0.0; }
};

// Derived scalars that drive every closed form.
//
// xi1..xi4 are the diagonal frequencies of the invariant subspace, f1/f2 the
// off-diagonal couplings on the top row, delta and F the combinations that
// appear in the symmetric-case eigenvalues and weights. Guaranteed:
// xi2 == xi3, F == xi1 + xi2 - 2*xi4 and delta == (xi1-xi2)^2 + 4 f1 (f1+f2).
struct DressedCoefficients {
    double xi1 = 0.0;
    double xi2 = 0.0;
    double xi3 = 0.0;
    double xi4 = 0.0;
    double f1 = 0.0;  // lambda2 * sqrt(n+1)
    double f2 = 0.0;  // lambda1 * sqrt(n+1)
    double delta = 0.0;
    double F = 0.0;
};

// Complex amplitudes (a, c, d, b) over the invariant-subspace basis.
struct AmplitudeVector {
    Complex a{0.0, 0.0};  // |e1 e2, n>
    Complex c{0.0, 0.0};  // |e1 g2, n+1>
    Complex d{0.0, 0.0};  // |g1 e2, n+1>
    Complex b{0.0, 0.0};  // |g1 g2, n+2>

    double norm2() const {
        return std::norm(a) + std::norm(c) + std::norm(d) + std::norm(b);
    }

    Eigen::Vector4cd as_vector() const {
        Eigen::Vector4cd v;
        v << a, c, d, b;
        return v;
    }

    static AmplitudeVector from_vector(const Eigen::Vector4cd& v) {
        return {v(0), v(1), v(2), v(3)};
    }
};

// Amplitudes of the reduced three-level symmetric model (c = d = e).
// The weighted norm |a|^2 + 2|e|^2 + |b|^2 is NOT conserved by the
// closed-form symmetric propagator; it is reported, not enforced.
struct SymmetricAmplitudes {
    Complex a{0.0, 0.0};
    Complex e{0.0, 0.0};
    Complex b{0.0, 0.0};

    double weighted_norm2() const {
        return std::norm(a) + 2.0 * std::norm(e) + std::norm(b);
    }
};

// Dressed scalars from the physical parameters. Total on valid params.
DressedCoefficients dressed_coefficients(const SystemParams& p);

// The real symmetric 4x4 generator of the coupled amplitude equations,
// rows/columns ordered (a, c, d, b):
//
//   [ xi1  f1   f2   0  ]
//   [ f1   xi2  0    g2 ]          g1 = lambda2 sqrt(n+2)
//   [ f2   0    xi3  g1 ]          g2 = lambda1 sqrt(n+2)
//   [ 0    g2   g1   xi4]
//
// The b-row couplings carry sqrt(n+2), not sqrt(n+1); they are recovered
// from f1/f2 by rescaling.
Eigen::Matrix4d exact_hamiltonian_matrix(const DressedCoefficients& c, int n);

// Both atoms excited, cavity in the reference Fock level: (1, 0, 0, 0).
AmplitudeVector initial_state();

}  // namespace starkcav
