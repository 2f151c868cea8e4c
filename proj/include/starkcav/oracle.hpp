// oracle.hpp — Independent brute-force integration of the coupled amplitude
// equations. Validates the spectral backend; shares no code path with it.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "starkcav/model.hpp"
#include "starkcav/propagator.hpp"

namespace starkcav::oracle {

struct Trajectory {
    std::vector<double> times;           // strictly increasing, uniform
    std::vector<AmplitudeVector> states;
    double tol = 0.0;                    // abs == rel error target
};

// Time derivative -i H psi of the coupled equations.
AmplitudeVector ode_rhs(const DressedCoefficients& c, int n,
                        const AmplitudeVector& psi);

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on a uniform output
// grid of `samples` points over [0, t_end]. Steps are clipped to land
// exactly on grid points (bit-reproducible). tol is applied as both the
// absolute and relative error target and must lie in [1e-13, 1e-6].
// Throws IntegrationError on step-size underflow.
Trajectory integrate(const SystemParams& p, double t_end, int samples,
                     double tol = 1e-10);

// Generic driver for an arbitrary real symmetric generator: integrates
// d psi/dt = -i h psi from t = 0 to t_end. Used by the public overload and
// by reversal/linearity tests (pass -h to run backwards).
Eigen::Vector4cd integrate_matrix(const Eigen::Matrix4d& h,
                                  const Eigen::Vector4cd& psi0, double t_end,
                                  double tol);

struct CrosscheckReport {
    double max_amplitude_error = 0.0;   // exact backend vs integrator
    double max_population_error = 0.0;  // symmetric backend vs exact
};

// Runs the exact backend, the integrator (tol 1e-10) and the symmetric
// backend on a shared uniform grid. The amplitude error is a correctness
// gate; the population discrepancy is an expected, reported quantity (the
// symmetric closed form genuinely differs).
CrosscheckReport crosscheck(const SystemParams& p, double t_end, int grid);

}  // namespace starkcav::oracle
