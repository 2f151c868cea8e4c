#include "starkcav/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starkcav::oracle {
namespace {

const Complex kI{0.0, 1.0};

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0,
                 kB4 = 125.0 / 192.0, kB5 = -2187.0 / 6784.0,
                 kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

using Vec = Eigen::Vector4cd;

struct Stepper {
    Eigen::Matrix4cd gen;  // -i h
    double tol;

    Vec rhs(const Vec& y) const { return gen * y; }

    // One attempted step of size h from y; on acceptance advances y and
    // returns true with the error estimate consumed.
    bool try_step(Vec& y, double h, double& err_out) const {
        const Vec k1 = rhs(y);
        const Vec k2 = rhs(y + h * (kA21 * k1));
        const Vec k3 = rhs(y + h * (kA31 * k1 + kA32 * k2));
        const Vec k4 = rhs(y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
        const Vec k5 =
            rhs(y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
        const Vec k6 = rhs(y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 +
                                    kA64 * k4 + kA65 * k5));
        const Vec y5 =
            y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        const Vec k7 = rhs(y5);  // FSAL stage, reused only for the estimate
        const Vec diff = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 +
                              kE6 * k6 + kE7 * k7);

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double scale =
                tol + tol * std::max(std::abs(y(i)), std::abs(y5(i)));
            err = std::max(err, std::abs(diff(i)) / scale);
        }
        err_out = err;
        if (err <= 1.0) {
            y = y5;
            return true;
        }
        return false;
    }
};

// Advance from t0 to t1 (t1 > t0), adapting the step and clipping the last
// step to land exactly on t1. A residual gap below one rounding unit of t1
// is absorbed into the grid point.
void advance(const Stepper& st, Vec& y, double t0, double t1, double& h) {
    const double span = t1 - t0;
    const double tiny = 1e-14 * t1;  // ~45 ulp of the target time
    double t = t0;
    while (t1 - t > tiny) {
        h = std::min(h, t1 - t);
        if (h < tiny) {
            throw IntegrationError("integrator step underflow", t);
        }
        double err = 0.0;
        const bool ok = st.try_step(y, h, err);
        if (ok) {
            t += h;
        }
        const double safety =
            0.8 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(safety, 0.2, 4.0);
        h = std::min(h, span);
    }
}

}  // namespace

AmplitudeVector ode_rhs(const DressedCoefficients& c, int n,
                        const AmplitudeVector& psi) {
    const Eigen::Matrix4d h = exact_hamiltonian_matrix(c, n);
    return AmplitudeVector::from_vector(-kI * (h * psi.as_vector()));
}

Eigen::Vector4cd integrate_matrix(const Eigen::Matrix4d& h,
                                  const Eigen::Vector4cd& psi0, double t_end,
                                  double tol) {
    if (t_end < 0.0) {
        throw std::invalid_argument("integrate_matrix: negative t_end");
    }
    if (t_end == 0.0) return psi0;

    Stepper st{(-kI * h.cast<Complex>()).eval(), tol};
    Vec y = psi0;
    double step = t_end / 100.0;
    advance(st, y, 0.0, t_end, step);
    return y;
}

Trajectory integrate(const SystemParams& p, double t_end, int samples,
                     double tol) {
    p.validate();
    if (!(t_end > 0.0)) {
        throw std::invalid_argument("integrate: t_end must be positive");
    }
    if (samples < 2) {
        throw std::invalid_argument("integrate: need at least 2 samples");
    }
    if (tol < 1e-13 || tol > 1e-6) {
        throw std::invalid_argument("integrate: tol outside [1e-13, 1e-6]");
    }

    const Eigen::Matrix4d h =
        exact_hamiltonian_matrix(dressed_coefficients(p), p.n);
    Stepper st{(-kI * h.cast<Complex>()).eval(), tol};

    Trajectory traj;
    traj.tol = tol;
    traj.times.reserve(samples);
    traj.states.reserve(samples);

    Vec y = initial_state().as_vector();
    double step = t_end / (100.0 * samples);
    traj.times.push_back(0.0);
    traj.states.push_back(AmplitudeVector::from_vector(y));

    for (int i = 1; i < samples; ++i) {
        const double t0 = t_end * (i - 1) / (samples - 1);
        const double t1 = t_end * i / (samples - 1);
        advance(st, y, t0, t1, step);
        traj.times.push_back(t1);
        traj.states.push_back(AmplitudeVector::from_vector(y));
    }
    return traj;
}

CrosscheckReport crosscheck(const SystemParams& p, double t_end, int grid) {
    const Trajectory traj = integrate(p, t_end, grid, 1e-10);
    const ExactPropagator exact(p);
    const SymmetricPropagator sym(p);

    CrosscheckReport rep;
    for (int i = 0; i < grid; ++i) {
        const double t = traj.times[i];
        const AmplitudeVector ex = exact.at(t);
        const Eigen::Vector4cd diff =
            ex.as_vector() - traj.states[i].as_vector();
        rep.max_amplitude_error =
            std::max(rep.max_amplitude_error, diff.cwiseAbs().maxCoeff());

        const Populations pe = populations_exact(ex);
        const Populations ps = sym.populations(t);
        rep.max_population_error = std::max(
            {rep.max_population_error, std::abs(pe.e2 - ps.e2),
             std::abs(pe.b2 - ps.b2), std::abs(pe.a2 - ps.a2)});
    }
    return rep;
}

}  // namespace starkcav::oracle
