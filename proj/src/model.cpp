#include "starkcav/model.hpp"

#include <cmath>
#include <stdexcept>

namespace starkcav {

void SystemParams::validate() const {
    const double fields[] = {wz, wc, gamma1, gamma2, lambda1, lambda2,
                             alpha.real(), alpha.imag()};
    for (double x : fields) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("SystemParams: non-finite field");
        }
    }
    if (lambda1 < 0.0 || lambda2 < 0.0) {
        throw std::invalid_argument("SystemParams: negative coupling");
    }
    if (n < 0) {
        throw std::invalid_argument("SystemParams: negative Fock index");
    }
}

DressedCoefficients dressed_coefficients(const SystemParams& p) {
    const double g = p.gamma1 + p.gamma2;
    const double np1 = static_cast<double>(p.n) + 1.0;
    const double detune = p.wz - p.wc + g * (p.n + 2.0);

    DressedCoefficients c;
    c.xi1 = p.wz + p.wc * p.n + g * (2.0 + p.n);
    c.xi2 = p.wc * (p.n + 1.0);
    c.xi3 = c.xi2;
    c.xi4 = -p.wz + p.wc * (p.n + 2.0) - g * (p.n + 4.0);
    c.f1 = p.lambda2 * std::sqrt(np1);
    c.f2 = p.lambda1 * std::sqrt(np1);
    c.delta = detune * detune + 4.0 * p.lambda2 * (p.lambda1 + p.lambda2) * np1;
    c.F = 3.0 * (p.wz - p.wc) + g * (3.0 * p.n + 10.0);
    return c;
}

Eigen::Matrix4d exact_hamiltonian_matrix(const DressedCoefficients& c, int n) {
    // f = lambda sqrt(n+1) -> lambda sqrt(n+2) = f * sqrt((n+2)/(n+1))
    const double rescale = std::sqrt((n + 2.0) / (n + 1.0));
    const double g1 = c.f1 * rescale;
    const double g2 = c.f2 * rescale;

    Eigen::Matrix4d h;
    h << c.xi1, c.f1,  c.f2,  0.0,
         c.f1,  c.xi2, 0.0,   g2,
         c.f2,  0.0,   c.xi3, g1,
         0.0,   g2,    g1,    c.xi4;
    return h;
}

AmplitudeVector initial_state() {
    return {Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0},
            Complex{0.0, 0.0}};
}

}  // namespace starkcav
