#include "starkcav/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace starkcav {
namespace {

constexpr double kRangeTol = 1e-12;      // population bound slack
constexpr double kDegeneracyTol = 1e-9;  // relative spectrum-gap threshold

const Complex kI{0.0, 1.0};

std::string dump_matrix(const Eigen::Matrix4d& h) {
    std::ostringstream os;
    os << h;
    return os.str();
}

}  // namespace

const char* backend_name(Backend b) {
    return b == Backend::exact ? "exact" : "symmetric";
}

Populations make_populations(double e2, double b2, double a2) {
    Populations p;
    p.e2 = e2;
    p.b2 = b2;
    p.a2 = a2;

    double v = 0.0;
    v = std::max(v, -e2);
    v = std::max(v, e2 - 0.5);
    v = std::max(v, -b2);
    v = std::max(v, b2 - 1.0);
    v = std::max(v, -a2);
    v = std::max(v, a2 - 1.0);
    p.violation = std::max(v, 0.0);
    p.valid = v <= kRangeTol;
    return p;
}

// ---------------------------------------------------------------- exact --

SpectralDecomposition decompose(const Eigen::Matrix4d& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(h);
    if (solver.info() != Eigen::Success) {
        throw SolverError("eigensolver failed on\n" + dump_matrix(h));
    }

    SpectralDecomposition dec;
    dec.eigenvalues = solver.eigenvalues();
    dec.eigenvectors = solver.eigenvectors();

    const Eigen::Matrix4d rebuilt = dec.eigenvectors *
                                    dec.eigenvalues.asDiagonal() *
                                    dec.eigenvectors.transpose();
    dec.residual = (h - rebuilt).norm();
    const double scale = std::max(h.norm(), 1.0);
    if (dec.residual > 1e-10 * scale) {
        throw SolverError("spectral reconstruction residual " +
                          std::to_string(dec.residual) + " on\n" +
                          dump_matrix(h));
    }
    return dec;
}

ExactPropagator::ExactPropagator(const SystemParams& p)
    : dec_(decompose(exact_hamiltonian_matrix(dressed_coefficients(p), p.n))) {}

AmplitudeVector ExactPropagator::apply(const AmplitudeVector& psi,
                                       double t) const {
    const Eigen::Vector4cd modes =
        dec_.eigenvectors.transpose() * psi.as_vector();
    Eigen::Vector4cd evolved;
    for (int k = 0; k < 4; ++k) {
        evolved(k) = std::exp(-kI * dec_.eigenvalues(k) * t) * modes(k);
    }
    return AmplitudeVector::from_vector(dec_.eigenvectors * evolved);
}

Populations ExactPropagator::populations(double t) const {
    return populations_exact(at(t));
}

AmplitudeVector evolve_exact(const SystemParams& p, double t) {
    return ExactPropagator(p).at(t);
}

Populations populations_exact(const AmplitudeVector& psi) {
    const double e2 = 0.5 * (std::norm(psi.c) + std::norm(psi.d));
    return make_populations(e2, std::norm(psi.b), std::norm(psi.a));
}

Populations populations_exact(const SystemParams& p, double t) {
    return populations_exact(evolve_exact(p, t));
}

// -------------------------------------------------------------- quartic --

std::array<double, 4> quartic_from_matrix(const Eigen::Matrix4d& h) {
    // det(M I - H) via elementary symmetric functions of the spectrum:
    // e1 = tr H, e2 = sum of 2x2 principal minors, e3 = sum of 3x3
    // principal minors, e4 = det H.
    double e1 = h.trace();

    double e2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            e2 += h(i, i) * h(j, j) - h(i, j) * h(j, i);
        }
    }

    double e3 = 0.0;
    for (int skip = 0; skip < 4; ++skip) {
        int idx[3];
        int m = 0;
        for (int i = 0; i < 4; ++i) {
            if (i != skip) idx[m++] = i;
        }
        Eigen::Matrix3d sub;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                sub(r, c) = h(idx[r], idx[c]);
            }
        }
        e3 += sub.determinant();
    }

    const double e4 = h.determinant();

    // M^4 - e1 M^3 + e2 M^2 - e3 M + e4
    return {e4, -e3, e2, -e1};
}

std::array<double, 4> quartic_closed_form(const DressedCoefficients& c) {
    const double f1s = c.f1 * c.f1;
    const double f2s = c.f2 * c.f2;

    const double chi3 = -c.xi1 - 2.0 * c.xi2 - c.xi3;
    const double chi2 = 2.0 * c.xi2 * c.xi3 + c.xi1 * c.xi3 +
                        2.0 * c.xi1 * c.xi2 + c.xi2 * c.xi2 - 2.0 * f1s -
                        2.0 * f2s;
    const double chi1 = f1s * c.xi1 + f2s * c.xi3 + 2.0 * f1s * c.xi2 +
                        2.0 * f2s * c.xi2 - c.xi1 * c.xi2 * c.xi2 +
                        f1s * c.xi3 + f2s * c.xi3 -
                        2.0 * c.xi1 * c.xi2 * c.xi3 - c.xi2 * c.xi2 * c.xi3;
    const double chi0 = f1s * f1s - 2.0 * f1s * f2s + f2s * f2s -
                        f1s * f1s * c.xi1 * c.xi2 - f2s * c.xi1 * c.xi2 -
                        f1s * c.xi2 * c.xi3 - f2s * c.xi2 * c.xi3 +
                        c.xi1 * c.xi2 * c.xi2 * c.xi3;
    return {chi0, chi1, chi2, chi3};
}

double quartic_eval(const std::array<double, 4>& coeffs, double m) {
    return (((m + coeffs[3]) * m + coeffs[2]) * m + coeffs[1]) * m + coeffs[0];
}

// ------------------------------------------------------------ symmetric --

std::array<double, 3> symmetric_eigenvalues(const DressedCoefficients& c) {
    if (c.delta < 0.0) {
        throw std::domain_error("symmetric_eigenvalues: delta < 0");
    }
    const double root = std::sqrt(c.delta);
    const double s = c.xi1 + c.xi2;
    return {0.5 * (s - root), 0.5 * (s + root), c.xi4};
}

std::array<double, 3> symmetric_eigenvalues_expanded(const SystemParams& p) {
    const double g = p.gamma1 + p.gamma2;
    const DressedCoefficients c = dressed_coefficients(p);
    if (c.delta < 0.0) {
        throw std::domain_error("symmetric_eigenvalues_expanded: delta < 0");
    }
    const double root = std::sqrt(c.delta);
    const double s = p.wz + p.wc * (2.0 * p.n + 1.0) + g * (p.n + 2.0);
    const double chi3 = -p.wz + p.wc * (p.n + 2.0) - g * (p.n + 4.0);
    return {0.5 * (s - root), 0.5 * (s + root), chi3};
}

namespace {

void require_non_degenerate(const std::array<double, 3>& chi) {
    const double scale = std::max(
        {1.0, std::abs(chi[0]), std::abs(chi[1]), std::abs(chi[2])});
    const double gap = std::min({std::abs(chi[0] - chi[1]),
                                 std::abs(chi[0] - chi[2]),
                                 std::abs(chi[1] - chi[2])});
    if (gap < kDegeneracyTol * scale) {
        throw DegeneracyError(
            "symmetric backend: near-degenerate spectrum (gap " +
            std::to_string(gap) + "); use the exact backend");
    }
}

}  // namespace

SymmetricWeights symmetric_weights(const DressedCoefficients& c) {
    const auto chi = symmetric_eigenvalues(c);
    require_non_degenerate(chi);

    const double target = c.f1 * (c.f1 + c.f2);

    Eigen::Matrix3d m;
    m << 1.0, 1.0, 1.0,
         chi[0], chi[1], chi[2],
         chi[0] * chi[0], chi[1] * chi[1], chi[2] * chi[2];
    const Eigen::Vector3d rhs(0.0, 0.0, target);
    const Eigen::Vector3d k = m.fullPivLu().solve(rhs);

    SymmetricWeights w;
    w.solved = {k(0), k(1), k(2)};

    const Eigen::Vector3d res = m * k - rhs;
    w.condition_residual = res.cwiseAbs().maxCoeff();

    // Closed rational expressions in (delta, F). Denominators vanish
    // exactly at the degeneracies excluded above.
    const double sq = std::sqrt(c.delta);
    const double num = 2.0 * target;  // 2 lambda2 (lambda1+lambda2) (n+1)
    w.rational = {num / (c.delta - c.F * sq), num / (c.delta + c.F * sq),
                  2.0 * num / (c.F * c.F - c.delta)};

    for (int j = 0; j < 3; ++j) {
        const double denom = std::max(std::abs(w.solved[j]), 1e-300);
        w.max_rel_deviation = std::max(
            w.max_rel_deviation,
            std::abs(w.rational[j] - w.solved[j]) / denom);
    }
    return w;
}

SymmetricPropagator::SymmetricPropagator(const SystemParams& p) {
    const DressedCoefficients c = dressed_coefficients(p);
    chi_ = symmetric_eigenvalues(c);
    xi1_ = c.xi1;

    if (c.f1 == 0.0) {
        // The weights vanish with f1; only the top level evolves (a pure
        // phase), so the mode-sum machinery is bypassed.
        decoupled_ = true;
        return;
    }
    weights_ = symmetric_weights(c);

    const double fsum = c.f1 + c.f2;
    const double fprod = c.f1 * fsum;

    for (int j = 0; j < 3; ++j) {
        const double k = weights_.solved[j];
        b_coef_[j] = k;
        e_coef_[j] = -k * (chi_[j] + c.xi4) / fsum;
        a_coef_[j] =
            k * ((chi_[j] + c.xi4) * (chi_[j] + c.xi2) - c.f2 * fsum) / fprod;
    }
}

SymmetricAmplitudes SymmetricPropagator::at(double t) const {
    SymmetricAmplitudes s;
    if (decoupled_) {
        s.a = std::exp(-kI * xi1_ * t);
        return s;
    }
    for (int j = 0; j < 3; ++j) {
        const Complex phase = std::exp(-kI * chi_[j] * t);
        s.a += a_coef_[j] * phase;
        s.e += e_coef_[j] * phase;
        s.b += b_coef_[j] * phase;
    }
    return s;
}

Populations SymmetricPropagator::populations(double t) const {
    const SymmetricAmplitudes s = at(t);
    const double e2 = std::norm(s.e);
    const double b2 = std::norm(s.b);
    // a2 is defined by subtraction; the grouping is part of the contract so
    // that a2 + (2 e2 + b2) reproduces 1.0 bit-exactly.
    return make_populations(e2, b2, 1.0 - (2.0 * e2 + b2));
}

SymmetricAmplitudes evolve_symmetric(const SystemParams& p, double t) {
    return SymmetricPropagator(p).at(t);
}

Populations populations_symmetric(const SystemParams& p, double t) {
    return SymmetricPropagator(p).populations(t);
}

Populations populations_closed_form(const SystemParams& p, double t) {
    const DressedCoefficients c = dressed_coefficients(p);
    require_non_degenerate(symmetric_eigenvalues(c));

    const double g = p.gamma1 + p.gamma2;
    const double np1 = p.n + 1.0;
    const double d = c.delta;
    const double sq = std::sqrt(d);
    const double F = c.F;
    const double l2s = p.lambda2 * p.lambda2 * np1;

    // Recurring frequency combinations of the series.
    const double s4 = -p.wz + p.wc * (4.0 * p.n + 5.0) - g * (p.n + 6.0);
    const double s1 = -p.wz + p.wc * (p.n + 2.0) - g * (p.n + 4.0);  // = xi4

    const double dm = d - F * sq;
    const double dp = d + F * sq;
    const double fd = F * F - d;

    const double cos_sq = std::cos(sq * t);
    const double cos_m = std::cos(0.5 * (F - sq) * t);
    const double cos_p = std::cos(0.5 * (F + sq) * t);

    const double e2 =
        l2s * ((s4 - sq) / (dm * dm) + (s4 + sq) / (dp * dp) +
               64.0 * s1 * s1 / (fd * fd)) +
        2.0 * l2s * cos_sq / (d * d - F * d) * (s4 * s4 - d) +
        16.0 * l2s * cos_m / (fd * dm) * (s1 * (s4 - sq)) +
        16.0 * l2s * cos_p / (fd * dp) * (s1 * (s4 + sq));

    const double lsum = p.lambda1 + p.lambda2;
    const double b_pref = 8.0 * p.lambda2 * p.lambda2 * lsum * lsum * np1 *
                          np1 / (d - F * F);
    const double b2 = b_pref * ((3.0 * d + F * F) / (d * (d - F * F)) +
                                cos_sq / d - cos_m / dm - cos_p / dp);

    return make_populations(e2, b2, 1.0 - (2.0 * e2 + b2));
}

}  // namespace starkcav
