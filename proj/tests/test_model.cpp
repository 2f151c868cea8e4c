#include <cmath>
#include <random>

#include <doctest.h>

#include "starkcav/model.hpp"
#include "starkcav/propagator.hpp"

using namespace starkcav;

namespace {

SystemParams trivial_params() {
    SystemParams p;  // wz = wc = gamma = 0, lambda = 1, n = 0
    return p;
}

SystemParams draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> freq(-2.0, 2.0);
    std::uniform_real_distribution<double> stark(0.0, 5.0);
    std::uniform_real_distribution<double> coupling(0.05, 2.0);
    std::uniform_int_distribution<int> fock(0, 6);
    SystemParams p;
    p.wz = freq(rng);
    p.wc = freq(rng);
    p.gamma1 = stark(rng);
    p.gamma2 = stark(rng);
    p.lambda1 = coupling(rng);
    p.lambda2 = coupling(rng);
    p.n = fock(rng);
    return p;
}

}  // namespace

TEST_CASE("dressed coefficients: all-zero frequencies") {
    const auto c = dressed_coefficients(trivial_params());
    CHECK(c.xi1 == 0.0);
    CHECK(c.xi2 == 0.0);
    CHECK(c.xi3 == 0.0);
    CHECK(c.xi4 == 0.0);
    CHECK(c.f1 == 1.0);
    CHECK(c.f2 == 1.0);
    CHECK(c.delta == 8.0);
    CHECK(c.F == 0.0);
}

TEST_CASE("dressed coefficients: worked point") {
    SystemParams p;
    p.wz = 0.5;
    p.wc = 1.0;
    p.gamma1 = 1.0;
    p.gamma2 = 2.0;
    p.n = 1;
    const auto c = dressed_coefficients(p);
    CHECK(c.xi1 == doctest::Approx(10.5).epsilon(1e-14));
    CHECK(c.xi2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.xi3 == c.xi2);
    CHECK(c.xi4 == doctest::Approx(-12.5).epsilon(1e-14));
    CHECK(c.f1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(c.f2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(c.delta == doctest::Approx(88.25).epsilon(1e-14));
    CHECK(c.F == doctest::Approx(37.5).epsilon(1e-14));
}

TEST_CASE("dressed coefficients: algebraic identities on random draws") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 10000; ++i) {
        const SystemParams p = draw(rng);
        const auto c = dressed_coefficients(p);
        CHECK(c.xi2 == c.xi3);

        const double scale =
            std::max({1.0, std::abs(c.xi1), std::abs(c.xi2), std::abs(c.xi4)});
        CHECK(std::abs(c.F - (c.xi1 + c.xi2 - 2.0 * c.xi4)) <= 1e-12 * scale);

        const double gap = c.xi1 - c.xi2;
        const double delta_id = gap * gap + 4.0 * c.f1 * (c.f1 + c.f2);
        CHECK(c.delta ==
              doctest::Approx(delta_id).epsilon(1e-12).scale(scale * scale));
        CHECK(c.delta >= 0.0);
    }
}

TEST_CASE("dressed coefficients: scale covariance") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        SystemParams p = draw(rng);
        const auto c = dressed_coefficients(p);
        const double s = 3.5;
        SystemParams q = p;
        q.wz *= s;
        q.wc *= s;
        q.gamma1 *= s;
        q.gamma2 *= s;
        q.lambda1 *= s;
        q.lambda2 *= s;
        const auto cs = dressed_coefficients(q);
        CHECK(cs.xi1 == doctest::Approx(s * c.xi1).epsilon(1e-12));
        CHECK(cs.xi4 == doctest::Approx(s * c.xi4).epsilon(1e-12));
        CHECK(cs.f1 == doctest::Approx(s * c.f1).epsilon(1e-12));
        CHECK(cs.F == doctest::Approx(s * c.F).epsilon(1e-12));
        CHECK(cs.delta == doctest::Approx(s * s * c.delta).epsilon(1e-12));
    }
}

TEST_CASE("hamiltonian matrix: trivial point") {
    const auto h = exact_hamiltonian_matrix(
        dressed_coefficients(trivial_params()), 0);
    const double r2 = std::sqrt(2.0);
    Eigen::Matrix4d want;
    want << 0, 1, 1, 0,
            1, 0, 0, r2,
            1, 0, 0, r2,
            0, r2, r2, 0;
    CHECK((h - want).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian matrix: symmetric bit-exactly, trace matches spectrum") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const SystemParams p = draw(rng);
        const auto c = dressed_coefficients(p);
        const auto h = exact_hamiltonian_matrix(c, p.n);
        CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(h(0, 0) == c.xi1);
        CHECK(h(1, 1) == c.xi2);
        CHECK(h(2, 2) == c.xi3);
        CHECK(h(3, 3) == c.xi4);

        const auto dec = decompose(h);
        const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
        CHECK(std::abs(dec.eigenvalues.sum() - h.trace()) <= 1e-12 * scale);
    }
}

TEST_CASE("initial state") {
    const auto psi = initial_state();
    CHECK(psi.a == Complex{1.0, 0.0});
    CHECK(psi.c == Complex{0.0, 0.0});
    CHECK(psi.d == Complex{0.0, 0.0});
    CHECK(psi.b == Complex{0.0, 0.0});
    CHECK(psi.norm2() == 1.0);

    // Evolving it for zero time returns it unchanged.
    const auto evolved = evolve_exact(trivial_params(), 0.0);
    CHECK((evolved.as_vector() - psi.as_vector()).cwiseAbs().maxCoeff() <
          1e-15);
}

TEST_CASE("parameter validation") {
    SystemParams p;
    p.wz = std::nan("");
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = SystemParams{};
    p.lambda1 = -0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = SystemParams{};
    p.n = -1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = SystemParams{};
    p.lambda1 = 0.0;
    p.lambda2 = 0.0;
    CHECK_NOTHROW(p.validate());
    CHECK(p.trivial_coupling());
}
