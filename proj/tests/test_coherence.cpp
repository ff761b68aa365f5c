#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "xydm/coherence.hpp"
#include "xydm/errors.hpp"

using namespace xydm;

namespace {

Eigen::Matrix4cd random_density(std::mt19937& rng) {
    std::normal_distribution<double> n(0, 1);
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = Complex(n(rng), n(rng));
    Eigen::Matrix4cd rho = a * a.adjoint();
    return rho / rho.trace().real();
}

// Random X-state built from two 2x2 PSD blocks on {0,3} and {1,2}.
Eigen::Matrix4cd random_xstate(std::mt19937& rng) {
    std::normal_distribution<double> n(0, 1);
    auto block = [&] {
        Eigen::Matrix2cd a;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a(i, j) = Complex(n(rng), n(rng));
        return Eigen::Matrix2cd(a * a.adjoint());
    };
    const Eigen::Matrix2cd outer = block(), inner = block();
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    const int o[2] = {0, 3}, in[2] = {1, 2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            m(o[i], o[j]) = outer(i, j);
            m(in[i], in[j]) = inner(i, j);
        }
    return m / m.trace().real();
}

Eigen::Matrix4cd bell() {
    Eigen::Vector4cd v(1, 0, 0, 1);
    v /= std::sqrt(2.0);
    return v * v.adjoint();
}

}  // namespace

TEST_CASE("xstate_eigenvalues: examples") {
    const auto mixed = xstate_eigenvalues(Eigen::Matrix4cd::Identity() / 4.0);
    for (double e : mixed) CHECK(e == doctest::Approx(0.25));

    auto b = xstate_eigenvalues(bell());
    std::sort(b.begin(), b.end());
    CHECK(b[3] == doctest::Approx(1.0));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(b[i]) < 1e-15);

    Eigen::Matrix4cd full = Eigen::Matrix4cd::Constant(0.25);
    CHECK_THROWS_AS(xstate_eigenvalues(full), NotXState);
}

TEST_CASE("xstate_eigenvalues agree with the general eigensolver") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Matrix4cd m = random_xstate(rng);
        REQUIRE(has_x_pattern(m));
        auto closed = xstate_eigenvalues(m);
        std::sort(closed.begin(), closed.end());
        const Eigen::Vector4d general = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(m).eigenvalues();
        for (int i = 0; i < 4; ++i) CHECK(std::abs(closed[i] - general(i)) < 1e-12);
    }
}

TEST_CASE("entropy: examples") {
    CHECK(entropy(Eigen::Matrix4cd::Identity() / 4.0) == doctest::Approx(2.0));
    CHECK(std::abs(entropy(bell())) < 1e-12);
    CHECK(shannon_entropy(Eigen::Vector2d(0.75, 0.25)) == doctest::Approx(0.811278124459133).epsilon(1e-14));
    CHECK(shannon_entropy(Eigen::Vector3d(1.0, 1e-17, -1e-17)) == 0.0);
}

TEST_CASE("entropy is unitarily invariant") {
    std::mt19937 rng(12);
    std::normal_distribution<double> n(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Matrix4cd rho = random_density(rng);
        Eigen::Matrix4cd a;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = Complex(n(rng), n(rng));
        const Eigen::Matrix4cd u = Eigen::HouseholderQR<Eigen::Matrix4cd>(a).householderQ();
        CHECK(std::abs(entropy(u * rho * u.adjoint()) - entropy(rho)) < 1e-10);
    }
}

TEST_CASE("dephase keeps the diagonal only") {
    std::mt19937 rng(13);
    const TwoSiteState s{random_density(rng), Basis::X, 3};
    const TwoSiteState d = dephase(s);
    CHECK(d.basis == Basis::X);
    CHECK(d.r == 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(d.matrix(i, j) == (i == j ? s.matrix(i, i) : Complex(0)));
    CHECK(dephase(d).matrix == d.matrix);
}

TEST_CASE("qjsd_coherence: examples") {
    const CoherenceResult diag = qjsd_coherence(TwoSiteState{Eigen::Matrix4cd::Identity() / 4.0});
    CHECK(diag.C == 0.0);

    const CoherenceResult b = qjsd_coherence(TwoSiteState{bell()});
    CHECK(b.C == doctest::Approx(0.557923045284143).epsilon(1e-12));
    CHECK(b.S_diag == doctest::Approx(1.0));

    // C^2 = S_mix - S_rho/2 - S_diag/2
    CHECK(b.C * b.C == doctest::Approx(b.S_mix - b.S_rho / 2 - b.S_diag / 2));

    SingleSiteState plus;
    plus.matrix = Eigen::Matrix2cd::Constant(0.5);
    CHECK(qjsd_coherence(plus).r == 0);
    CHECK(qjsd_coherence(plus).C > 0.0);
}

TEST_CASE("qjsd_coherence: isotropic chain below the field is polarized") {
    for (double J : {0.0, 0.3, 0.6, 0.9}) {
        for (int r : {1, 2, 4}) {
            const TwoSiteState s = build_two_site(correlator_set(r, {J, 0.0, 0.0}));
            for (Basis b : {Basis::Z}) CHECK(qjsd_coherence(rotate_basis(s, b)).C < 1e-6);
        }
    }
}

TEST_CASE("qjsd_coherence is bounded") {
    std::mt19937 rng(14);
    for (int trial = 0; trial < 500; ++trial) {
        const CoherenceResult c = qjsd_coherence(TwoSiteState{random_density(rng)});
        CHECK(c.C >= 0.0);
        CHECK(c.C <= 1.0);
    }
}

TEST_CASE("qjsd_coherence is invariant under diagonal phases and site swap") {
    std::mt19937 rng(15);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Matrix4cd rho = random_density(rng);
        const double c = qjsd_coherence(TwoSiteState{rho}).C;
        Eigen::Matrix4cd phase = Eigen::Matrix4cd::Zero();
        for (int i = 0; i < 4; ++i) phase(i, i) = std::polar(1.0, angle(rng));
        CHECK(std::abs(qjsd_coherence(TwoSiteState{phase * rho * phase.adjoint()}).C - c) < 1e-10);
        CHECK(std::abs(qjsd_coherence(TwoSiteState{swap * rho * swap}).C - c) < 1e-10);
    }
}

TEST_CASE("qjsd_coherence rejects non-states") {
    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Zero();
    // unit trace, eigenvalues 1/2 +- sqrt(5)/2; radicand about -0.061
    bad(0, 0) = bad(1, 1) = 0.5;
    bad(0, 1) = bad(1, 0) = 1.0;
    CHECK_THROWS_AS(qjsd_coherence(TwoSiteState{bad}), NumericalBreakdown);
}
