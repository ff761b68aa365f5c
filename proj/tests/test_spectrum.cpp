#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "xydm/errors.hpp"
#include "xydm/spectrum.hpp"

using namespace xydm;

namespace {

constexpr double kPi = std::numbers::pi;

double cofactor_determinant(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    if (n == 1) return m(0, 0);
    double det = 0.0;
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::MatrixXd minor(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i) {
            Eigen::Index c2 = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == col) continue;
                minor(i - 1, c2++) = m(i, j);
            }
        }
        det += (col % 2 ? -1.0 : 1.0) * m(0, col) * cofactor_determinant(minor);
    }
    return det;
}

}  // namespace

TEST_CASE("delta: worked examples") {
    CHECK(delta(0.7, {0.0, 0.3, 1.2}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(delta(0.0, {1.0, 0.5, 0.0}) == doctest::Approx(0.0));
    CHECK(delta(kPi / 2, {1.0, 0.5, 0.5}) == doctest::Approx(std::sqrt(4.25)).epsilon(1e-14));
}

TEST_CASE("delta is non-negative and continuous") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> J(-3, 3), g(-1, 1), D(-2, 2), phi(0, kPi);
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p{J(rng), g(rng), D(rng)};
        const double x = phi(rng);
        CHECK(delta(x, p) >= 0.0);
        // |d delta/d phi| <= |J| (1 + 2|D| + |gamma|)
        const double lip = std::abs(p.J) * (1 + 2 * std::abs(p.D) + std::abs(p.gamma));
        CHECK(std::abs(delta(x + 1e-7, p) - delta(x, p)) <= lip * 1e-7 + 1e-15);
    }
}

TEST_CASE("magnetization: polarized limit and fixed-rule oracle") {
    CHECK(magnetization({0.0, 0.5, 0.7}) == doctest::Approx(1.0).epsilon(1e-12));

    const ModelParams p{0.5, 0.5, 0.0};
    // composite Simpson, 1e6 panels; the integrand is smooth here (no gap roots)
    const int n = 1'000'000;
    const double h = kPi / n;
    auto f = [&](double x) {
        const double b = p.J * std::cos(x) - 1.0;
        return b / std::sqrt(b * b + p.J * p.J * p.gamma * p.gamma * std::sin(x) * std::sin(x));
    };
    double sum = f(0.0) + f(kPi);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
    const double oracle = -sum * h / 3.0 / kPi;
    INFO("oracle = " << oracle);
    CHECK(std::abs(oracle - 0.9814995920488151) < 1e-12);
    CHECK(std::abs(magnetization(p) - oracle) < 1e-10);
}

TEST_CASE("magnetization: vanishes monotonically at strong coupling") {
    const double m5 = magnetization({5.0, 0.5, 0.0});
    const double m10 = magnetization({10.0, 0.5, 0.0});
    const double m50 = magnetization({50.0, 0.5, 0.0});
    // high-precision reference values
    CHECK(m5 == doctest::Approx(0.11473807315936244).epsilon(1e-9));
    CHECK(m10 == doctest::Approx(0.05711743949867918).epsilon(1e-9));
    CHECK(m50 == doctest::Approx(0.01140764637923439).epsilon(1e-9));
    CHECK(std::abs(m50) < 0.05);
    CHECK(m5 > m10);
    CHECK(m10 > m50);
}

TEST_CASE("greens_fn: product-state limit") {
    CHECK(greens_fn(0, {0.0, 0.5, 0.3}) == doctest::Approx(2.0).epsilon(1e-12));
    for (int k : {-3, -1, 1, 2, 5}) CHECK(std::abs(greens_fn(k, {0.0, 0.5, 0.3})) < 1e-12);
}

TEST_CASE("GreensVector caches the same values as greens_fn") {
    const ModelParams p{1.3, 0.5, 0.4};
    const GreensVector g(p, 4);
    for (int k = -4; k <= 4; ++k) CHECK(g(k) == greens_fn(k, p));
    CHECK_THROWS_AS(g(5), std::out_of_range);
}

TEST_CASE("correlator_set: structure and product state") {
    const ModelParams p{1.7, 0.5, 0.2};
    const GreensVector g(p, 1);
    const CorrelatorSet c = correlator_set(1, p);
    CHECK(c.xx == doctest::Approx(0.5 * g(-1)).epsilon(1e-14));
    CHECK(c.yy == doctest::Approx(0.5 * g(1)).epsilon(1e-14));

    const CorrelatorSet product = correlator_set(1, {0.0, 0.5, 0.0});
    CHECK(std::abs(product.xx) < 1e-12);
    CHECK(std::abs(product.yy) < 1e-12);
    CHECK(product.zz == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(product.m_z == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(correlator_set(0, p), ValidationError);
    CHECK_THROWS_AS(correlator_set(kMaxSeparation + 1, p), ValidationError);
}

TEST_CASE("as-printed conventions do not normalize the product state") {
    const CorrelatorSet c = correlator_set(1, {0.0, 0.5, 0.0}, Calibration::as_printed());
    const double u_plus = 0.25 + c.m_z / 2 + c.zz / 4;
    CHECK(u_plus == doctest::Approx(0.25 + 0.5 + 1.0 / 16));
}

TEST_CASE("isotropic chain: xx(r) equals yy(r)") {
    for (double J : {0.4, 1.3, 2.2}) {
        for (double D : {0.0, 0.5, 1.0}) {
            const ModelParams p{J, 0.0, D};
            const GreensVector g(p, kMaxSeparation);
            const double m = magnetization(p);
            for (int r = 1; r <= kMaxSeparation; ++r) {
                const CorrelatorSet c = correlator_set(r, g, m);
                CHECK(std::abs(c.xx - c.yy) < 1e-9);
            }
        }
    }
}

TEST_CASE("calibrated correlators lie in [-1, 1]") {
    for (double gamma : {-0.5, 0.0, 0.5, 1.0}) {
        for (double D : {0.0, 0.5, 1.0}) {
            for (double J : {0.0, 0.5, 0.99, 1.0, 1.5, 2.5}) {
                const ModelParams p{J, gamma, D};
                const GreensVector g(p, 5);
                const double m = magnetization(p);
                for (int r : {1, 2, 5}) {
                    const CorrelatorSet c = correlator_set(r, g, m);
                    for (double v : {c.m_z, c.xx, c.yy, c.zz}) {
                        CHECK(v >= -1.0 - 1e-9);
                        CHECK(v <= 1.0 + 1e-9);
                    }
                }
            }
        }
    }
}

TEST_CASE("LU determinant agrees with cofactor expansion") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            Eigen::MatrixXd m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = u(rng);
            CHECK(std::abs(toeplitz_determinant(m) - cofactor_determinant(m)) < 1e-12);
        }
    }
}

TEST_CASE("toeplitz_matrix layout matches the correlator determinants") {
    const ModelParams p{1.4, 0.5, 0.3};
    const GreensVector g(p, 3);
    const Eigen::MatrixXd xx = toeplitz_matrix(g, 3, -1, 1.0);
    // first row G_-1, G_-2, G_-3; first column G_-1, G_0, G_1
    CHECK(xx(0, 0) == g(-1));
    CHECK(xx(0, 2) == g(-3));
    CHECK(xx(2, 0) == g(1));
    const Eigen::MatrixXd yy = toeplitz_matrix(g, 3, +1, 1.0);
    CHECK(yy(0, 0) == g(1));
    CHECK(yy(0, 1) == g(0));
    CHECK(yy(2, 0) == g(3));
}

TEST_CASE("ising specialization: worked examples") {
    std::vector<double> phis;
    for (int i = 0; i < 100; ++i) phis.push_back(kPi * (i + 0.5) / 100);

    const auto a = ising_specialization_check({1.5, 1.0, 0.5}, {1.0}, {});
    CHECK(a.max_delta_discrepancy < 1e-12);
    CHECK(ising_specialization_check({0.5, 1.0, 0.0}, phis, {2}).max() < 1e-10);
    CHECK(ising_specialization_check({2.0, 1.0, 1.0}, phis, {-3}).max() < 1e-10);
    CHECK_THROWS_AS(ising_specialization_check({2.0, 0.5, 1.0}, phis, {1}), ValidationError);
}

TEST_CASE("ModelParams validation") {
    CHECK_THROWS_AS(magnetization({1.0, 1.5, 0.0}), ValidationError);
    CHECK_THROWS_AS(magnetization({NAN, 0.5, 0.0}), ValidationError);
}
