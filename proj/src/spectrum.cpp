#include "xydm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "xydm/errors.hpp"

namespace xydm {

namespace {

constexpr double kPi = std::numbers::pi;

double bracket(double phi, const ModelParams& p) {
    return p.J * (std::cos(phi) - 2.0 * p.D * std::sin(phi)) - 1.0;
}

// bracket / delta, with the 0/0 point (measure zero) sent to 0
double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

double ising_delta(double phi, const ModelParams& p) {
    const double s = p.J * std::sin(phi);
    const double b = p.J * (std::cos(phi) - 2.0 * p.D * std::sin(phi)) - 1.0;
    return std::sqrt(b * b + s * s);
}

// Transverse-Ising form of G_k, written as its two separate integrals.
double ising_greens(int k, const ModelParams& p, const IntegrationSpec& spec) {
    const double first = integrate(
        [&](double phi) {
            return ratio(std::cos(phi * k), ising_delta(phi, p)) *
                   (p.J * (std::cos(phi) - 2.0 * p.D * std::sin(phi)) - 1.0);
        },
        spec);
    const double second = integrate(
        [&](double phi) {
            return ratio(2.0 * p.J * std::sin(phi * k), ising_delta(phi, p)) * std::sin(phi);
        },
        spec);
    return -2.0 / kPi * first + second / kPi;
}

}  // namespace

double delta(double phi, const ModelParams& params) {
    const double b = bracket(phi, params);
    const double a = params.J * params.gamma * std::sin(phi);
    return std::sqrt(b * b + a * a);
}

double magnetization(const ModelParams& params, const IntegrationSpec& base) {
    params.validate();
    const IntegrationSpec spec = spec_for(params, base);
    const double integral =
        integrate([&](double phi) { return ratio(bracket(phi, params), delta(phi, params)); }, spec);
    return -integral / kPi;
}

double greens_fn(int k, const ModelParams& params, const IntegrationSpec& base) {
    params.validate();
    const IntegrationSpec spec = spec_for(params, base);
    const double J = params.J;
    const double g = params.gamma;
    const double integral = integrate(
        [&](double phi) {
            const double d = delta(phi, params);
            const double num = -2.0 * std::cos(phi * k) * bracket(phi, params) +
                               2.0 * g * J * std::sin(phi * k) * std::sin(phi);
            return ratio(num, d);
        },
        spec);
    return integral / kPi;
}

GreensVector::GreensVector(const ModelParams& params, int k_max, const IntegrationSpec& base)
    : k_max_(k_max) {
    if (k_max < 0) throw ValidationError("k_max must be non-negative");
    values_.reserve(2 * k_max + 1);
    for (int k = -k_max; k <= k_max; ++k) values_.push_back(greens_fn(k, params, base));
}

double GreensVector::operator()(int k) const {
    if (k < -k_max_ || k > k_max_) {
        throw std::out_of_range("G_k requested for k = " + std::to_string(k) + " beyond k_max = " +
                                std::to_string(k_max_));
    }
    return values_[static_cast<std::size_t>(k + k_max_)];
}

double toeplitz_determinant(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw ValidationError("determinant of a non-square matrix");
    if (m.rows() == 0) return 1.0;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

Eigen::MatrixXd toeplitz_matrix(const GreensVector& greens, int r, int offset, double scale) {
    Eigen::MatrixXd t(r, r);
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) t(a, b) = scale * greens(offset + (a - b));
    }
    return t;
}

CorrelatorSet correlator_set(int r, const GreensVector& greens, double raw_magnetization,
                             const Calibration& cal) {
    if (r < 1 || r > kMaxSeparation) {
        throw ValidationError("separation r must be in [1, " + std::to_string(kMaxSeparation) +
                              "], got " + std::to_string(r));
    }
    if (greens.k_max() < r) throw ValidationError("GreensVector too short for this separation");

    CorrelatorSet c;
    c.r = r;
    c.m_z = cal.magnetization_scale * raw_magnetization;
    c.xx = toeplitz_determinant(toeplitz_matrix(greens, r, -1, cal.greens_scale));
    c.yy = toeplitz_determinant(toeplitz_matrix(greens, r, +1, cal.greens_scale));
    const double g_plus = cal.greens_scale * greens(r);
    const double g_minus = cal.greens_scale * greens(-r);
    c.zz = cal.zz_scale * (c.m_z * c.m_z - g_plus * g_minus);
    return c;
}

CorrelatorSet correlator_set(int r, const ModelParams& params, const Calibration& cal,
                             const IntegrationSpec& base) {
    if (r < 1 || r > kMaxSeparation) {
        throw ValidationError("separation r must be in [1, " + std::to_string(kMaxSeparation) + "]");
    }
    return correlator_set(r, GreensVector(params, r, base), magnetization(params, base), cal);
}

double IsingCheck::max() const { return std::max(max_delta_discrepancy, max_greens_discrepancy); }

IsingCheck ising_specialization_check(const ModelParams& params, const std::vector<double>& phis,
                                      const std::vector<int>& ks, const IntegrationSpec& base) {
    params.validate();
    if (params.gamma != 1.0) throw ValidationError("Ising specialization requires gamma = 1");

    IsingCheck out;
    for (double phi : phis) {
        out.max_delta_discrepancy = std::max(out.max_delta_discrepancy,
                                             std::abs(delta(phi, params) - ising_delta(phi, params)));
    }
    const IntegrationSpec spec = spec_for(params, base);
    for (int k : ks) {
        out.max_greens_discrepancy =
            std::max(out.max_greens_discrepancy,
                     std::abs(greens_fn(k, params, base) - ising_greens(k, params, spec)));
    }
    return out;
}

}  // namespace xydm
