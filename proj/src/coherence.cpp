#include "xydm/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "xydm/errors.hpp"

namespace xydm {

namespace {

// Eigenvalues below this are quadrature/rounding noise and count as zero.
constexpr double kClampWindow = 1e-12;

std::array<double, 2> block_eigenvalues(double a, double d, Complex off) {
    // mean +- radius does not round back to a, d; keep diagonal blocks exact
    if (off == Complex(0.0)) return {std::max(a, d), std::min(a, d)};
    const double mean = 0.5 * (a + d);
    const double radius = 0.5 * std::sqrt((a - d) * (a - d) + 4.0 * std::norm(off));
    return {mean + radius, mean - radius};
}

double entropy_of(const std::array<double, 4>& eigenvalues) {
    return shannon_entropy(Eigen::Map<const Eigen::Vector4d>(eigenvalues.data()));
}

CoherenceResult finish(double s_rho, double s_diag, double s_mix) {
    const double radicand = s_mix - 0.5 * s_rho - 0.5 * s_diag;
    if (radicand < -1e-12) {
        throw NumericalBreakdown("negative Jensen-Shannon radicand " + std::to_string(radicand));
    }
    CoherenceResult out;
    out.C = std::sqrt(std::max(0.0, radicand));
    out.S_rho = s_rho;
    out.S_diag = s_diag;
    out.S_mix = s_mix;
    return out;
}

}  // namespace

bool has_x_pattern(const Eigen::Matrix4cd& m, double tol) {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j || i + j == 3) continue;
            if (std::abs(m(i, j)) > tol) return false;
        }
    }
    return true;
}

std::array<double, 4> xstate_eigenvalues(const Eigen::Matrix4cd& m) {
    if (!has_x_pattern(m)) throw NotXState("matrix has entries off the X pattern");
    const auto outer = block_eigenvalues(m(0, 0).real(), m(3, 3).real(), m(0, 3));
    const auto inner = block_eigenvalues(m(1, 1).real(), m(2, 2).real(), m(1, 2));
    return {outer[0], outer[1], inner[0], inner[1]};
}

double shannon_entropy(const Eigen::VectorXd& probabilities) {
    // Summed in sorted order so a permuted spectrum gives the identical value.
    std::vector<double> p(probabilities.begin(), probabilities.end());
    std::sort(p.begin(), p.end());
    double s = 0.0;
    for (double x : p) {
        if (x > kClampWindow) s -= x * std::log2(x);
    }
    return s;
}

double entropy(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    return shannon_entropy(solver.eigenvalues());
}

TwoSiteState dephase(const TwoSiteState& state) {
    TwoSiteState out = state;
    out.matrix = state.matrix.diagonal().asDiagonal();
    return out;
}

SingleSiteState dephase(const SingleSiteState& state) {
    SingleSiteState out = state;
    out.matrix = state.matrix.diagonal().asDiagonal();
    return out;
}

CoherenceResult qjsd_coherence(const TwoSiteState& state) {
    const Eigen::Matrix4cd& rho = state.matrix;
    const Eigen::Matrix4cd diag = dephase(state).matrix;
    const Eigen::Matrix4cd mix = 0.5 * (rho + diag);
    const double s_diag = shannon_entropy(diag.diagonal().real());

    CoherenceResult out;
    if (has_x_pattern(rho)) {
        out = finish(entropy_of(xstate_eigenvalues(rho)), s_diag, entropy_of(xstate_eigenvalues(mix)));
    } else {
        out = finish(entropy(rho), s_diag, entropy(mix));
    }
    out.basis = state.basis;
    out.r = state.r;
    return out;
}

CoherenceResult qjsd_coherence(const SingleSiteState& state) {
    const Eigen::Matrix2cd diag = dephase(state).matrix;
    CoherenceResult out = finish(entropy(state.matrix), shannon_entropy(diag.diagonal().real()),
                                 entropy(0.5 * (state.matrix + diag)));
    out.basis = state.basis;
    out.r = 0;
    return out;
}

}  // namespace xydm
