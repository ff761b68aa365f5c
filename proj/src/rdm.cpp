#include "xydm/rdm.hpp"

#include <cmath>
#include <string>

#include "xydm/errors.hpp"

namespace xydm {

namespace {

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
    return out;
}

// Maps a state expressed in `from` to the same state expressed in `to`.
Eigen::Matrix2cd change_of_basis(Basis from, Basis to) {
    return basis_unitary(to) * basis_unitary(from).adjoint();
}

}  // namespace

TwoSiteState build_two_site(const CorrelatorSet& c) {
    const double u_plus = (1.0 + 2.0 * c.m_z + c.zz) / 4.0;
    const double u_minus = (1.0 - 2.0 * c.m_z + c.zz) / 4.0;
    const double w = (1.0 - c.zz) / 4.0;
    const double x_plus = (c.xx + c.yy) / 4.0;
    const double x_minus = (c.xx - c.yy) / 4.0;

    TwoSiteState s;
    s.basis = Basis::Z;
    s.r = c.r;
    s.matrix(0, 0) = u_plus;
    s.matrix(1, 1) = w;
    s.matrix(2, 2) = w;
    s.matrix(3, 3) = u_minus;
    s.matrix(1, 2) = s.matrix(2, 1) = x_plus;
    s.matrix(0, 3) = s.matrix(3, 0) = x_minus;

    const double trace = s.matrix.trace().real();
    if (std::abs(trace - 1.0) > 1e-8) {
        throw InvalidState("two-site state has trace " + std::to_string(trace));
    }
    // X-state blocks: {u+, u-; x-} and {w, w; x+}
    const double outer = 0.5 * (u_plus + u_minus) -
                         0.5 * std::sqrt((u_plus - u_minus) * (u_plus - u_minus) + 4 * x_minus * x_minus);
    const double inner = w - std::abs(x_plus);
    if (std::min(outer, inner) < -1e-8) {
        throw InvalidState("two-site state is not positive semidefinite (eigenvalue " +
                           std::to_string(std::min(outer, inner)) + ")");
    }
    return s;
}

Eigen::Matrix2cd basis_unitary(Basis target) {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd u;
    switch (target) {
        case Basis::Z:
            u.setIdentity();
            break;
        case Basis::X:
            u << h, h, h, -h;
            break;
        case Basis::Y:
            u << h, -i * h, h, i * h;
            break;
    }
    return u;
}

TwoSiteState rotate_basis(const TwoSiteState& state, Basis target) {
    if (state.basis == target) return state;
    const Eigen::Matrix2cd u = change_of_basis(state.basis, target);
    const Eigen::Matrix4cd uu = kron(u, u);
    TwoSiteState out = state;
    out.matrix = uu * state.matrix * uu.adjoint();
    out.basis = target;
    return out;
}

SingleSiteState rotate_basis(const SingleSiteState& state, Basis target) {
    if (state.basis == target) return state;
    const Eigen::Matrix2cd u = change_of_basis(state.basis, target);
    SingleSiteState out = state;
    out.matrix = u * state.matrix * u.adjoint();
    out.basis = target;
    return out;
}

SingleSiteState single_site(const TwoSiteState& state) {
    SingleSiteState out;
    out.basis = state.basis;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            out.matrix(a, b) = state.matrix(2 * a, 2 * b) + state.matrix(2 * a + 1, 2 * b + 1);
        }
    }
    return out;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace xydm
