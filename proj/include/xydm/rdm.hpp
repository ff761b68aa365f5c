#pragma once

#include <complex>

#include <Eigen/Dense>

#include "xydm/model.hpp"
#include "xydm/spectrum.hpp"

namespace xydm {

using Complex = std::complex<double>;

/// Two-site reduced density matrix, ordered |s_i s_{i+r}> with s = up (index 0)
/// or down (index 1) along the basis axis.
struct TwoSiteState {
    Eigen::Matrix4cd matrix = Eigen::Matrix4cd::Zero();
    Basis basis = Basis::Z;
    int r = 1;
};

struct SingleSiteState {
    Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Zero();
    Basis basis = Basis::Z;
};

/// Assembles the X-state from correlators:
///   u+- = (1 +- 2 m_z + zz)/4 on the corners, w = (1 - zz)/4 in the middle block,
///   x+ = (xx + yy)/4 at (2,3), x- = (xx - yy)/4 at (1,4).
/// Throws InvalidState if the trace is off by more than 1e-8 or an eigenvalue
/// is below -1e-8.
TwoSiteState build_two_site(const CorrelatorSet& c);

/// Single-qubit unitary whose rows are the target-axis eigenvectors <+|, <-|
/// written in the sigma^z basis, so a Z-basis matrix becomes u rho u^dagger.
/// Z is the identity, X the Hadamard, Y uses |+-y> = (|0> +- i|1>)/sqrt2.
Eigen::Matrix2cd basis_unitary(Basis target);

TwoSiteState rotate_basis(const TwoSiteState& state, Basis target);
SingleSiteState rotate_basis(const SingleSiteState& state, Basis target);

/// Partial trace over the second site.
SingleSiteState single_site(const TwoSiteState& state);

/// Hermiticity, unit trace and positivity checks at the given tolerances.
bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);
double min_eigenvalue(const Eigen::MatrixXcd& m);

}  // namespace xydm
