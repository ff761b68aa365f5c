#pragma once

#include <array>

#include <Eigen/Dense>

#include "xydm/model.hpp"
#include "xydm/rdm.hpp"

namespace xydm {

/// Square-root quantum Jensen-Shannon coherence and the entropies behind it
/// (all in bits). C^2 = S_mix - S_rho/2 - S_diag/2.
struct CoherenceResult {
    double C = 0.0;
    double S_rho = 0.0;
    double S_diag = 0.0;
    double S_mix = 0.0;
    Basis basis = Basis::Z;
    int r = 1;  ///< 0 for a single-site state
};

/// True when every entry off the diagonal and anti-diagonal is below tol.
bool has_x_pattern(const Eigen::Matrix4cd& m, double tol = 1e-12);

/// Closed-form eigenvalues of an X-state, descending within each block:
/// {outer+, outer-, inner+, inner-}. Throws NotXState if the pattern fails.
std::array<double, 4> xstate_eigenvalues(const Eigen::Matrix4cd& m);

/// -sum p log2 p; entries below 1e-12 (including negatives) count as zero.
double shannon_entropy(const Eigen::VectorXd& probabilities);
/// von Neumann entropy in bits.
double entropy(const Eigen::MatrixXcd& rho);

TwoSiteState dephase(const TwoSiteState& state);
SingleSiteState dephase(const SingleSiteState& state);

CoherenceResult qjsd_coherence(const TwoSiteState& state);
CoherenceResult qjsd_coherence(const SingleSiteState& state);

}  // namespace xydm
