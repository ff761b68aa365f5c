#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "xydm/coherence.hpp"
#include "xydm/model.hpp"
#include "xydm/rdm.hpp"
#include "xydm/spectrum.hpp"

namespace xydm {

/// Periodic chain of N spins (even, 4 <= N <= 14).
struct FiniteChainSpec {
    int N = 8;
    ModelParams params{};
    double degeneracy_tol = 1e-8;

    void validate() const;
    std::size_t dimension() const { return std::size_t{1} << N; }
};

using SparseHamiltonian = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// H = sum_i (J/2)[(1+g) X_i X_{i+1} + (1-g) Y_i Y_{i+1} + D (X_i Y_{i+1} - Y_i X_{i+1})] - Z_i
/// with site N+1 = site 1. Site i is bit i of the basis index; bit value 0 is
/// spin up (Z = +1).
///
/// The exchange carries a factor 1/2 relative to writing the bracket with bare
/// Pauli matrices. That is the normalization under which the finite chain has
/// its critical point at J = 1, the same point where the closed-form
/// dispersion closes its gap.
SparseHamiltonian build_hamiltonian(const FiniteChainSpec& spec);

struct EigenSolverOptions {
    int krylov_dim = 120;     ///< Lanczos vectors per restart cycle
    int max_restarts = 60;
    double residual_tol = 1e-10;  ///< on ||H v - E v||
    std::uint64_t seed = 0x5eed;
    int dense_max_N = 10;     ///< full diagonalization up to this size
};

struct GroundState {
    double energy = 0.0;
    /// Orthonormal ground multiplet; one vector unless flagged degenerate.
    std::vector<Eigen::VectorXcd> multiplet;
    /// Distance from the ground level to the next distinct level.
    double gap = 0.0;
    bool degenerate = false;

    const Eigen::VectorXcd& vector() const { return multiplet.front(); }
};

/// Lowest eigenpair(s). Throws ConvergenceFailure if Lanczos stalls.
GroundState ground_state(const FiniteChainSpec& spec, const EigenSolverOptions& opts = {});

/// All eigenvalues, ascending (dense; N <= 10).
Eigen::VectorXd full_spectrum(const FiniteChainSpec& spec);

/// <H^2> - <H>^2 for a normalized state.
double energy_variance(const SparseHamiltonian& h, const Eigen::VectorXcd& state);

/// Reduced density matrix of sites (i, i + r mod N), Z basis.
TwoSiteState oracle_two_site_rdm(const Eigen::VectorXcd& state, int N, int i, int r);
/// Translation average of oracle_two_site_rdm over i.
TwoSiteState oracle_two_site_rdm(const Eigen::VectorXcd& state, int N, int r);

/// Pauli expectations m_z, xx, yy, zz from the translation-averaged RDM.
CorrelatorSet oracle_correlators(const Eigen::VectorXcd& state, int N, int r);
CorrelatorSet correlators_from_rdm(const TwoSiteState& rho);

CoherenceResult oracle_coherence(const Eigen::VectorXcd& state, int N, int r, Basis basis);

}  // namespace xydm
