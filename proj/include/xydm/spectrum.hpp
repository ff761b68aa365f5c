#pragma once

#include <vector>

#include <Eigen/Dense>

#include "xydm/model.hpp"
#include "xydm/quadrature.hpp"

namespace xydm {

/// Largest site separation supported by the correlator code.
inline constexpr int kMaxSeparation = 10;

/// Scale factors that map the raw dispersion integrals onto Pauli-normalized
/// expectation values.
///
///   G~_k = greens_scale * G_k                  (fills the Toeplitz matrices)
///   m_z  = magnetization_scale * m_raw
///   zz   = zz_scale * (m_z^2 - G~_r G~_-r)
struct Calibration {
    double greens_scale = 0.5;
    double magnetization_scale = 1.0;
    double zz_scale = 1.0;

    /// Constants fixed against exact diagonalization and the J = 0 product state.
    static constexpr Calibration frozen() { return {0.5, 1.0, 1.0}; }
    /// The raw conventions of the closed-form expressions, before calibration.
    /// Kept for comparison; it does not give a unit-normalized product state.
    static constexpr Calibration as_printed() { return {1.0, 1.0, 0.25}; }
};

struct CorrelatorSet {
    int r = 1;
    double m_z = 0.0;
    double xx = 0.0;
    double yy = 0.0;
    double zz = 0.0;
};

/// Raw G_k for k in [-k_max, k_max], computed once per parameter point.
class GreensVector {
public:
    GreensVector(const ModelParams& params, int k_max, const IntegrationSpec& base = {});

    int k_max() const { return k_max_; }
    /// Throws std::out_of_range if |k| > k_max.
    double operator()(int k) const;

private:
    int k_max_;
    std::vector<double> values_;
};

/// Quasiparticle dispersion sqrt([J(cos phi - 2D sin phi) - 1]^2 + J^2 gamma^2 sin^2 phi).
double delta(double phi, const ModelParams& params);

/// <sigma^z> before calibration.
double magnetization(const ModelParams& params, const IntegrationSpec& base = {});

/// Raw G_k, the coefficient that fills the Toeplitz diagonals.
double greens_fn(int k, const ModelParams& params, const IntegrationSpec& base = {});

/// Determinant via LU with partial pivoting.
double toeplitz_determinant(const Eigen::MatrixXd& m);

/// r x r matrix with entries G~_{offset + (a - b)}; offset -1 gives the xx
/// correlator, +1 the yy correlator.
Eigen::MatrixXd toeplitz_matrix(const GreensVector& greens, int r, int offset, double scale);

/// Pauli-normalized m_z, xx, yy, zz at separation r (1 <= r <= kMaxSeparation).
/// The first overload reuses a precomputed GreensVector and raw magnetization.
CorrelatorSet correlator_set(int r, const GreensVector& greens, double raw_magnetization,
                             const Calibration& cal = Calibration::frozen());
CorrelatorSet correlator_set(int r, const ModelParams& params,
                             const Calibration& cal = Calibration::frozen(),
                             const IntegrationSpec& base = {});

struct IsingCheck {
    double max_delta_discrepancy = 0.0;
    double max_greens_discrepancy = 0.0;
    double max() const;
};

/// Compares the general dispersion and G_k at gamma = 1 against the dedicated
/// transverse-Ising expressions over the given phi and k grids.
IsingCheck ising_specialization_check(const ModelParams& params, const std::vector<double>& phis,
                                      const std::vector<int>& ks, const IntegrationSpec& base = {});

}  // namespace xydm
