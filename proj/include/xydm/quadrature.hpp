#pragma once

#include <functional>
#include <vector>

#include "xydm/model.hpp"

namespace xydm {

struct IntegrationSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_subdivisions = 2000;
    /// Interior split points, strictly increasing, inside (0, pi).
    std::vector<double> breakpoints;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  ///< sum of the per-panel Gauss/Kronrod discrepancies
    int evaluations = 0;
};

/// Integrates f over [0, pi].
///
/// Each sub-interval between consecutive breakpoints is integrated on its own by
/// globally adaptive 7/15-point Gauss-Kronrod bisection and the pieces are summed.
/// The rule is open: f is never evaluated at a breakpoint or at 0 or pi, so
/// integrands with a removable 0/0 there are fine.
///
/// Throws NonConvergence when the total error estimate is still above
/// max(abs_tol, rel_tol * |value|) after max_subdivisions panels.
QuadratureResult integrate_with_error(const std::function<double(double)>& f,
                                      const IntegrationSpec& spec);

inline double integrate(const std::function<double(double)>& f, const IntegrationSpec& spec) {
    return integrate_with_error(f, spec).value;
}

/// All phi in [0, pi] with J (cos phi - 2 D sin phi) = 1, ascending.
/// These are the points where the dispersion bracket changes sign.
std::vector<double> gap_roots(const ModelParams& params);

/// gap_roots() with the endpoints dropped, ready to use as breakpoints.
IntegrationSpec spec_for(const ModelParams& params, IntegrationSpec base = {});

}  // namespace xydm
