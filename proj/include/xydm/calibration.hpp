#pragma once

#include <vector>

#include "xydm/ed_oracle.hpp"
#include "xydm/spectrum.hpp"

namespace xydm {

/// One parameter point used to pin the calibration against exact diagonalization.
struct CalibrationAnchor {
    ModelParams params;
    int N = 14;
    int r = 1;
};

struct AnchorResidual {
    CalibrationAnchor anchor;
    CorrelatorSet thermodynamic;
    CorrelatorSet oracle;
    bool degenerate = false;
    double max_deviation() const;
};

struct CalibrationFit {
    Calibration fitted;
    std::vector<AnchorResidual> residuals;  ///< evaluated with `fitted`
    bool trace_ok = true;
    bool psd_ok = true;
    bool product_state_ok = true;  ///< J = 0 gives diag(1, 0, 0, 0) to within 1e-2
};

/// Default anchors: N = 14, J in {0.5, 2}, gamma in {0.5, 1}, D in {0, 0.5}.
std::vector<CalibrationAnchor> default_anchors();

/// Least-squares scale factors from the anchors with D = 0 (degenerate anchors
/// skipped), then residuals at every anchor and the trace/PSD/product-state checks.
///
///   greens_scale: xx = s G_-1 and yy = s G_1 at r = 1
///   magnetization_scale: m_z
///   zz_scale: zz = z (m^2 - s^2 G_r G_-r)
CalibrationFit fit_calibration(const std::vector<CalibrationAnchor>& anchors,
                               const EigenSolverOptions& opts = {});

}  // namespace xydm
