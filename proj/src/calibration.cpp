#include "xydm/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "xydm/errors.hpp"
#include "xydm/rdm.hpp"

namespace xydm {

double AnchorResidual::max_deviation() const {
    return std::max({std::abs(thermodynamic.m_z - oracle.m_z), std::abs(thermodynamic.xx - oracle.xx),
                     std::abs(thermodynamic.yy - oracle.yy), std::abs(thermodynamic.zz - oracle.zz)});
}

std::vector<CalibrationAnchor> default_anchors() {
    std::vector<CalibrationAnchor> out;
    for (double gamma : {0.5, 1.0}) {
        for (double J : {0.5, 2.0}) {
            for (double D : {0.0, 0.5}) out.push_back({{J, gamma, D}, 14, 1});
        }
    }
    return out;
}

CalibrationFit fit_calibration(const std::vector<CalibrationAnchor>& anchors, const EigenSolverOptions& opts) {
    struct Sample {
        CalibrationAnchor anchor;
        double raw_m;
        GreensVector greens;
        CorrelatorSet oracle;
        bool degenerate;
    };
    std::vector<Sample> samples;
    for (const auto& a : anchors) {
        const GroundState gs = ground_state({a.N, a.params}, opts);
        samples.push_back({a, magnetization(a.params), GreensVector(a.params, a.r),
                           oracle_correlators(gs.vector(), a.N, a.r), gs.degenerate});
    }

    double gg = 0.0, gx = 0.0, mm = 0.0, mo = 0.0;
    int used = 0;
    for (const auto& s : samples) {
        if (s.degenerate || s.anchor.params.D != 0.0) continue;
        ++used;
        const int r = s.anchor.r;
        // at r = 1 the determinants are the single entries G_-1, G_1
        if (r == 1) {
            gg += s.greens(-1) * s.greens(-1) + s.greens(1) * s.greens(1);
            gx += s.greens(-1) * s.oracle.xx + s.greens(1) * s.oracle.yy;
        }
        mm += s.raw_m * s.raw_m;
        mo += s.raw_m * s.oracle.m_z;
    }
    if (used == 0 || gg == 0.0 || mm == 0.0) throw ValidationError("no usable D = 0 calibration anchors at r = 1");

    CalibrationFit fit;
    fit.fitted.greens_scale = gx / gg;
    fit.fitted.magnetization_scale = mo / mm;

    double bb = 0.0, bz = 0.0;
    for (const auto& s : samples) {
        if (s.degenerate || s.anchor.params.D != 0.0) continue;
        const double m = fit.fitted.magnetization_scale * s.raw_m;
        const double sg = fit.fitted.greens_scale;
        const double base = m * m - sg * sg * s.greens(s.anchor.r) * s.greens(-s.anchor.r);
        bb += base * base;
        bz += base * s.oracle.zz;
    }
    fit.fitted.zz_scale = bz / bb;

    for (const auto& s : samples) {
        AnchorResidual res;
        res.anchor = s.anchor;
        res.oracle = s.oracle;
        res.degenerate = s.degenerate;
        res.thermodynamic = correlator_set(s.anchor.r, s.greens, s.raw_m, fit.fitted);
        fit.residuals.push_back(res);
        try {
            build_two_site(res.thermodynamic);
        } catch (const InvalidState&) {
            fit.trace_ok = fit.psd_ok = false;
        }
    }

    const ModelParams product{0.0, 0.5, 0.0};
    const CorrelatorSet c0 = correlator_set(1, product, fit.fitted);
    const double u_plus = (1.0 + 2.0 * c0.m_z + c0.zz) / 4.0;
    // the fitted scales carry finite-size error, so hold them to the confirmation tolerance
    fit.product_state_ok = std::abs(u_plus - 1.0) < 1e-2;
    return fit;
}

}  // namespace xydm
