#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xydm/model.hpp"
#include "xydm/quadrature.hpp"
#include "xydm/spectrum.hpp"

namespace xydm {

struct SweepSpec {
    double gamma = 0.5;
    std::vector<double> D_values{0.0};
    double J_min = 0.0;
    double J_max = 2.5;
    int J_steps = 201;
    std::vector<int> r_values{1};
    std::vector<Basis> bases{Basis::Z};
    IntegrationSpec quadrature{};
    Calibration calibration = Calibration::frozen();

    void validate() const;
    /// Uniform grid, J_i = J_min + (J_max - J_min) * i / (J_steps - 1).
    std::vector<double> j_grid() const;
    double j_spacing() const;
};

struct SweepRow {
    double J = 0.0;
    double D = 0.0;
    double gamma = 0.0;
    int r = 1;
    Basis basis = Basis::Z;
    double C = 0.0;
    std::optional<double> dC_dJ;    ///< absent at grid edges and next to failed rows
    std::optional<double> d2C_dJ2;
    std::optional<std::string> error;  ///< set when the point could not be evaluated

    bool valid() const { return !error.has_value(); }
    bool operator==(const SweepRow&) const = default;
};

/// Rows in canonical order: (D, r, basis, J) ascending.
struct SweepTable {
    std::vector<SweepRow> rows;

    std::vector<SweepRow> slice(double D, int r, Basis basis) const;
    bool operator==(const SweepTable&) const = default;
};

struct FiniteDifferences {
    std::vector<std::optional<double>> first;
    std::vector<std::optional<double>> second;
};

/// Central first and second differences on a uniform grid; edge entries and
/// entries whose stencil touches a missing value are empty.
FiniteDifferences central_differences(std::span<const std::optional<double>> values, double h);

/// Worker count for sweeps: XYDM_THREADS if set to a positive integer, else the
/// hardware concurrency.
int default_thread_count();

/// Evaluates the coherence on every grid point. Points are independent and may
/// run on several threads; the table is the same for any thread count.
/// A point whose evaluation throws becomes an error row; the sweep continues.
SweepTable sweep(const SweepSpec& spec, int threads = default_thread_count());

struct CriticalPointEstimate {
    double J_star = 0.0;
    double sharpness = 0.0;    ///< peak |d2C/dJ2| over the slice median of |d2C/dJ2|
    double signed_peak = 0.0;  ///< d2C/dJ2 at J_star
    Basis basis = Basis::Z;
    double D = 0.0;
    int r = 1;
};

/// Locates the extremum of |d2C/dJ2| in one (D, r, basis) slice.
/// Throws ValidationError with fewer than 5 valid interior points and NoSignal
/// when the peak does not exceed three times the median.
CriticalPointEstimate detect_critical_point(const SweepTable& table, double D, int r, Basis basis);

struct OrderingReport {
    std::vector<CriticalPointEstimate> sorted;  ///< by the ordering key, ascending
    bool strictly_decreasing = true;
    bool strictly_increasing = true;
    std::optional<std::string> warning;
};

/// Orders estimates by D and reports the monotonicity of their sharpness.
OrderingReport sharpness_vs_D(std::vector<CriticalPointEstimate> estimates);
/// Same, ordered by separation r.
OrderingReport sharpness_vs_r(std::vector<CriticalPointEstimate> estimates);

}  // namespace xydm
