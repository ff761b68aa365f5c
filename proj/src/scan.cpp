#include "xydm/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "xydm/coherence.hpp"
#include "xydm/errors.hpp"
#include "xydm/rdm.hpp"

namespace xydm {

void SweepSpec::validate() const {
    ModelParams{0.0, gamma, 0.0}.validate();
    if (!(J_min < J_max)) throw ValidationError("J_min must be below J_max");
    if (!std::isfinite(J_min) || !std::isfinite(J_max)) throw ValidationError("J range must be finite");
    if (J_steps < 3) throw ValidationError("J_steps must be at least 3");
    if (D_values.empty()) throw ValidationError("D grid is empty");
    if (r_values.empty()) throw ValidationError("r list is empty");
    if (bases.empty()) throw ValidationError("basis list is empty");
    for (double D : D_values) {
        if (!std::isfinite(D)) throw ValidationError("D values must be finite");
    }
    for (int r : r_values) {
        if (r < 1 || r > kMaxSeparation) {
            throw ValidationError("r values must lie in [1, " + std::to_string(kMaxSeparation) + "]");
        }
    }
    quadrature.validate();
}

std::vector<double> SweepSpec::j_grid() const {
    std::vector<double> grid(static_cast<std::size_t>(J_steps));
    const double span = J_max - J_min;
    for (int i = 0; i < J_steps; ++i) grid[i] = J_min + span * i / (J_steps - 1);
    return grid;
}

double SweepSpec::j_spacing() const { return (J_max - J_min) / (J_steps - 1); }

std::vector<SweepRow> SweepTable::slice(double D, int r, Basis basis) const {
    std::vector<SweepRow> out;
    for (const auto& row : rows) {
        if (row.D == D && row.r == r && row.basis == basis) out.push_back(row);
    }
    return out;
}

FiniteDifferences central_differences(std::span<const std::optional<double>> values, double h) {
    const std::size_t n = values.size();
    FiniteDifferences out{std::vector<std::optional<double>>(n), std::vector<std::optional<double>>(n)};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!values[i - 1] || !values[i] || !values[i + 1]) continue;
        const double lo = *values[i - 1];
        const double mid = *values[i];
        const double hi = *values[i + 1];
        out.first[i] = (hi - lo) / (2.0 * h);
        out.second[i] = (hi - 2.0 * mid + lo) / (h * h);
    }
    return out;
}

int default_thread_count() {
    if (const char* env = std::getenv("XYDM_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Rows for one (D, J) grid point, ordered by (r, basis).
std::vector<SweepRow> evaluate_point(const SweepSpec& spec, const std::vector<int>& rs,
                                     const std::vector<Basis>& bases, double D, double J) {
    std::vector<SweepRow> rows;
    for (int r : rs) {
        for (Basis b : bases) {
            SweepRow row;
            row.J = J;
            row.D = D;
            row.gamma = spec.gamma;
            row.r = r;
            row.basis = b;
            rows.push_back(row);
        }
    }
    auto fail_all = [&](const std::string& what) {
        for (auto& row : rows) row.error = what;
    };

    const ModelParams params{J, spec.gamma, D};
    std::optional<GreensVector> greens;
    double raw_m = 0.0;
    try {
        greens.emplace(params, rs.back(), spec.quadrature);
        raw_m = magnetization(params, spec.quadrature);
    } catch (const Error& e) {
        fail_all(e.what());
        return rows;
    }

    std::size_t k = 0;
    for (int r : rs) {
        try {
            const TwoSiteState z_state =
                build_two_site(correlator_set(r, *greens, raw_m, spec.calibration));
            for (std::size_t j = 0; j < bases.size(); ++j) {
                rows[k + j].C = qjsd_coherence(rotate_basis(z_state, bases[j])).C;
            }
        } catch (const Error& e) {
            for (std::size_t j = 0; j < bases.size(); ++j) rows[k + j].error = e.what();
        }
        k += bases.size();
    }
    return rows;
}

}  // namespace

SweepTable sweep(const SweepSpec& spec, int threads) {
    spec.validate();

    std::vector<double> Ds = spec.D_values;
    std::sort(Ds.begin(), Ds.end());
    Ds.erase(std::unique(Ds.begin(), Ds.end()), Ds.end());
    std::vector<int> rs = spec.r_values;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::vector<Basis> bases = spec.bases;
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    const std::vector<double> js = spec.j_grid();

    const std::size_t n_points = Ds.size() * js.size();
    std::vector<std::vector<SweepRow>> results(n_points);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n_points; i = next++) {
            results[i] = evaluate_point(spec, rs, bases, Ds[i / js.size()], js[i % js.size()]);
        }
    };
    const int n_threads = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(1, n_points)));
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
        worker();
    }

    // results[d * nJ + j][rb] -> canonical (D, r, basis, J) order
    const std::size_t per_point = rs.size() * bases.size();
    SweepTable table;
    table.rows.reserve(n_points * per_point);
    const double h = spec.j_spacing();
    for (std::size_t d = 0; d < Ds.size(); ++d) {
        for (std::size_t rb = 0; rb < per_point; ++rb) {
            const std::size_t first = table.rows.size();
            std::vector<std::optional<double>> values;
            for (std::size_t j = 0; j < js.size(); ++j) {
                const SweepRow& row = results[d * js.size() + j][rb];
                table.rows.push_back(row);
                values.push_back(row.valid() ? std::optional<double>(row.C) : std::nullopt);
            }
            const FiniteDifferences fd = central_differences(values, h);
            for (std::size_t j = 0; j < js.size(); ++j) {
                table.rows[first + j].dC_dJ = fd.first[j];
                table.rows[first + j].d2C_dJ2 = fd.second[j];
            }
        }
    }
    return table;
}

CriticalPointEstimate detect_critical_point(const SweepTable& table, double D, int r, Basis basis) {
    std::vector<std::pair<double, double>> curvature;  // (J, d2C/dJ2)
    for (const auto& row : table.rows) {
        if (row.D == D && row.r == r && row.basis == basis && row.valid() && row.d2C_dJ2) {
            curvature.emplace_back(row.J, *row.d2C_dJ2);
        }
    }
    if (curvature.size() < 5) {
        throw ValidationError("critical-point detection needs at least 5 valid interior points, slice has " +
                              std::to_string(curvature.size()));
    }

    std::vector<double> magnitudes;
    magnitudes.reserve(curvature.size());
    for (const auto& [J, d2] : curvature) magnitudes.push_back(std::abs(d2));

    const auto peak_it = std::max_element(magnitudes.begin(), magnitudes.end());
    const std::size_t peak_index = static_cast<std::size_t>(peak_it - magnitudes.begin());
    const double peak = *peak_it;

    std::vector<double> sorted = magnitudes;
    const std::size_t n = sorted.size();
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    double median = sorted[n / 2];
    if (n % 2 == 0) {
        median = 0.5 * (median + *std::max_element(sorted.begin(), sorted.begin() + n / 2));
    }

    if (!(peak > 3.0 * median)) {
        throw NoSignal("peak |d2C/dJ2| = " + std::to_string(peak) + " does not exceed 3x the median " +
                       std::to_string(median));
    }

    CriticalPointEstimate est;
    est.J_star = curvature[peak_index].first;
    est.signed_peak = curvature[peak_index].second;
    est.sharpness = median > 0.0 ? peak / median : std::numeric_limits<double>::infinity();
    est.basis = basis;
    est.D = D;
    est.r = r;
    return est;
}

namespace {

template <typename Key>
OrderingReport order_by(std::vector<CriticalPointEstimate> estimates, Key key) {
    OrderingReport report;
    std::stable_sort(estimates.begin(), estimates.end(),
                     [&](const auto& a, const auto& b) { return key(a) < key(b); });
    report.sorted = std::move(estimates);
    if (report.sorted.size() < 2) {
        report.warning = "fewer than two estimates; ordering holds trivially";
        return report;
    }
    for (std::size_t i = 1; i < report.sorted.size(); ++i) {
        const double prev = report.sorted[i - 1].sharpness;
        const double cur = report.sorted[i].sharpness;
        if (!(cur < prev)) report.strictly_decreasing = false;
        if (!(cur > prev)) report.strictly_increasing = false;
        if (key(report.sorted[i]) == key(report.sorted[i - 1])) {
            report.warning = "duplicate ordering keys";
        }
    }
    return report;
}

}  // namespace

OrderingReport sharpness_vs_D(std::vector<CriticalPointEstimate> estimates) {
    return order_by(std::move(estimates), [](const CriticalPointEstimate& e) { return e.D; });
}

OrderingReport sharpness_vs_r(std::vector<CriticalPointEstimate> estimates) {
    return order_by(std::move(estimates), [](const CriticalPointEstimate& e) { return e.r; });
}

}  // namespace xydm
