#include "xydm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "xydm/errors.hpp"

namespace xydm {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Kronrod abscissae on [-1, 1] (non-negative half); odd indices are the
// 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

void IntegrationSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw ValidationError("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) throw ValidationError("max_subdivisions must be >= 1");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const double p = breakpoints[i];
        if (!(p > 0.0 && p < kPi)) {
            throw ValidationError("breakpoint " + std::to_string(p) + " outside (0, pi)");
        }
        if (i > 0 && !(p > breakpoints[i - 1])) {
            throw ValidationError("breakpoints must be strictly increasing");
        }
    }
}

QuadratureResult integrate_with_error(const std::function<double(double)>& f,
                                      const IntegrationSpec& spec) {
    spec.validate();

    std::vector<double> edges;
    edges.reserve(spec.breakpoints.size() + 2);
    edges.push_back(0.0);
    edges.insert(edges.end(), spec.breakpoints.begin(), spec.breakpoints.end());
    edges.push_back(kPi);

    std::priority_queue<Panel> queue;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gauss_kronrod(f, edges[i], edges[i + 1]);
        total += p.value;
        total_error += p.error;
        queue.push(p);
    }
    int panels = static_cast<int>(queue.size());
    auto evaluations = [&] { return 15 * (2 * panels - static_cast<int>(edges.size()) + 1); };

    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (total_error > tolerance()) {
        if (panels >= spec.max_subdivisions) {
            throw NonConvergence("quadrature error estimate " + std::to_string(total_error) +
                                 " above tolerance after " + std::to_string(panels) + " panels");
        }
        Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw NonConvergence("quadrature panel collapsed to machine precision near phi = " +
                                 std::to_string(worst.a));
        }
        queue.pop();
        Panel left = gauss_kronrod(f, worst.a, mid);
        Panel right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    // Re-sum from the panels to shed the drift of the incremental updates.
    double value = 0.0;
    double error = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {value, error, evaluations()};
}

std::vector<double> gap_roots(const ModelParams& params) {
    // J cos(phi) - 2 J D sin(phi) = 1  <=>  R cos(phi + theta) = 1
    const double a = params.J;
    const double b = -2.0 * params.J * params.D;
    const double amplitude = std::hypot(a, b);
    if (amplitude == 0.0 || amplitude < 1.0) return {};

    const double shift = std::atan2(b, a);  // a cos + b sin = R cos(phi - shift)
    const double spread = std::acos(std::min(1.0, 1.0 / amplitude));

    std::vector<double> roots;
    for (double candidate : {shift + spread, shift - spread}) {
        // fold into (-pi, pi]
        double phi = std::remainder(candidate, 2.0 * kPi);
        constexpr double slack = 1e-14;
        if (phi < 0.0 && phi > -slack) phi = 0.0;
        if (phi > kPi && phi < kPi + slack) phi = kPi;
        if (phi >= 0.0 && phi <= kPi) roots.push_back(phi + 0.0);  // drop -0
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

IntegrationSpec spec_for(const ModelParams& params, IntegrationSpec base) {
    base.breakpoints.clear();
    constexpr double margin = 1e-12;
    for (double r : gap_roots(params)) {
        if (r > margin && r < kPi - margin) base.breakpoints.push_back(r);
    }
    return base;
}

}  // namespace xydm
