#include "xydm/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "xydm/errors.hpp"

namespace xydm {

namespace {

using Vector = Eigen::VectorXcd;

int bit(std::size_t index, int site) { return static_cast<int>((index >> site) & 1u); }

// sigma^y |s> = y(s) |1 - s>
Complex sigma_y_phase(int s) { return s == 0 ? Complex(0.0, 1.0) : Complex(0.0, -1.0); }

struct EigenPair {
    double value;
    Vector vector;
};

void orthogonalize(Vector& w, const std::vector<Vector>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) w -= v.dot(w) * v;
    }
}

// Lowest eigenpair of h restricted to the span of `start`'s sector, orthogonal
// to `deflate`. Lanczos with full reorthogonalization and explicit restarts.
EigenPair lanczos_lowest(const SparseHamiltonian& h, Vector start, const std::vector<Vector>& deflate,
                         const EigenSolverOptions& opts) {
    orthogonalize(start, deflate);
    double norm = start.norm();
    if (norm == 0.0) throw ConvergenceFailure("Lanczos start vector vanished after deflation");
    start /= norm;

    const auto dim = static_cast<int>(h.rows());
    const int m_max = std::max(2, std::min(opts.krylov_dim, dim - static_cast<int>(deflate.size())));

    double last_residual = 0.0;
    for (int cycle = 0; cycle <= opts.max_restarts; ++cycle) {
        std::vector<Vector> v{start};
        std::vector<double> alpha;
        std::vector<double> beta;
        Eigen::VectorXd ritz_vec;
        double theta = 0.0;

        for (int j = 0; j < m_max; ++j) {
            Vector w = h * v[j];
            alpha.push_back(v[j].dot(w).real());
            w -= alpha.back() * v[j];
            if (j > 0) w -= beta.back() * v[j - 1];
            orthogonalize(w, v);
            orthogonalize(w, deflate);
            const double b = w.norm();

            const bool check = (j + 1) % 10 == 0 || j + 1 == m_max || b < 1e-12;
            if (check) {
                const int k = j + 1;
                Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
                for (int i = 0; i < k; ++i) t(i, i) = alpha[i];
                for (int i = 0; i + 1 < k; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
                theta = tri.eigenvalues()(0);
                ritz_vec = tri.eigenvectors().col(0);
                const double estimate = b * std::abs(ritz_vec(k - 1));
                if (estimate < 0.1 * opts.residual_tol || b < 1e-12) break;
            }
            if (j + 1 == m_max) break;
            beta.push_back(b);
            v.push_back(w / b);
        }

        Vector x = Vector::Zero(dim);
        for (Eigen::Index i = 0; i < ritz_vec.size(); ++i) x += ritz_vec(i) * v[static_cast<std::size_t>(i)];
        orthogonalize(x, deflate);
        x.normalize();
        const Vector hx = h * x;
        theta = x.dot(hx).real();
        last_residual = (hx - theta * x).norm();
        if (last_residual < opts.residual_tol) return {theta, x};
        start = x;
    }
    throw ConvergenceFailure("Lanczos did not reach residual " + std::to_string(opts.residual_tol) +
                             " (last " + std::to_string(last_residual) + ")");
}

Vector random_vector(std::size_t dim, int parity, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(static_cast<Eigen::Index>(i)) =
            (std::popcount(i) % 2 == parity) ? Complex(re, im) : Complex(0.0, 0.0);
    }
    return v.normalized();
}

GroundState dense_ground_state(const FiniteChainSpec& spec) {
    const Eigen::MatrixXcd dense = Eigen::MatrixXcd(build_hamiltonian(spec));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    const auto& values = solver.eigenvalues();
    GroundState gs;
    gs.energy = values(0);
    gs.gap = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) - gs.energy < spec.degeneracy_tol) {
            gs.multiplet.push_back(solver.eigenvectors().col(i));
        } else {
            gs.gap = values(i) - gs.energy;
            break;
        }
    }
    gs.degenerate = gs.multiplet.size() > 1;
    return gs;
}

}  // namespace

void FiniteChainSpec::validate() const {
    params.validate();
    if (N < 4 || N > 14) throw ValidationError("N must lie in [4, 14], got " + std::to_string(N));
    if (N % 2 != 0) throw ValidationError("N must be even, got " + std::to_string(N));
    if (!(degeneracy_tol > 0.0)) throw ValidationError("degeneracy_tol must be positive");
}

SparseHamiltonian build_hamiltonian(const FiniteChainSpec& spec) {
    spec.validate();
    const std::size_t dim = spec.dimension();
    const int N = spec.N;
    const double J = 0.5 * spec.params.J;
    const double g = spec.params.gamma;
    const double D = spec.params.D;

    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(dim * static_cast<std::size_t>(N + 1));
    for (std::size_t s = 0; s < dim; ++s) {
        double diagonal = 0.0;
        for (int i = 0; i < N; ++i) {
            const int j = (i + 1) % N;
            const int a = bit(s, i);
            const int b = bit(s, j);
            diagonal -= (a == 0) ? 1.0 : -1.0;

            // every bond term flips both spins: |a b> -> |~a ~b>
            const Complex ya = sigma_y_phase(a);
            const Complex yb = sigma_y_phase(b);
            const Complex amp = J * ((1.0 + g) + (1.0 - g) * ya * yb + D * (yb - ya));
            if (amp != Complex(0.0, 0.0)) {
                const std::size_t t = s ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
                entries.emplace_back(static_cast<int>(t), static_cast<int>(s), amp);
            }
        }
        entries.emplace_back(static_cast<int>(s), static_cast<int>(s), diagonal);
    }
    SparseHamiltonian h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    h.setFromTriplets(entries.begin(), entries.end());
    h.makeCompressed();
    return h;
}

GroundState ground_state(const FiniteChainSpec& spec, const EigenSolverOptions& opts) {
    spec.validate();
    if (spec.N <= opts.dense_max_N) return dense_ground_state(spec);

    const SparseHamiltonian h = build_hamiltonian(spec);
    std::mt19937_64 rng(opts.seed);

    // H conserves the parity prod Z, so each sector is solved on its own.
    // Per sector: lowest level, then deflated levels until one lies above the
    // degeneracy window.
    struct Level {
        double energy;
        Vector vector;
    };
    std::vector<Level> levels;
    constexpr int kMaxPerSector = 4;
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<Vector> found;
        std::optional<double> sector_min;
        for (int k = 0; k < kMaxPerSector; ++k) {
            EigenPair p = lanczos_lowest(h, random_vector(spec.dimension(), parity, rng), found, opts);
            levels.push_back({p.value, p.vector});
            found.push_back(std::move(p.vector));
            if (!sector_min) sector_min = p.value;
            if (p.value - *sector_min >= spec.degeneracy_tol) break;
        }
    }
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.energy < b.energy; });

    GroundState gs;
    gs.energy = levels.front().energy;
    for (auto& level : levels) {
        if (level.energy - gs.energy < spec.degeneracy_tol) {
            gs.multiplet.push_back(std::move(level.vector));
        } else {
            gs.gap = level.energy - gs.energy;
            break;
        }
    }
    gs.degenerate = gs.multiplet.size() > 1;
    return gs;
}

Eigen::VectorXd full_spectrum(const FiniteChainSpec& spec) {
    spec.validate();
    if (spec.N > 10) throw ValidationError("full spectrum is limited to N <= 10");
    const Eigen::MatrixXcd dense = Eigen::MatrixXcd(build_hamiltonian(spec));
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(dense, Eigen::EigenvaluesOnly).eigenvalues();
}

double energy_variance(const SparseHamiltonian& h, const Eigen::VectorXcd& state) {
    const Vector hv = h * state;
    const double mean = state.dot(hv).real();
    return hv.squaredNorm() - mean * mean;
}

TwoSiteState oracle_two_site_rdm(const Eigen::VectorXcd& state, int N, int i, int r) {
    const auto dim = static_cast<std::size_t>(state.size());
    if (dim != (std::size_t{1} << N)) throw ValidationError("state length does not match 2^N");
    if (r < 1 || r >= N) throw ValidationError("separation must lie in [1, N-1]");
    const int j = ((i + r) % N + N) % N;
    const std::size_t mask_i = std::size_t{1} << i;
    const std::size_t mask_j = std::size_t{1} << j;

    TwoSiteState out;
    out.basis = Basis::Z;
    out.r = r;
    for (std::size_t s = 0; s < dim; ++s) {
        if (state(static_cast<Eigen::Index>(s)) == Complex(0.0, 0.0)) continue;
        const int a = bit(s, i);
        const int b = bit(s, j);
        const std::size_t rest = s & ~(mask_i | mask_j);
        for (int a2 = 0; a2 < 2; ++a2) {
            for (int b2 = 0; b2 < 2; ++b2) {
                const std::size_t t = rest | (a2 ? mask_i : 0) | (b2 ? mask_j : 0);
                out.matrix(2 * a + b, 2 * a2 + b2) +=
                    state(static_cast<Eigen::Index>(s)) * std::conj(state(static_cast<Eigen::Index>(t)));
            }
        }
    }
    return out;
}

TwoSiteState oracle_two_site_rdm(const Eigen::VectorXcd& state, int N, int r) {
    TwoSiteState avg;
    avg.r = r;
    for (int i = 0; i < N; ++i) avg.matrix += oracle_two_site_rdm(state, N, i, r).matrix;
    avg.matrix /= static_cast<double>(N);
    return avg;
}

CorrelatorSet correlators_from_rdm(const TwoSiteState& rho) {
    const TwoSiteState z = rotate_basis(rho, Basis::Z);
    Eigen::Matrix2cd sx, sy, sz, id;
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    sz << 1, 0, 0, -1;
    id.setIdentity();
    auto expect = [&](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
        Eigen::Matrix4cd op;
        for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < 2; ++q) op.block<2, 2>(2 * p, 2 * q) = a(p, q) * b;
        }
        return (z.matrix * op).trace().real();
    };
    CorrelatorSet c;
    c.r = rho.r;
    c.m_z = expect(sz, id);
    c.xx = expect(sx, sx);
    c.yy = expect(sy, sy);
    c.zz = expect(sz, sz);
    return c;
}

CorrelatorSet oracle_correlators(const Eigen::VectorXcd& state, int N, int r) {
    return correlators_from_rdm(oracle_two_site_rdm(state, N, r));
}

CoherenceResult oracle_coherence(const Eigen::VectorXcd& state, int N, int r, Basis basis) {
    return qjsd_coherence(rotate_basis(oracle_two_site_rdm(state, N, r), basis));
}

}  // namespace xydm
