#include "uavjam/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "uavjam/errors.hpp"

namespace uavjam {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
constexpr Eigen::Index kMaxDim = 64;

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

HermitianMatrix::HermitianMatrix(const CMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("HermitianMatrix: matrix is not square");
    if (!a.allFinite()) throw ValidationError("HermitianMatrix: non-finite entry");
    const double tol = kHermitianTol * std::max(1.0, a.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i <= j; ++i)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol)
                throw ValidationError("HermitianMatrix: A != A^H at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
    m_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) { return {CMatrix::Zero(n, n), Unchecked{}}; }

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) { return {CMatrix::Identity(n, n), Unchecked{}}; }

HermitianMatrix HermitianMatrix::outer(const ComplexVec& v) {
    CMatrix m(v.size(), v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        m(j, j) = cplx(std::norm(v(j)), 0.0);
        for (Eigen::Index i = 0; i < j; ++i) {
            m(i, j) = v(i) * std::conj(v(j));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return {std::move(m), Unchecked{}};
}

EigenDecomposition eig_hermitian(const HermitianMatrix& input) {
    const Eigen::Index n = input.dim();
    if (n == 0 || n > kMaxDim) throw ValidationError("eig_hermitian: dimension must be in [1, 64]");

    CMatrix a = input.matrix();
    CMatrix v = CMatrix::Identity(n, n);
    const double scale = a.norm();
    int sweep = 0;

    // Each (p,q) step applies J = P*G, where P = diag(1, e^{-i theta}) makes a_pq real
    // and G is the real symmetric Jacobi rotation that annihilates it.
    while (off_diagonal_norm(a) > kJacobiTol * scale) {
        if (sweep == kJacobiMaxSweeps)
            throw NumericError("eig_hermitian: no convergence after 100 sweeps");
        ++sweep;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx phase = std::conj(apq) / mag; // e^{-i theta}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // columns: A <- A J
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - s * phase * akq;
                    a(k, q) = s * akp + c * phase * akq;
                }
                // rows: A <- J^H A
                const cplx phase_c = std::conj(phase);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - s * phase_c * aqk;
                    a(q, k) = s * apk + c * phase_c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - s * phase * vkq;
                    v(k, q) = s * vkp + c * phase * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    out.sweeps = sweep;
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    if (!out.values.allFinite() || !out.vectors.allFinite())
        throw NumericError("eig_hermitian: non-finite result");
    return out;
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& values, double cap) {
    if (!(cap > 0.0)) throw ValidationError("project_capped_simplex: cap must be positive");
    Eigen::VectorXd clipped = values.cwiseMax(0.0);
    if (clipped.sum() <= cap) return clipped;

    // Sorted-threshold projection onto {x >= 0, sum x = cap}.
    std::vector<double> sorted(values.data(), values.data() + values.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cumulative += sorted[k];
        const double candidate = (cumulative - cap) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) theta = candidate;
    }
    return (values.array() - theta).cwiseMax(0.0).matrix();
}

HermitianMatrix project_psd_trace(const HermitianMatrix& a, double trace_cap) {
    if (!(trace_cap > 0.0)) throw ValidationError("project_psd_trace: trace_cap must be positive");
    const EigenDecomposition ed = eig_hermitian(a);
    const Eigen::VectorXd lambda = project_capped_simplex(ed.values, trace_cap);
    CMatrix out = ed.vectors * lambda.cast<cplx>().asDiagonal() * ed.vectors.adjoint();
    out = 0.5 * (out + out.adjoint());
    return HermitianMatrix(out);
}

Eigen::VectorXd project_ball(const Eigen::VectorXd& x, const Eigen::VectorXd& center, double radius) {
    if (radius < 0.0) throw ValidationError("project_ball: negative radius");
    if (x.size() != center.size()) throw ValidationError("project_ball: dimension mismatch");
    const Eigen::VectorXd d = x - center;
    const double n = d.norm();
    if (n <= radius) return x;
    return center + d * (radius / n);
}

Eigen::Vector2d project_disk_pair(const Eigen::Vector2d& x, const Eigen::Vector2d& c1, double r1,
                                  const Eigen::Vector2d& c2, double r2) {
    const double sep = (c2 - c1).norm();
    if (sep > r1 + r2 || r1 < 0.0 || r2 < 0.0)
        throw ValidationError("project_disk_pair: disks do not intersect");
    auto inside = [](const Eigen::Vector2d& p, const Eigen::Vector2d& c, double r) {
        return (p - c).norm() <= r * (1.0 + 1e-15);
    };
    if (inside(x, c1, r1) && inside(x, c2, r2)) return x;

    const Eigen::Vector2d p1 = project_ball(x, c1, r1);
    if (inside(p1, c2, r2)) return p1;
    const Eigen::Vector2d p2 = project_ball(x, c2, r2);
    if (inside(p2, c1, r1)) return p2;

    // Nearest of the two circle intersection points.
    if (sep == 0.0) return p1;
    const double along = (r1 * r1 - r2 * r2 + sep * sep) / (2.0 * sep);
    const double h = std::sqrt(std::max(0.0, r1 * r1 - along * along));
    const Eigen::Vector2d e = (c2 - c1) / sep;
    const Eigen::Vector2d perp(-e.y(), e.x());
    const Eigen::Vector2d base = c1 + along * e;
    const Eigen::Vector2d a = base + h * perp;
    const Eigen::Vector2d b = base - h * perp;
    return (x - a).squaredNorm() <= (x - b).squaredNorm() ? a : b;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream RngStream::derive(std::uint64_t run_seed, std::uint64_t a, std::uint64_t b) {
    return RngStream(splitmix64(splitmix64(splitmix64(run_seed) ^ a) ^ (b * 0x2545f4914f6cdd1dULL)));
}

ComplexVec sample_complex_gaussian(Eigen::Index n, RngStream& rng) {
    if (n < 1) throw ValidationError("sample_complex_gaussian: n must be >= 1");
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexVec z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = normal(rng.engine());
        const double im = normal(rng.engine());
        z(i) = cplx(re, im);
    }
    return z;
}

} // namespace uavjam
