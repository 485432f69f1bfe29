#include <doctest.h>

#include <cmath>

#include "uavjam/errors.hpp"
#include "uavjam/numerics.hpp"

using namespace uavjam;

namespace {

HermitianMatrix random_hermitian(Eigen::Index n, RngStream& rng) {
    CMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) a.col(j) = sample_complex_gaussian(n, rng);
    return HermitianMatrix(CMatrix(0.5 * (a + a.adjoint())));
}

} // namespace

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    RngStream rng(7);
    for (int t = 0; t < 50; ++t) {
        const HermitianMatrix a = random_hermitian(16, rng);
        const EigenDecomposition e = eig_hermitian(a);
        const CMatrix rec = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
        CHECK((rec - a.matrix()).norm() / a.matrix().norm() <= 1e-9);
        CHECK((e.vectors.adjoint() * e.vectors - CMatrix::Identity(16, 16)).norm() <= 1e-9);
        for (Eigen::Index i = 1; i < e.values.size(); ++i) CHECK(e.values(i) <= e.values(i - 1));
    }
}

TEST_CASE("eigendecomposition agrees with Eigen's solver") {
    RngStream rng(11);
    const HermitianMatrix a = random_hermitian(8, rng);
    Eigen::SelfAdjointEigenSolver<CMatrix> ref(a.matrix());
    const EigenDecomposition e = eig_hermitian(a);
    for (Eigen::Index i = 0; i < 8; ++i) CHECK(e.values(i) == doctest::Approx(ref.eigenvalues()(7 - i)).epsilon(1e-10));
}

TEST_CASE("Hermitian construction rejects asymmetric or non-finite input") {
    CMatrix a = CMatrix::Identity(2, 2);
    a(0, 1) = cplx(1.0, 0.0);
    CHECK_THROWS_AS(HermitianMatrix{a}, ValidationError);
    CMatrix b = CMatrix::Identity(2, 2);
    b(0, 0) = cplx(NAN, 0.0);
    CHECK_THROWS_AS(HermitianMatrix{b}, ValidationError);
    CHECK_THROWS_AS(eig_hermitian(HermitianMatrix::identity(65)), ValidationError);
}

TEST_CASE("outer product is exactly Hermitian") {
    RngStream rng(3);
    const ComplexVec v = 1e3 * sample_complex_gaussian(16, rng);
    const HermitianMatrix m = HermitianMatrix::outer(v);
    CHECK((m.matrix() - m.matrix().adjoint()).norm() == 0.0);
    CHECK(m.trace() == doctest::Approx(v.squaredNorm()));
}

TEST_CASE("capped simplex projection") {
    Eigen::VectorXd v(3);
    v << 0.2, -1.0, 0.3;
    CHECK((project_capped_simplex(v, 1.0) - Eigen::Vector3d(0.2, 0.0, 0.3)).norm() < 1e-15);
    v << 2.0, 1.0, -1.0;
    const Eigen::VectorXd p = project_capped_simplex(v, 1.0);
    CHECK(p(0) == doctest::Approx(1.0));
    CHECK(p(1) == doctest::Approx(0.0));
    CHECK(p(2) == 0.0);
    CHECK(p.sum() <= 1.0 + 1e-12);
}

TEST_CASE("PSD-trace projection is idempotent") {
    RngStream rng(5);
    for (int t = 0; t < 20; ++t) {
        const HermitianMatrix a = random_hermitian(6, rng);
        const HermitianMatrix p = project_psd_trace(a, 1.0);
        const HermitianMatrix pp = project_psd_trace(p, 1.0);
        CHECK((p.matrix() - pp.matrix()).norm() <= 1e-9);
        CHECK(p.trace() <= 1.0 + 1e-9);
        CHECK(eig_hermitian(p).values.minCoeff() >= -1e-9);
    }
}

TEST_CASE("PSD-trace projection matches a brute-force grid in 2x2") {
    // Real symmetric 2x2 PSD matrices with trace <= 1 parametrized as [[a, c], [c, b]].
    Eigen::Matrix2cd m;
    m << cplx(0.9, 0), cplx(0.6, 0), cplx(0.6, 0), cplx(-0.3, 0);
    const HermitianMatrix p = project_psd_trace(HermitianMatrix(CMatrix(m)), 1.0);
    double best = 1e300, ba = 0, bb = 0, bc = 0;
    const int steps = 400;
    for (int i = 0; i <= steps; ++i) {
        const double a = static_cast<double>(i) / steps;
        for (int j = 0; i + j <= steps; ++j) {
            const double b = static_cast<double>(j) / steps;
            const double cmax = std::sqrt(a * b);
            // optimal off-diagonal for fixed diagonal is the clamp of 0.6
            const double c = std::min(0.6, cmax);
            const double d = (a - 0.9) * (a - 0.9) + (b + 0.3) * (b + 0.3) + 2 * (c - 0.6) * (c - 0.6);
            if (d < best) best = d, ba = a, bb = b, bc = c;
        }
    }
    // refine around the grid optimum
    for (double a = ba - 0.01; a <= ba + 0.01; a += 1e-5) {
        for (double b = std::max(0.0, bb - 0.01); b <= bb + 0.01 && a + b <= 1.0; b += 1e-5) {
            if (a < 0) continue;
            const double c = std::min(0.6, std::sqrt(a * b));
            const double d = (a - 0.9) * (a - 0.9) + (b + 0.3) * (b + 0.3) + 2 * (c - 0.6) * (c - 0.6);
            if (d < best) best = d, ba = a, bb = b, bc = c;
        }
    }
    CHECK(std::abs(p.matrix()(0, 0).real() - ba) < 1e-4);
    CHECK(std::abs(p.matrix()(1, 1).real() - bb) < 1e-4);
    CHECK(std::abs(p.matrix()(0, 1).real() - bc) < 1e-4);
    const double dp = (p.matrix() - CMatrix(m)).squaredNorm();
    CHECK(dp <= best + 1e-6);
}

TEST_CASE("ball and disk-pair projections") {
    Eigen::VectorXd x(2), c(2);
    x << 3.0, 4.0;
    c << 0.0, 0.0;
    const Eigen::VectorXd p = project_ball(x, c, 1.0);
    CHECK(p(0) == doctest::Approx(0.6));
    CHECK(p(1) == doctest::Approx(0.8));
    CHECK(project_ball(c, c, 1.0) == c);

    const Eigen::Vector2d q = project_disk_pair({0.0, 5.0}, {-1.0, 0.0}, 2.0, {1.0, 0.0}, 2.0);
    CHECK((q - Eigen::Vector2d(-1.0, 0.0)).norm() <= 2.0 + 1e-9);
    CHECK((q - Eigen::Vector2d(1.0, 0.0)).norm() <= 2.0 + 1e-9);
    CHECK(q.x() == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(q.y() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
    CHECK_THROWS_AS(project_disk_pair({0, 0}, {-5, 0}, 1.0, {5, 0}, 1.0), ValidationError);
}

TEST_CASE("derived RNG streams are reproducible and distinct") {
    RngStream a = RngStream::derive(0, 1, 2);
    RngStream b = RngStream::derive(0, 1, 2);
    RngStream c = RngStream::derive(0, 1, 3);
    const auto va = a.engine()();
    CHECK(va == b.engine()());
    CHECK(va != c.engine()());
    RngStream g(42);
    const ComplexVec z = sample_complex_gaussian(20000, g);
    CHECK(z.squaredNorm() / 20000.0 == doctest::Approx(1.0).epsilon(0.05));
}
