#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace uavjam {

using cplx = std::complex<double>;
using ComplexVec = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Selects the serial reference path or the OpenMP path of a data-parallel kernel.
// Both paths produce bit-identical results.
enum class Exec { Serial, Parallel };

/// Dense complex Hermitian matrix. Construction checks finite entries and A = A^H
/// entrywise within 1e-12 * max(1, max |a_ij|), then stores the exactly Hermitian average.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const CMatrix& a);

    static HermitianMatrix zero(Eigen::Index n);
    static HermitianMatrix identity(Eigen::Index n);
    static HermitianMatrix outer(const ComplexVec& v);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const CMatrix& matrix() const noexcept { return m_; }
    double trace() const { return m_.trace().real(); }

private:
    struct Unchecked {};
    HermitianMatrix(CMatrix a, Unchecked) : m_(std::move(a)) {}
    CMatrix m_;
};

struct EigenDecomposition {
    Eigen::VectorXd values;  // descending
    CMatrix vectors;         // columns, unitary
    int sweeps = 0;
};

/// Cyclic complex Jacobi. Stops when the off-diagonal Frobenius norm falls below
/// 1e-12 of the full norm; throws NumericError after 100 sweeps.
/// Throws ValidationError for dimension 0 or above 64.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

/// Euclidean projection of an eigenvalue vector onto {x >= 0, sum x <= cap}.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& values, double cap);

/// Frobenius-nearest point of {X PSD, tr X <= trace_cap}.
HermitianMatrix project_psd_trace(const HermitianMatrix& a, double trace_cap);

/// Nearest point of the closed ball; returns x unchanged if already inside.
Eigen::VectorXd project_ball(const Eigen::VectorXd& x, const Eigen::VectorXd& center, double radius);

/// Nearest point of the intersection of two closed disks in the plane.
/// Throws ValidationError when the intersection is empty.
Eigen::Vector2d project_disk_pair(const Eigen::Vector2d& x, const Eigen::Vector2d& c1, double r1,
                                  const Eigen::Vector2d& c2, double r2);

/// Seeded PRNG with explicit state. Streams derived from (seed, ids...) are
/// independent of evaluation order.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    static RngStream derive(std::uint64_t run_seed, std::uint64_t a, std::uint64_t b = 0);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// i.i.d. circularly-symmetric complex normal entries, E|z|^2 = 1.
ComplexVec sample_complex_gaussian(Eigen::Index n, RngStream& rng);

} // namespace uavjam
