#include "uavjam/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "uavjam/errors.hpp"

namespace uavjam {

bool Orientation::within_limits(double tol) const {
    return std::abs(phi_x) <= kAngleLimit + tol && std::abs(phi_z) <= kAngleLimit + tol;
}

Mat3 rotation_matrix(Axis axis, double angle) {
    if (!std::isfinite(angle)) throw ValidationError("rotation_matrix: non-finite angle");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Mat3 r;
    switch (axis) {
    case Axis::X: r << 1, 0, 0, 0, c, -s, 0, s, c; break;
    case Axis::Y: r << c, 0, s, 0, 1, 0, -s, 0, c; break;
    case Axis::Z: r << c, -s, 0, s, c, 0, 0, 0, 1; break;
    }
    return r;
}

Mat3 frame_matrix(const Orientation& o) {
    const Mat3 flip = Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
    return rotation_matrix(Axis::Z, o.phi_z) * rotation_matrix(Axis::Y, 0.0) * rotation_matrix(Axis::X, o.phi_x) *
           flip;
}

Vec3 local_direction(const Vec3& tx_pos, const Vec3& rx_pos, const Orientation& o) {
    const Vec3 d = rx_pos - tx_pos;
    const double n = d.norm();
    if (!(n > 0.0)) throw GeometryError("local_direction: transmitter and receiver coincide");
    return frame_matrix(o) * (d / n);
}

ArrayGeometry ArrayGeometry::planar(int n_x, int n_y, double frequency_hz) {
    if (n_x < 1 || n_y < 1) throw ValidationError("ArrayGeometry: element counts must be positive");
    if (!(frequency_hz > 0.0)) throw ValidationError("ArrayGeometry: frequency must be positive");
    ArrayGeometry g;
    g.n_x_ = n_x;
    g.n_y_ = n_y;
    g.spacing_ = kSpeedOfLight / frequency_hz / 2.0;
    g.positions_.reserve(static_cast<std::size_t>(n_x * n_y));
    for (int a = 0; a < n_x; ++a)
        for (int b = 0; b < n_y; ++b) g.positions_.emplace_back(a * g.spacing_, b * g.spacing_, 0.0);
    return g;
}

ArrayGeometry ArrayGeometry::linear(int n, double frequency_hz) { return planar(n, 1, frequency_hz); }

ComplexVec steering_vector(const ArrayGeometry& geom, const Vec3& u_local, double frequency_hz) {
    if (std::abs(u_local.norm() - 1.0) > 1e-9) throw ValidationError("steering_vector: direction is not unit norm");
    const double k = 2.0 * std::numbers::pi * frequency_hz / kSpeedOfLight;
    const auto& pos = geom.positions();
    ComplexVec g(static_cast<Eigen::Index>(pos.size()));
    for (std::size_t i = 0; i < pos.size(); ++i) {
        const double phase = k * u_local.dot(pos[i]);
        g(static_cast<Eigen::Index>(i)) = cplx(std::cos(phase), std::sin(phase));
    }
    return g;
}

// With U = R_Z R_X F, the local z-component of U*g does not depend on phi_z, and
// equals sin(phi_x) * (-g_y) + cos(phi_x) * (-g_z). Its maximizer over phi_x is closed
// form; phi_z is left at zero.
BoresightSolution boresight_angles_toward(const Vec3& tx_pos, const Vec3& target) {
    const Vec3 d = target - tx_pos;
    const double n = d.norm();
    if (!(n > 0.0)) throw GeometryError("boresight_angles_toward: target coincides with array");
    const Vec3 g = d / n;
    double phi_x = std::atan2(-g.y(), -g.z());
    phi_x = std::clamp(phi_x, -kAngleLimit, kAngleLimit);

    BoresightSolution out;
    out.orientation = Orientation{phi_x, 0.0};
    const Vec3 u = frame_matrix(out.orientation) * g;
    out.residual = std::atan2(u.head<2>().norm(), u.z());
    return out;
}

} // namespace uavjam
