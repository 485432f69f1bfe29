#pragma once

#include <numbers>
#include <vector>

#include "uavjam/numerics.hpp"

namespace uavjam {

inline constexpr double kSpeedOfLight = 3.0e8; // m/s
inline constexpr double kAngleLimit = std::numbers::pi / 2.0;

enum class Axis { X, Y, Z };

/// MA panel orientation. Rotation about Y' is fixed at zero.
struct Orientation {
    double phi_x = 0.0; // rad
    double phi_z = 0.0; // rad

    bool within_limits(double tol = 0.0) const;
    friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// Right-handed rotation, e.g. R_X(a) = [[1,0,0],[0,cos a,-sin a],[0,sin a,cos a]].
Mat3 rotation_matrix(Axis axis, double angle);

/// U = R_Z(phi_z) * R_Y(0) * R_X(phi_x) * diag(1,-1,-1).
Mat3 frame_matrix(const Orientation& o);

/// u = U * (rx - tx) / |rx - tx|. Throws GeometryError for coincident points.
Vec3 local_direction(const Vec3& tx_pos, const Vec3& rx_pos, const Orientation& o);

/// Antenna element positions in the local frame of an array.
class ArrayGeometry {
public:
    /// n_x by n_y planar array in the local X'Y' plane, half-wavelength spacing.
    /// Element (a,b) (0-based) sits at index a*n_y + b.
    static ArrayGeometry planar(int n_x, int n_y, double frequency_hz);
    /// n-element linear array along local X', half-wavelength spacing.
    static ArrayGeometry linear(int n, double frequency_hz);

    int n_x() const noexcept { return n_x_; }
    int n_y() const noexcept { return n_y_; }
    int size() const noexcept { return n_x_ * n_y_; }
    double spacing() const noexcept { return spacing_; }
    const std::vector<Vec3>& positions() const noexcept { return positions_; }

private:
    int n_x_ = 0;
    int n_y_ = 0;
    double spacing_ = 0.0;
    std::vector<Vec3> positions_;
};

/// Array response: entry k is exp(j * 2*pi*f/c * u^T p_k). Requires |u| = 1 within 1e-9.
ComplexVec steering_vector(const ArrayGeometry& geom, const Vec3& u_local, double frequency_hz);

struct BoresightSolution {
    Orientation orientation;
    double residual = 0.0; // rad, angle between U*g and local +Z'
};

/// Box-constrained orientation that brings the target closest to boresight.
BoresightSolution boresight_angles_toward(const Vec3& tx_pos, const Vec3& target);

} // namespace uavjam
