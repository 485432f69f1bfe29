#include <doctest.h>

#include <cmath>
#include <random>

#include "uavjam/errors.hpp"
#include "uavjam/geometry.hpp"

using namespace uavjam;

TEST_CASE("frame matrices are proper rotations") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-kAngleLimit, kAngleLimit);
    for (int t = 0; t < 2000; ++t) {
        const Mat3 f = frame_matrix({u(rng), u(rng)});
        CHECK((f.transpose() * f - Mat3::Identity()).norm() <= 1e-12);
        CHECK(f.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("zero orientation points local +Z' straight down") {
    const Vec3 u = local_direction({0, 0, 50}, {0, 0, 0}, {});
    CHECK((u - Vec3(0, 0, 1)).norm() < 1e-15);
    CHECK_THROWS_AS(local_direction({1, 2, 3}, {1, 2, 3}, {}), GeometryError);
}

TEST_CASE("steering vector is all ones at boresight and unit modulus elsewhere") {
    const ArrayGeometry g = ArrayGeometry::planar(4, 4, 28e9);
    CHECK(g.size() == 16);
    CHECK(g.spacing() == doctest::Approx(3e8 / 28e9 / 2));
    const ComplexVec a = steering_vector(g, Vec3(0, 0, 1), 28e9);
    for (Eigen::Index i = 0; i < a.size(); ++i) CHECK(std::abs(a(i) - cplx(1, 0)) < 1e-12);
    const ComplexVec b = steering_vector(g, Vec3(0.6, 0.0, 0.8), 28e9);
    for (Eigen::Index i = 0; i < b.size(); ++i) CHECK(std::abs(b(i)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(steering_vector(g, Vec3(1, 1, 0), 28e9), ValidationError);
}

TEST_CASE("boresight solution is the best orientation in the box") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-200, 200);
    const int steps = 180;
    for (int t = 0; t < 20; ++t) {
        const Vec3 tx(u(rng), u(rng), 50.0);
        const Vec3 target(u(rng), u(rng), 0.0);
        const BoresightSolution b = boresight_angles_toward(tx, target);
        CHECK(b.orientation.within_limits(1e-12));
        const double z = local_direction(tx, target, b.orientation).z();
        CHECK(std::acos(std::min(1.0, z)) == doctest::Approx(b.residual).epsilon(1e-7));
        double best = -1.0;
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j) {
                const Orientation o{-kAngleLimit + 2 * kAngleLimit * i / steps, -kAngleLimit + 2 * kAngleLimit * j / steps};
                best = std::max(best, local_direction(tx, target, o).z());
            }
        CHECK(z >= best - 1e-12);
    }
}

TEST_CASE("targets in the local Y'Z' plane reach exact boresight") {
    for (double dy : {-80.0, -10.0, 0.0, 35.0, 120.0}) {
        const Vec3 tx(20.0, 5.0, 50.0);
        const Vec3 target(20.0, 5.0 + dy, 0.0);
        const BoresightSolution b = boresight_angles_toward(tx, target);
        CHECK(b.residual < 1e-9);
        CHECK(local_direction(tx, target, b.orientation).z() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("rotation matrix conventions") {
    const Mat3 rx = rotation_matrix(Axis::X, kAngleLimit);
    CHECK((rx * Vec3(0, 1, 0) - Vec3(0, 0, 1)).norm() < 1e-15);
    CHECK_THROWS_AS(rotation_matrix(Axis::Z, NAN), ValidationError);
}
