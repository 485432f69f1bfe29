#include "uavjam/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavjam/errors.hpp"

namespace uavjam {

double path_loss(double distance, double alpha, double frequency_hz) {
    if (!(distance > 0.0)) throw ValidationError("path_loss: distance must be positive");
    const double r = kSpeedOfLight / (4.0 * std::numbers::pi * frequency_hz);
    return r * r * std::pow(distance, -alpha);
}

ChannelVec channel(const Vec3& tx_pos, const Vec3& rx_pos, const Orientation& o, const ArrayGeometry& geom,
                   double alpha, double frequency_hz) {
    ChannelVec out;
    out.distance = (rx_pos - tx_pos).norm();
    const Vec3 u = local_direction(tx_pos, rx_pos, o);
    out.path_loss = path_loss(out.distance, alpha, frequency_hz);
    out.h = std::sqrt(out.path_loss) * steering_vector(geom, u, frequency_hz);
    return out;
}

ArrayGeometry ma_array(const Scenario& s) { return ArrayGeometry::planar(s.n_ma_x, s.n_ma_y, s.frequency); }

ArrayGeometry bs_array(const Scenario& s) { return ArrayGeometry::linear(s.n_b, s.frequency); }

const char* to_string(EveBoundMode m) {
    switch (m) {
    case EveBoundMode::Nominal: return "nominal";
    case EveBoundMode::PathOnly: return "path-only";
    case EveBoundMode::Rigorous: return "rigorous";
    }
    return "?";
}

EveBoundMode parse_bound_mode(const std::string& s) {
    if (s == "nominal") return EveBoundMode::Nominal;
    if (s == "path-only") return EveBoundMode::PathOnly;
    if (s == "rigorous") return EveBoundMode::Rigorous;
    throw ValidationError("unknown bound mode '" + s + "' (expected nominal, path-only or rigorous)");
}

EveGainBounds worst_case_eve_gains(const Vec3& q_j, const Scenario& s) {
    const double d_be = (s.q_b - s.q_e).norm();
    if (!(d_be > s.epsilon))
        throw InfeasibleScenarioError("BS lies inside the eavesdropper uncertainty region");
    const double beta0 = s.beta0();
    EveGainBounds g;
    g.h_be = beta0 * std::pow(d_be - s.epsilon, -s.alpha_be);
    g.h_je = beta0 * std::pow((q_j - s.q_e).norm() + s.epsilon, -s.alpha_je);
    return g;
}

std::vector<Vec3> uncertainty_grid(const Vec3& center, double epsilon, int resolution) {
    if (resolution < 1) throw ValidationError("uncertainty_grid: resolution must be positive");
    std::vector<Vec3> pts;
    pts.push_back(center);
    if (epsilon <= 0.0) return pts;
    pts.reserve(static_cast<std::size_t>(1 + resolution * resolution));
    for (int i = 1; i <= resolution; ++i) {
        const double r = epsilon * static_cast<double>(i) / resolution;
        for (int j = 0; j < resolution; ++j) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / resolution;
            pts.emplace_back(center.x() + r * std::cos(th), center.y() + r * std::sin(th), center.z());
        }
    }
    return pts;
}

namespace {

double eve_rate_at(const Vec3& q_e, const Vec3& q_j, const Orientation& o, const ComplexVec& w_j,
                   const ComplexVec& w_b, const Scenario& s, const ArrayGeometry& ma, const ArrayGeometry& bs) {
    const ChannelVec hb = channel(s.q_b, q_e, Orientation{}, bs, s.alpha_be, s.frequency);
    const ChannelVec hj = channel(q_j, q_e, o, ma, s.alpha_je, s.frequency);
    const double sig = s.p_b * std::norm(hb.h.dot(w_b));
    const double jam = s.p_j * std::norm(hj.h.dot(w_j));
    return std::log2(1.0 + sig / (jam + s.sigma2_e));
}

} // namespace

double eve_rate_oracle(const Vec3& q_j, const Orientation& o, const ComplexVec& w_j, const ComplexVec& w_b,
                       const Scenario& s, int grid_resolution, Exec exec) {
    if (grid_resolution < 8) throw ValidationError("eve_rate_oracle: grid_resolution must be >= 8");
    const auto grid = uncertainty_grid(s.q_e, s.epsilon, grid_resolution);
    const ArrayGeometry ma = ma_array(s);
    const ArrayGeometry bs = bs_array(s);
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    std::vector<double> rates(grid.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < n; ++k)
            rates[static_cast<std::size_t>(k)] = eve_rate_at(grid[static_cast<std::size_t>(k)], q_j, o, w_j, w_b, s, ma, bs);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k)
            rates[static_cast<std::size_t>(k)] = eve_rate_at(grid[static_cast<std::size_t>(k)], q_j, o, w_j, w_b, s, ma, bs);
    }
    return *std::max_element(rates.begin(), rates.end());
}

double min_jamming_array_gain(const Vec3& q_j, const Orientation& o, const ComplexVec& w_j,
                              const std::vector<Vec3>& grid, const Scenario& s, Exec exec) {
    if (grid.empty()) throw ValidationError("min_jamming_array_gain: empty grid");
    const ArrayGeometry ma = ma_array(s);
    const Mat3 u = frame_matrix(o);
    auto gain_at = [&](const Vec3& q) {
        const Vec3 d = q - q_j;
        const ComplexVec g = steering_vector(ma, u * (d / d.norm()), s.frequency);
        return std::norm(g.dot(w_j));
    };
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    std::vector<double> gains(grid.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < n; ++k) gains[static_cast<std::size_t>(k)] = gain_at(grid[static_cast<std::size_t>(k)]);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k) gains[static_cast<std::size_t>(k)] = gain_at(grid[static_cast<std::size_t>(k)]);
    }
    return *std::min_element(gains.begin(), gains.end());
}

} // namespace uavjam
