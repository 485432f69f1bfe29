#pragma once

#include <vector>

#include "uavjam/geometry.hpp"
#include "uavjam/scenario.hpp"

namespace uavjam {

/// beta0 * d^-alpha with beta0 = (c / 4 pi f)^2. Throws ValidationError for d <= 0.
double path_loss(double distance, double alpha, double frequency_hz);

struct ChannelVec {
    ComplexVec h;          // sqrt(path_loss) * steering vector
    double path_loss = 0.; // linear
    double distance = 0.;  // m
};

/// Line-of-sight channel h = sqrt(beta) * g(local_direction(tx, rx, o)).
ChannelVec channel(const Vec3& tx_pos, const Vec3& rx_pos, const Orientation& o, const ArrayGeometry& geom,
                   double alpha, double frequency_hz);

/// UAV-mounted planar array of the scenario.
ArrayGeometry ma_array(const Scenario& s);
/// BS uniform linear array along global x, fixed downward frame.
ArrayGeometry bs_array(const Scenario& s);

/// How the eavesdropper-rate bound treats array gains.
///  Nominal:  path-gain bounds of the worst-case disc, array factors taken toward the nominal position.
///  PathOnly: path-gain bounds only, array factors set to 1.
///  Rigorous: BS factor N_B |w_B|^2 (Cauchy-Schwarz), jamming factor = min over the disc grid.
enum class EveBoundMode { Nominal, PathOnly, Rigorous };

const char* to_string(EveBoundMode m);
EveBoundMode parse_bound_mode(const std::string& s);

struct EveGainBounds {
    double h_be = 0.0; // largest BS->eve path gain over the disc
    double h_je = 0.0; // smallest UAV->eve path gain over the disc
};

/// h_be = beta0 (|q_B - q_e| - eps)^-alpha_be, h_je = beta0 (|q_J - q_e| + eps)^-alpha_je.
/// Throws InfeasibleScenarioError when the BS lies inside the uncertainty disc.
EveGainBounds worst_case_eve_gains(const Vec3& q_j, const Scenario& s);

/// Polar grid over the ground disc: the centre plus `resolution` radii times
/// `resolution` bearings. Doubling the resolution yields a superset.
std::vector<Vec3> uncertainty_grid(const Vec3& center, double epsilon, int resolution);

/// max over the disc grid of log2(1 + gamma_e) with true channels.
double eve_rate_oracle(const Vec3& q_j, const Orientation& o, const ComplexVec& w_j, const ComplexVec& w_b,
                       const Scenario& s, int grid_resolution, Exec exec = Exec::Parallel);

/// min over grid points of |g_J(q)^H w|^2 (array factor only, no path loss).
/// Throws ValidationError for an empty grid.
double min_jamming_array_gain(const Vec3& q_j, const Orientation& o, const ComplexVec& w_j,
                              const std::vector<Vec3>& grid, const Scenario& s, Exec exec = Exec::Parallel);

} // namespace uavjam
