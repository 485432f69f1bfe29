#pragma once

#include <string>
#include <vector>

#include "uavjam/channel.hpp"
#include "uavjam/energy.hpp"

namespace uavjam {

/// Per-slot optimization variables. trajectory holds N_step + 1 waypoints
/// (index 0 = q_I, index N_step = q_F); orientations and beams hold one entry per slot.
struct SolutionState {
    std::vector<Vec3> trajectory;
    std::vector<Orientation> orientations;
    std::vector<ComplexVec> beams;

    int n_step() const { return static_cast<int>(orientations.size()); }
};

/// Empty when every constraint holds: endpoints, per-slot displacement, angle box,
/// per-slot rotation reachability, beam norm.
std::vector<std::string> feasibility_violations(const SolutionState& state, const Scenario& s, double tol = 1e-9);

/// Uniform straight line from q_I to q_F.
std::vector<Vec3> straight_line(const Scenario& s);

struct ModelOptions {
    EveBoundMode bound_mode = EveBoundMode::Nominal;
    bool ma_actuation = true; // false: no actuator fitted, MA energy is zero
    int rigorous_grid = 64;   // disc grid resolution for the rigorous jamming gain
};

struct SlotChannels {
    ChannelVec bu; // BS -> user
    ChannelVec ju; // UAV -> user
    ChannelVec je; // UAV -> nominal eve position
};

struct SlotRates {
    double gamma_u = 0.0;
    double r_u = 0.0;      // log2(1 + gamma_u)
    double r_e = 0.0;      // worst-case eve rate bound
    double r_bar = 0.0;    // r_u - r_e
    double r_sec() const { return r_bar > 0.0 ? r_bar : 0.0; }
};

struct SlotReport {
    double r_sec = 0.0;
    double r_bar = 0.0;
    double r_u = 0.0;
    double r_e_bound = 0.0;
    double e_prop = 0.0;
    double e_ma = 0.0;
    double e_com = 0.0;
    double e_total() const { return e_prop + e_ma + e_com; }
};

struct SEEReport {
    double sum_secrecy = 0.0;  // sum of clipped slot rates, bit/s/Hz
    double total_energy = 0.0; // J
    double see = 0.0;          // bit/Hz/J
    double e_prop = 0.0;
    double e_ma = 0.0;
    double e_com = 0.0;
    std::vector<SlotReport> per_slot;
};

/// Evaluation context: scenario, eve-bound treatment, and the quantities that do
/// not depend on the UAV (BS MRT beam, user signal power, eve signal bound).
class SystemModel {
public:
    explicit SystemModel(Scenario s, ModelOptions opt = {});

    const Scenario& scenario() const noexcept { return s_; }
    const ModelOptions& options() const noexcept { return opt_; }
    const ArrayGeometry& ma() const noexcept { return ma_; }
    const ArrayGeometry& bs() const noexcept { return bs_; }
    const ComplexVec& bs_beam() const noexcept { return w_b_; }
    const ChannelVec& bs_user_channel() const noexcept { return h_bu_; }
    const std::vector<Vec3>& eve_grid() const noexcept { return grid_; }

    /// P_B |h_Bu^H w_B|^2.
    double user_signal() const noexcept { return user_signal_; }
    /// Numerator of the eve-rate bound: P_B * h_be * (BS array factor toward eve per mode).
    double eve_signal_bound() const noexcept { return eve_signal_; }

    SlotChannels slot_channels(const Vec3& q_j, const Orientation& o) const;

    /// Smallest UAV->eve jamming gain over the disc used by the bound: h_je times the
    /// array factor selected by the bound mode.
    double eve_jamming_gain(const Vec3& q_j, const Orientation& o, const ComplexVec& w_j) const;

    SlotRates slot_rates(const Vec3& q_j, const Orientation& o, const ComplexVec& w_j) const;

private:
    Scenario s_;
    ModelOptions opt_;
    ArrayGeometry ma_;
    ArrayGeometry bs_;
    ChannelVec h_bu_;
    ComplexVec w_b_;
    double user_signal_ = 0.0;
    double eve_signal_ = 0.0;
    std::vector<Vec3> grid_;
};

enum class Node { User, Eve };

/// gamma = P_B |h_B^H w_B|^2 / (P_J |h_J^H w_J|^2 + sigma^2) for the chosen node.
double sinr(Node node, const ChannelVec& h_b, const ChannelVec& h_j, const ComplexVec& w_b, const ComplexVec& w_j,
            const Scenario& s);

/// w = h / |h|. Throws GeometryError for a zero channel.
ComplexVec mrt_beam(const ComplexVec& h);

/// Unclipped r_u - r_e for slot n (1-based).
double secrecy_rate_unclipped(const SolutionState& state, int n, const SystemModel& model);
/// max(0, r_u - r_e) for slot n (1-based).
double secrecy_rate_slot(const SolutionState& state, int n, const SystemModel& model);

/// Metrics of slot n (1-based).
SlotReport evaluate_slot(const SolutionState& state, int n, const SystemModel& model);

/// All slots; Serial is the reference path for the OpenMP path.
std::vector<SlotReport> evaluate_slots(const SolutionState& state, const SystemModel& model,
                                       Exec exec = Exec::Parallel);

/// Sums per-slot reports in slot order.
SEEReport summarize(std::vector<SlotReport> slots, double dt);

/// SEE = sum_n r_sec[n] dt / sum_n E_total[n].
SEEReport see_objective(const SolutionState& state, const SystemModel& model, Exec exec = Exec::Parallel);

} // namespace uavjam
