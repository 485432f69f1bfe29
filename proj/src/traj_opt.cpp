#include "uavjam/traj_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uavjam/errors.hpp"

namespace uavjam {

namespace {

Eigen::Vector2d xy(const Vec3& v) { return v.head<2>(); }

double squared_norm_sum(const std::vector<Eigen::Vector2d>& g) {
    double s = 0.0;
    for (const auto& v : g) s += v.squaredNorm();
    return s;
}

double trajectory_distance_sq(const Trajectory& a, const Trajectory& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
    return s;
}

// chi^2 at displacement delta: sqrt(dt^4 + delta^4/(4 v0^4)) - delta^2/(2 v0^2), cancellation-free.
double chi_exact(double delta, double dt, double v0) {
    const double dt4 = std::pow(dt, 4);
    const double b = delta * delta / (2.0 * v0 * v0);
    return std::sqrt(dt4 / (std::sqrt(dt4 + b * b) + b));
}

} // namespace

TrajSurrogate::TrajSurrogate(const Trajectory& q_ref, const SolutionState& frozen, const SystemModel& model)
    : q_ref_(q_ref), s_(model.scenario()), user_signal_(model.user_signal() / model.scenario().sigma2_u),
      eve_signal_(model.eve_signal_bound() / model.scenario().sigma2_e) {
    const int n_step = s_.n_step;
    if (static_cast<int>(q_ref.size()) != n_step + 1 || frozen.n_step() != n_step)
        throw ValidationError("build_surrogate: trajectory length does not match n_step");
    const auto violations = [&] {
        SolutionState probe = frozen;
        probe.trajectory = q_ref;
        return feasibility_violations(probe, s_);
    }();
    if (!violations.empty()) throw ValidationError("build_surrogate: infeasible reference (" + violations.front() + ")");

    const double beta0 = s_.beta0();
    const double dt = s_.dt();
    slots_.resize(static_cast<std::size_t>(n_step));
    for (int n = 1; n <= n_step; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const Vec3& q = q_ref[i + 1];
        const Orientation& o = frozen.orientations[i];
        const ComplexVec& w = frozen.beams[i];
        Slot& sl = slots_[i];

        const ComplexVec g_u = steering_vector(model.ma(), local_direction(q, s_.q_u, o), s_.frequency);
        const double a_u = std::norm(g_u.dot(w));
        double a_e = 1.0;
        switch (model.options().bound_mode) {
        case EveBoundMode::Nominal:
            a_e = std::norm(steering_vector(model.ma(), local_direction(q, s_.q_e, o), s_.frequency).dot(w));
            break;
        case EveBoundMode::PathOnly: a_e = 1.0; break;
        case EveBoundMode::Rigorous: a_e = min_jamming_array_gain(q, o, w, model.eve_grid(), s_); break;
        }

        sl.cu = s_.p_j * beta0 * a_u / s_.sigma2_u;
        sl.mu_ref = s_.alpha_ju * std::log((q - s_.q_u).norm());
        const double iu = sl.cu * std::exp(-sl.mu_ref);
        sl.t1_ref = std::log1p(user_signal_ + iu);
        sl.t1_slope = -iu / (1.0 + user_signal_ + iu);
        if (sl.cu > 0.0) {
            const double a = -sl.t1_slope;
            sl.mu_peak = std::log(sl.cu * (1.0 - a) / a);
        }

        sl.ce = s_.p_j * beta0 * a_e / s_.sigma2_e;
        sl.d_ref = (q - s_.q_e).norm() + s_.epsilon;
        sl.tau_ref = s_.alpha_je * std::log(sl.d_ref);
        const double je = sl.ce * std::exp(-sl.tau_ref);
        sl.t3_ref = std::log1p(je);
        sl.t3_slope = -je / (1.0 + je);
        if (sl.ce > 0.0) {
            const double b = -sl.t3_slope;
            sl.tau_peak = std::log(sl.ce * (1.0 - b) / (b * (1.0 + eve_signal_)));
        }

        sl.delta_ref = xy(q_ref[i + 1] - q_ref[i]);
        sl.chi_ref = chi_exact(sl.delta_ref.norm(), dt, s_.rotor.v0);
    }

    const EnergyBreakdown e = total_energy(frozen, s_, model.options().ma_actuation);
    frozen_energy_ = e.e_ma + e.e_com;
}

double TrajSurrogate::mu_bound(std::size_t n, const Vec3& q, Eigen::Vector2d* grad) const {
    const double dz2 = std::pow(q.z() - s_.q_u.z(), 2);
    const Eigen::Vector2d hr = xy(q_ref_[n + 1] - s_.q_u);
    const double lin = dz2 + hr.squaredNorm() + 2.0 * hr.dot(xy(q - q_ref_[n + 1]));
    if (lin > dz2) {
        if (grad) *grad = s_.alpha_ju * hr / lin;
        return 0.5 * s_.alpha_ju * std::log(lin);
    }
    if (grad) grad->setZero();
    return 0.5 * s_.alpha_ju * std::log(dz2);
}

double TrajSurrogate::tau_bound(std::size_t n, const Vec3& q, Eigen::Vector2d* grad) const {
    const Slot& sl = slots_[n];
    const Vec3 d = q - s_.q_e;
    const double dist = d.norm();
    if (grad) *grad = (dist > 0.0) ? Eigen::Vector2d(s_.alpha_je / sl.d_ref * xy(d) / dist) : Eigen::Vector2d::Zero();
    return s_.alpha_je * (std::log(sl.d_ref) + (dist + s_.epsilon - sl.d_ref) / sl.d_ref);
}

double TrajSurrogate::user_term(std::size_t n, double mu, double* slope) const {
    const Slot& sl = slots_[n];
    const double iu = sl.cu * std::exp(-mu);
    if (slope) *slope = sl.t1_slope + iu / (1.0 + iu);
    return sl.t1_ref + sl.t1_slope * (mu - sl.mu_ref) - std::log1p(iu);
}

double TrajSurrogate::eve_term(std::size_t n, double tau, double* slope) const {
    const Slot& sl = slots_[n];
    const double je = sl.ce * std::exp(-tau);
    if (slope) *slope = sl.t3_slope + je / (1.0 + eve_signal_ + je);
    return sl.t3_ref + sl.t3_slope * (tau - sl.tau_ref) - std::log1p(eve_signal_ + je);
}

// Smallest chi > 0 with dt^4 <= chi^2 (2 chi_r chi - chi_r^2 + ell / v0^2): the inner
// approximation of chi^4 + chi^2 delta^2 / v0^2 >= dt^4 linearized at (chi_r, delta_r).
double TrajSurrogate::chi_star(std::size_t n, double ell, double* dchi_dell) const {
    const Slot& sl = slots_[n];
    const double dt4 = std::pow(s_.dt(), 4);
    const double v02 = s_.rotor.v0 * s_.rotor.v0;
    const double cr = sl.chi_ref;
    const double k = ell / v02 - cr * cr;
    auto h = [&](double c) { return c * c * (2.0 * cr * c + k) - dt4; };
    auto dh = [&](double c) { return 6.0 * cr * c * c + 2.0 * k * c; };

    double lo = 0.0;
    double hi = std::max(cr, 1e-12);
    while (h(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    double c = hi;
    for (int it = 0; it < 200; ++it) {
        const double hc = h(c);
        if (hc == 0.0) break;
        if (hc > 0.0) hi = c;
        else lo = c;
        const double d = dh(c);
        double next = (d > 0.0) ? c - hc / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - c) <= 1e-15 * c) {
            c = next;
            break;
        }
        c = next;
    }
    if (dchi_dell) *dchi_dell = -(c * c / v02) / dh(c);
    return c;
}

double TrajSurrogate::numerator(const Trajectory& q) const {
    double total = 0.0;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const Slot& sl = slots_[i];
        const Vec3& p = q[i + 1];
        double u = 0.0;
        if (sl.cu > 0.0) {
            const double mu = std::min(mu_bound(i, p, nullptr), sl.mu_peak);
            u = user_term(i, mu, nullptr);
        } else {
            u = std::log1p(user_signal_);
        }
        double e = 0.0;
        if (sl.ce > 0.0) {
            const double tau = std::max(tau_bound(i, p, nullptr), sl.tau_peak);
            e = eve_term(i, tau, nullptr);
        } else {
            e = -std::log1p(eve_signal_);
        }
        total += u + e;
    }
    return total * s_.dt() / std::numbers::ln2;
}

double TrajSurrogate::denominator(const Trajectory& q) const {
    const double dt = s_.dt();
    const auto& r = s_.rotor;
    double total = frozen_energy_;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const Eigen::Vector2d delta = xy(q[i + 1] - q[i]);
        const double v = delta.norm() / dt;
        const double ell = slots_[i].delta_ref.squaredNorm() + 2.0 * slots_[i].delta_ref.dot(delta - slots_[i].delta_ref);
        total += dt * (r.p0 * (1.0 + 3.0 * v * v / r.u_tip_sq) + 0.5 * r.r_drag * r.rho * r.s * r.a * v * v * v) +
                 r.p1 * chi_star(i, ell, nullptr);
    }
    return total;
}

double TrajSurrogate::model_numerator(const Trajectory& q) const {
    double total = 0.0;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const Slot& sl = slots_[i];
        const Vec3& p = q[i + 1];
        const double iu = sl.cu * std::pow((p - s_.q_u).norm(), -s_.alpha_ju);
        const double je = sl.ce * std::pow((p - s_.q_e).norm() + s_.epsilon, -s_.alpha_je);
        total += std::log1p(user_signal_ + iu) - std::log1p(iu) + std::log1p(je) - std::log1p(eve_signal_ + je);
    }
    return total * s_.dt() / std::numbers::ln2;
}

double TrajSurrogate::model_denominator(const Trajectory& q) const {
    const double dt = s_.dt();
    double total = frozen_energy_;
    for (std::size_t i = 0; i < slots_.size(); ++i)
        total += propulsion_power((q[i + 1] - q[i]).norm() / dt, s_.rotor) * dt;
    return total;
}

std::vector<Eigen::Vector2d> TrajSurrogate::parametric_gradient(const Trajectory& q, double lambda) const {
    const std::size_t n_step = slots_.size();
    const double dt = s_.dt();
    const double rate_scale = dt / std::numbers::ln2;
    const auto& r = s_.rotor;
    // index k holds the gradient for waypoint k (0 and n_step are pinned)
    std::vector<Eigen::Vector2d> g(n_step + 1, Eigen::Vector2d::Zero());

    for (std::size_t i = 0; i < n_step; ++i) {
        const Slot& sl = slots_[i];
        const Vec3& p = q[i + 1];
        if (sl.cu > 0.0) {
            Eigen::Vector2d gb;
            const double mb = mu_bound(i, p, &gb);
            if (mb < sl.mu_peak) {
                double slope = 0.0;
                user_term(i, mb, &slope);
                g[i + 1] += rate_scale * slope * gb;
            }
        }
        if (sl.ce > 0.0) {
            Eigen::Vector2d gb;
            const double tb = tau_bound(i, p, &gb);
            if (tb > sl.tau_peak) {
                double slope = 0.0;
                eve_term(i, tb, &slope);
                g[i + 1] += rate_scale * slope * gb;
            }
        }

        const Eigen::Vector2d delta = xy(q[i + 1] - q[i]);
        const double len = delta.norm();
        const double ell = sl.delta_ref.squaredNorm() + 2.0 * sl.delta_ref.dot(delta - sl.delta_ref);
        double dchi = 0.0;
        chi_star(i, ell, &dchi);
        const Eigen::Vector2d de = 6.0 * r.p0 * delta / (dt * r.u_tip_sq) +
                                   1.5 * r.r_drag * r.rho * r.s * r.a * len * delta / (dt * dt) +
                                   r.p1 * dchi * 2.0 * sl.delta_ref;
        g[i + 1] -= lambda * de;
        g[i] += lambda * de;
    }
    g.front().setZero();
    g.back().setZero();
    return g;
}

TrajAux TrajSurrogate::aux(const Trajectory& q) const {
    TrajAux a;
    const double nu = s_.alpha_be * std::log((s_.q_b - s_.q_e).norm() - s_.epsilon);
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const Slot& sl = slots_[i];
        const Vec3& p = q[i + 1];
        a.mu.push_back(sl.cu > 0.0 ? std::min(mu_bound(i, p, nullptr), sl.mu_peak) : mu_bound(i, p, nullptr));
        a.nu.push_back(nu);
        a.tau.push_back(sl.ce > 0.0 ? std::max(tau_bound(i, p, nullptr), sl.tau_peak) : tau_bound(i, p, nullptr));
        const Eigen::Vector2d delta = xy(q[i + 1] - q[i]);
        const double ell = sl.delta_ref.squaredNorm() + 2.0 * sl.delta_ref.dot(delta - sl.delta_ref);
        a.chi.push_back(chi_star(i, ell, nullptr));
    }
    return a;
}

Trajectory TrajSurrogate::maximize_parametric(double lambda, const Trajectory& q_start) const {
    auto objective = [&](const Trajectory& q) { return numerator(q) - lambda * denominator(q); };
    Trajectory x = q_start;
    double fx = objective(x);
    double step = cfg_.init_step;
    for (int it = 0; it < cfg_.max_iter; ++it) {
        const auto grad = parametric_gradient(x, lambda);
        if (squared_norm_sum(grad) == 0.0) break;

        bool accepted = false;
        Trajectory y;
        double fy = fx;
        for (int bt = 0; bt < cfg_.max_backtracks; ++bt) {
            y = x;
            for (std::size_t k = 1; k + 1 < y.size(); ++k) y[k].head<2>() += step * grad[k];
            if (project_trajectory(y, s_, cfg_.projection_sweeps, cfg_.projection_tol)) {
                fy = objective(y);
                const double moved = trajectory_distance_sq(y, x);
                if (moved > 0.0 && fy >= fx + cfg_.armijo_kappa / step * moved) {
                    accepted = true;
                    break;
                }
            }
            step *= cfg_.armijo_shrink;
        }
        if (!accepted) break;
        const double gain = fy - fx;
        x = std::move(y);
        fx = fy;
        if (gain <= 1e-13 * (1.0 + std::abs(fx))) break;
        step /= cfg_.armijo_shrink; // let the step grow back after an easy acceptance
    }
    return x;
}

TrajSurrogate build_surrogate(const Trajectory& q_ref, const SolutionState& frozen, const SystemModel& model) {
    return TrajSurrogate(q_ref, frozen, model);
}

bool project_trajectory(Trajectory& q, const Scenario& s, int sweeps, double tol) {
    const std::size_t last = q.size() - 1;
    const double r = s.step_radius();
    q.front() = s.q_i;
    q.back() = s.q_f;
    for (auto& p : q) p.z() = s.h_j;

    auto visit = [&](std::size_t k) {
        const Eigen::Vector2d c1 = xy(q[k - 1]);
        const Eigen::Vector2d c2 = xy(q[k + 1]);
        const Eigen::Vector2d cur = xy(q[k]);
        Eigen::Vector2d next;
        if ((c2 - c1).norm() <= 2.0 * r) next = project_disk_pair(cur, c1, r, c2, r);
        else next = 0.5 * (c1 + c2);
        const double moved = (next - cur).norm();
        q[k].head<2>() = next;
        return moved;
    };
    auto feasible = [&] {
        for (std::size_t k = 1; k <= last; ++k)
            if ((q[k] - q[k - 1]).norm() > r + tol) return false;
        return true;
    };

    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double moved = 0.0;
        if (sweep % 2 == 0)
            for (std::size_t k = 1; k < last; ++k) moved = std::max(moved, visit(k));
        else
            for (std::size_t k = last - 1; k >= 1; --k) moved = std::max(moved, visit(k));
        if (moved <= tol && feasible()) return true;
    }
    return feasible();
}

DinkelbachResult<Trajectory> dinkelbach_solve(const TrajSurrogate& surrogate, const Trajectory& q_init,
                                              const DinkelbachOptions& opt) {
    return dinkelbach(surrogate, q_init, opt);
}

Trajectory inner_parametric_solve(const TrajSurrogate& surrogate, double lambda, const Trajectory& q_start) {
    return surrogate.maximize_parametric(lambda, q_start);
}

TrajResult optimize_trajectory(const SolutionState& state, const SystemModel& model, const TrajConfig& cfg) {
    TrajResult out;
    out.state = state;
    double eta = see_objective(out.state, model).see;
    for (int m = 0; m < cfg.sca_iters; ++m) {
        ++out.sca_iterations;
        TrajSurrogate sur(out.state.trajectory, out.state, model);
        sur.set_config(cfg);
        auto res = dinkelbach_solve(sur, out.state.trajectory, cfg.dinkelbach);
        const Trajectory proposal = res.x;
        out.dinkelbach_runs.push_back(std::move(res));
        if (trajectory_distance_sq(proposal, out.state.trajectory) == 0.0) break;

        // Back off along the SCA step until the true objective does not decrease.
        double reach = 0.0;
        for (std::size_t k = 0; k < proposal.size(); ++k)
            reach = std::max(reach, (proposal[k] - out.state.trajectory[k]).norm());
        bool accepted = false;
        SolutionState cand = out.state;
        double eta_cand = eta;
        double t = std::min(1.0, cfg.trust_radius / reach);
        for (int j = 0; j < 12 && !accepted; ++j, t *= 0.5) {
            for (std::size_t k = 0; k < proposal.size(); ++k)
                cand.trajectory[k] = out.state.trajectory[k] + t * (proposal[k] - out.state.trajectory[k]);
            eta_cand = see_objective(cand, model).see;
            accepted = eta_cand >= eta;
        }
        if (!accepted) {
            out.fallback = true;
            break;
        }
        const double gain = eta_cand - eta;
        out.state = std::move(cand);
        eta = eta_cand;
        if (gain <= 1e-12 * std::abs(eta)) break;
    }
    return out;
}

} // namespace uavjam
