#include "uavjam/beam_opt.hpp"

#include <cmath>
#include <numbers>

#include "uavjam/errors.hpp"

namespace uavjam {

namespace {

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
    // tr(AB) for Hermitian A, B is real
    return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum().real();
}

struct LogTerms {
    double a = 0.0; // P_J tr(H_u W) / sigma_u^2
    double b = 0.0; // P_J (jam_floor + tr(H_e W)) / sigma_e^2
};

LogTerms log_terms(const HermitianMatrix& w, const HermitianMatrix& h_e, const BeamSubproblem& sub) {
    LogTerms t;
    t.a = sub.p_j * trace_product(sub.user_matrix(), w) / sub.sigma2_u;
    t.b = sub.p_j * (sub.jam_floor + trace_product(h_e, w)) / sub.sigma2_e;
    return t;
}

double lifted_fraction(const HermitianMatrix& w, const BeamSubproblem& sub) {
    const double r = secrecy_rate_matrix(w, sub.active_eve_matrix(w), sub);
    return (sub.omega1 + sub.dt * r) / (sub.omega2 + sub.p_j * w.trace() * sub.dt);
}

// Dinkelbach problem on the concave surrogate linearized at w_ref.
class LiftedSurrogate {
public:
    LiftedSurrogate(const BeamSubproblem& sub, HermitianMatrix w_ref, const BeamConfig& cfg)
        : sub_(sub), w_ref_(std::move(w_ref)), h_e_(sub.active_eve_matrix(w_ref_)), h_u_(sub.user_matrix()),
          ref_(log_terms(w_ref_, h_e_, sub)), cfg_(cfg) {}

    double numerator(const HermitianMatrix& w) const {
        return sub_.omega1 + sub_.dt * secrecy_lower_bound(w, w_ref_, h_e_, sub_);
    }
    double denominator(const HermitianMatrix& w) const {
        return sub_.omega2 + sub_.p_j * w.trace() * sub_.dt;
    }

    HermitianMatrix maximize_parametric(double lambda, const HermitianMatrix& start) const {
        auto phi = [&](const HermitianMatrix& w) { return numerator(w) - lambda * denominator(w); };
        HermitianMatrix x = start;
        double fx = phi(x);
        double step = 0.0;
        for (int it = 0; it < cfg_.max_iter; ++it) {
            const CMatrix g = gradient(x, lambda);
            const double gn = g.norm();
            if (!(gn > 0.0)) break;
            if (step == 0.0) step = 1.0 / gn;
            bool accepted = false;
            HermitianMatrix y;
            double fy = fx;
            for (int bt = 0; bt < cfg_.max_backtracks; ++bt, step *= cfg_.armijo_shrink) {
                y = project_psd_trace(HermitianMatrix(x.matrix() + step * g), 1.0);
                const double moved = (y.matrix() - x.matrix()).squaredNorm();
                if (!(moved > 0.0)) break;
                fy = phi(y);
                if (fy >= fx + cfg_.armijo_kappa / step * moved) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
            const double gain = fy - fx;
            x = std::move(y);
            fx = fy;
            if (gain <= 1e-14 * (1.0 + std::abs(fx))) break;
            step /= cfg_.armijo_shrink;
        }
        return x;
    }

private:
    CMatrix gradient(const HermitianMatrix& w, double lambda) const {
        const LogTerms t = log_terms(w, h_e_, sub_);
        const double su = sub_.s_u / sub_.sigma2_u;
        const double se = sub_.s_e / sub_.sigma2_e;
        const double pu = sub_.p_j / sub_.sigma2_u;
        const double pe = sub_.p_j / sub_.sigma2_e;
        const double cu = pu * (1.0 / (1.0 + su + t.a) - 1.0 / (1.0 + ref_.a));
        const double ce = pe * (1.0 / (1.0 + t.b) - 1.0 / (1.0 + se + ref_.b));
        CMatrix g = (sub_.dt / std::numbers::ln2) * (cu * h_u_.matrix() + ce * h_e_.matrix());
        g.diagonal().array() -= lambda * sub_.p_j * sub_.dt;
        return g;
    }

    const BeamSubproblem& sub_;
    HermitianMatrix w_ref_;
    HermitianMatrix h_e_;
    HermitianMatrix h_u_;
    LogTerms ref_;
    BeamConfig cfg_;
};

} // namespace

HermitianMatrix BeamSubproblem::user_matrix() const { return HermitianMatrix::outer(h_u); }

HermitianMatrix BeamSubproblem::active_eve_matrix(const HermitianMatrix& w) const {
    if (eve_dirs.cols() == 0) return HermitianMatrix::zero(dim());
    Eigen::Index best = 0;
    double best_gain = 0.0;
    for (Eigen::Index k = 0; k < eve_dirs.cols(); ++k) {
        const double gain = eve_dirs.col(k).dot(w.matrix() * eve_dirs.col(k)).real();
        if (k == 0 || gain < best_gain) {
            best = k;
            best_gain = gain;
        }
    }
    return HermitianMatrix::outer(std::sqrt(h_je) * eve_dirs.col(best));
}

double BeamSubproblem::eve_jamming_gain(const ComplexVec& w) const {
    if (eve_dirs.cols() == 0) return jam_floor;
    const double m = (eve_dirs.adjoint() * w).cwiseAbs2().minCoeff();
    return jam_floor + h_je * m;
}

BeamSubproblem make_beam_subproblem(const SolutionState& state, int n, const SystemModel& model,
                                    const std::vector<SlotReport>& reports) {
    const Scenario& s = model.scenario();
    const auto i = static_cast<std::size_t>(n);
    const Vec3& q = state.trajectory[i];
    const Orientation& o = state.orientations[i - 1];

    BeamSubproblem sub;
    sub.n = n;
    sub.s_u = model.user_signal();
    sub.s_e = model.eve_signal_bound();
    sub.h_u = channel(q, s.q_u, o, model.ma(), s.alpha_ju, s.frequency).h;
    sub.h_je = worst_case_eve_gains(q, s).h_je;
    sub.p_j = s.p_j;
    sub.sigma2_u = s.sigma2_u;
    sub.sigma2_e = s.sigma2_e;
    sub.dt = s.dt();
    switch (model.options().bound_mode) {
    case EveBoundMode::Nominal:
        sub.eve_dirs = steering_vector(model.ma(), local_direction(q, s.q_e, o), s.frequency);
        break;
    case EveBoundMode::PathOnly:
        sub.eve_dirs.resize(s.n_ma(), 0);
        sub.jam_floor = sub.h_je;
        break;
    case EveBoundMode::Rigorous: {
        const auto& grid = model.eve_grid();
        sub.eve_dirs.resize(s.n_ma(), static_cast<Eigen::Index>(grid.size()));
        for (std::size_t k = 0; k < grid.size(); ++k)
            sub.eve_dirs.col(static_cast<Eigen::Index>(k)) =
                steering_vector(model.ma(), local_direction(q, grid[k], o), s.frequency);
        break;
    }
    }

    double rate_others = 0.0;
    double energy_others = 0.0;
    for (std::size_t m = 0; m < reports.size(); ++m) {
        if (m == i - 1) continue;
        rate_others += reports[m].r_sec;
        energy_others += reports[m].e_total();
    }
    sub.omega1 = sub.dt * rate_others;
    sub.omega2 = energy_others + reports[i - 1].e_prop + reports[i - 1].e_ma;
    if (!(sub.omega2 > 0.0)) throw NumericError("make_beam_subproblem: omega2 must be positive");
    return sub;
}

double secrecy_rate_matrix(const HermitianMatrix& w, const HermitianMatrix& h_e, const BeamSubproblem& sub) {
    const LogTerms t = log_terms(w, h_e, sub);
    const double su = sub.s_u / sub.sigma2_u;
    const double se = sub.s_e / sub.sigma2_e;
    return (std::log1p(su + t.a) - std::log1p(t.a) - std::log1p(se + t.b) + std::log1p(t.b)) / std::numbers::ln2;
}

double secrecy_lower_bound(const HermitianMatrix& w, const HermitianMatrix& w_ref, const HermitianMatrix& h_e,
                           const BeamSubproblem& sub) {
    const LogTerms t = log_terms(w, h_e, sub);
    const LogTerms r = log_terms(w_ref, h_e, sub);
    const double su = sub.s_u / sub.sigma2_u;
    const double se = sub.s_e / sub.sigma2_e;
    const double user = std::log1p(su + t.a) - (std::log1p(r.a) + (t.a - r.a) / (1.0 + r.a));
    const double eve = std::log1p(t.b) - (std::log1p(se + r.b) + (t.b - r.b) / (1.0 + se + r.b));
    return (user + eve) / std::numbers::ln2;
}

double secrecy_lower_bound(const HermitianMatrix& w, const HermitianMatrix& w_ref, const BeamSubproblem& sub) {
    return secrecy_lower_bound(w, w_ref, sub.active_eve_matrix(w_ref), sub);
}

double slot_secrecy_rate(const ComplexVec& w, const BeamSubproblem& sub) {
    const double gamma_u = sub.s_u / (sub.p_j * std::norm(sub.h_u.dot(w)) + sub.sigma2_u);
    const double r_u = std::log2(1.0 + gamma_u);
    const double r_e = std::log2(1.0 + sub.s_e / (sub.p_j * sub.eve_jamming_gain(w) + sub.sigma2_e));
    return r_u - r_e;
}

double slot_objective(const ComplexVec& w, const BeamSubproblem& sub) {
    const double r = slot_secrecy_rate(w, sub);
    return (sub.omega1 + sub.dt * (r > 0.0 ? r : 0.0)) / (sub.omega2 + sub.p_j * w.squaredNorm() * sub.dt);
}

SlotSdrResult solve_slot_sdr(const BeamSubproblem& sub, const HermitianMatrix& w_init, const BeamConfig& cfg) {
    SlotSdrResult out;
    out.w = w_init;
    double f_ref = lifted_fraction(out.w, sub);
    for (int it = 0; it < cfg.sca_iters; ++it) {
        const LiftedSurrogate problem(sub, out.w, cfg);
        auto res = dinkelbach(problem, out.w, cfg.dinkelbach);
        HermitianMatrix next = res.x;
        out.dinkelbach_runs.push_back(std::move(res));
        const double f_next = lifted_fraction(next, sub);
        if (!(f_next > f_ref)) break;
        const double gain = f_next - f_ref;
        out.w = std::move(next);
        f_ref = f_next;
        if (gain <= cfg.sca_tol * std::abs(f_ref)) break;
    }
    return out;
}

std::vector<double> score_candidates(const std::vector<ComplexVec>& candidates, const BeamSubproblem& sub,
                                     Exec exec) {
    const auto count = static_cast<int>(candidates.size());
    std::vector<double> scores(candidates.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < count; ++k)
            scores[static_cast<std::size_t>(k)] = slot_objective(candidates[static_cast<std::size_t>(k)], sub);
    } else {
        for (int k = 0; k < count; ++k)
            scores[static_cast<std::size_t>(k)] = slot_objective(candidates[static_cast<std::size_t>(k)], sub);
    }
    return scores;
}

ComplexVec gaussian_randomization(const HermitianMatrix& w_star, const BeamSubproblem& sub, int k, RngStream& rng,
                                  const ComplexVec& incumbent, Exec exec) {
    const EigenDecomposition ed = eig_hermitian(w_star);
    const Eigen::VectorXd root = ed.values.cwiseMax(0.0).cwiseSqrt();
    const CMatrix shape = ed.vectors * root.cast<cplx>().asDiagonal();

    std::vector<ComplexVec> candidates;
    candidates.reserve(static_cast<std::size_t>(std::max(k, 0)) + 3);
    candidates.push_back(incumbent);
    candidates.emplace_back(ed.vectors.col(0));
    if (root(0) > 0.0) candidates.emplace_back(root(0) * ed.vectors.col(0));
    for (int j = 0; j < k; ++j) {
        ComplexVec w = shape * sample_complex_gaussian(w_star.dim(), rng);
        const double nrm = w.norm();
        if (nrm > 1.0) w /= nrm;
        candidates.push_back(std::move(w));
    }

    const std::vector<double> scores = score_candidates(candidates, sub, exec);
    std::size_t best = 0;
    for (std::size_t j = 1; j < scores.size(); ++j)
        if (scores[j] > scores[best]) best = j;
    return candidates[best];
}

BeamResult optimize_beams(const SolutionState& state, const SystemModel& model, const BeamConfig& cfg,
                          std::uint64_t seed, std::uint64_t round) {
    BeamResult out;
    out.state = state;
    std::vector<SlotReport> reports = evaluate_slots(out.state, model, Exec::Serial);
    for (int n = 1; n <= out.state.n_step(); ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const BeamSubproblem sub = make_beam_subproblem(out.state, n, model, reports);
        const ComplexVec& current = out.state.beams[i];
        SlotSdrResult sdr = solve_slot_sdr(sub, HermitianMatrix::outer(current), cfg);
        for (auto& r : sdr.dinkelbach_runs) out.dinkelbach_runs.push_back(std::move(r));

        RngStream rng = RngStream::derive(seed, round, static_cast<std::uint64_t>(n));
        ComplexVec w = gaussian_randomization(sdr.w, sub, cfg.randomization_samples, rng, current, cfg.exec);
        if (w != current) {
            out.state.beams[i] = std::move(w);
            reports[i] = evaluate_slot(out.state, n, model);
            ++out.improved_slots;
        }
    }
    return out;
}

} // namespace uavjam
