#include "rvegen/md.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "rvegen/periodic.hpp"

namespace rvegen {

namespace {

SystemForces evaluate_forces(MdState& state) {
    std::vector<Contact> contacts = all_contacts(state.sample);
    return accumulate(state.sample, contacts, state.rng);
}

bool finite(const Vec3& v) { return all_finite(v); }

void check_finite(const MdState& state, const MdParams& params, double dt) {
    auto bad = [&](const char* what) {
        throw BlowUpError(state.step_count, dt,
                          std::string("integration blow-up (") + what + ") at step " +
                              std::to_string(state.step_count) +
                              ", dt=" + std::to_string(dt));
    };
    (void)params;
    for (const auto& s : state.sample.spheres)
        if (!finite(s.center)) bad("sphere position");
    for (const auto& c : state.sample.cylinders)
        if (!finite(c.center) || !finite(c.half_axis)) bad("cylinder position");
    for (const auto& v : state.v_s)
        if (!finite(v)) bad("sphere velocity");
    for (const auto& v : state.v_c)
        if (!finite(v)) bad("cylinder velocity");
    for (const auto& w : state.w_c)
        if (!finite(w)) bad("angular velocity");
    if (!std::isfinite(state.last_e_pot)) bad("potential energy");
}

// Rotate the half-axis by the kinematic law and restore its conserved
// length. `rate` is the already-integrated increment omega x l.
Vec3 advance_axis(const Vec3& l, const Vec3& rate, double dt, double target_len) {
    Vec3 moved = l + dt * rate;
    double n = norm(moved);
    if (n < kNullEps) return l; // a full flip in one step means dt is far too big
    return moved * (target_len / n);
}

struct Derivatives {
    std::vector<Vec3> acc_s, acc_c, wacc_c;
};

double kinetic_energy_parts(const std::vector<Vec3>& v_s, const std::vector<Vec3>& v_c,
                            const std::vector<Vec3>& w_c, const std::vector<double>& hl) {
    double e = 0.0;
    for (const auto& v : v_s) e += 0.5 * norm2(v);
    for (std::size_t k = 0; k < v_c.size(); ++k) {
        e += 0.5 * norm2(v_c[k]);
        e += 0.5 * (hl[k] * hl[k] / 6.0) * norm2(w_c[k]);
    }
    return e;
}

Derivatives derivatives(double force_scale, const std::vector<double>& half_len0,
                        const std::vector<Vec3>& v_s, const std::vector<Vec3>& v_c,
                        const std::vector<Vec3>& w_c, const SystemForces& forces,
                        double gamma_total) {
    Derivatives d;
    const int ns = int(v_s.size());
    const int nc = int(v_c.size());
    d.acc_s.resize(ns);
    d.acc_c.resize(nc);
    d.wacc_c.resize(nc);
    for (int i = 0; i < ns; ++i)
        d.acc_s[i] = force_scale * forces.force[i] - gamma_total * v_s[i];
    for (int k = 0; k < nc; ++k) {
        const double inv_inertia = 6.0 / (half_len0[k] * half_len0[k]);
        d.acc_c[k] = force_scale * forces.force[ns + k] - gamma_total * v_c[k];
        d.wacc_c[k] = force_scale * inv_inertia * forces.torque[ns + k] - gamma_total * w_c[k];
    }
    return d;
}

void update_rescale(MdState& state, const MdParams& params, double e_pot) {
    if (!params.rescale_enabled) return;
    if (e_pot <= 0.0) return;
    if (state.rescale_ref < 0.0) {
        state.rescale_ref = e_pot;
        return;
    }
    if (e_pot < 0.5 * state.rescale_ref) {
        state.force_scale *= params.rescale_factor;
        state.rescale_ref = e_pot;
    }
}

void append_trace(MdState& state, const MdParams& params, double e_pot, double e_kin) {
    if (params.trace_stride <= 1 || state.step_count % params.trace_stride == 0)
        state.energy_trace.push_back({state.step_count, e_pot, e_kin, state.force_scale});
}

bool nh_active(const MdState& state, const MdParams& params) {
    return params.nh_enabled || state.nh_window_left > 0;
}

} // namespace

MdState init_overlapping(const RsaConfig& cfg, std::uint64_t seed) {
    auto [r_s, r_c] = radii_from_fractions(cfg.f_s, cfg.f_c, cfg.n_s, cfg.n_c, cfg.aspect);
    const int n_s = cfg.f_s > 0 ? cfg.n_s : 0;
    const int n_c = cfg.f_c > 0 ? cfg.n_c : 0;

    SplitMix64 rng(seed);
    RveSample sample;
    sample.params = {cfg.f_s, cfg.f_c, n_s, n_c, cfg.aspect};
    sample.seed = seed;
    sample.provenance = Provenance::MD;
    for (int k = 0; k < n_c; ++k) {
        CylinderInc c;
        c.center = rng.point_in_unit_cube();
        c.radius = r_c;
        c.half_axis = rng.unit_vector() * (cfg.aspect * r_c);
        sample.cylinders.push_back(c);
    }
    for (int i = 0; i < n_s; ++i) {
        SphereInc s;
        s.center = rng.point_in_unit_cube();
        s.radius = r_s;
        sample.spheres.push_back(s);
    }
    return state_from_sample(std::move(sample), seed);
}

MdState state_from_sample(RveSample sample, std::uint64_t seed) {
    MdState st;
    st.sample = std::move(sample);
    st.v_s.assign(st.n_s(), Vec3{});
    st.v_c.assign(st.n_c(), Vec3{});
    st.w_c.assign(st.n_c(), Vec3{});
    st.half_len0.resize(st.n_c());
    for (int k = 0; k < st.n_c(); ++k) st.half_len0[k] = st.sample.cylinders[k].half_length();
    st.rng = SplitMix64(seed, 0x4d64);
    return st;
}

int degrees_of_freedom(int n_s, int n_c) { return 3 * n_s + 5 * n_c; }

double kinetic_energy(const MdState& state) {
    double e = 0.0;
    for (const auto& v : state.v_s) e += 0.5 * norm2(v);
    for (int k = 0; k < state.n_c(); ++k) {
        const double l2 = state.half_len0[k] * state.half_len0[k];
        e += 0.5 * norm2(state.v_c[k]);
        e += 0.5 * (l2 / 6.0) * norm2(state.w_c[k]);
    }
    return e;
}

double gamma_berendsen(double e_kin, const MdParams& params) {
    return params.alpha_ber * (e_kin - params.target_energy);
}

double step_gamma_nh(double gamma_nh, double e_kin, const MdParams& params, double dt) {
    if (!params.nh_enabled) return 0.0;
    return gamma_nh + dt * params.alpha_nh * (e_kin - params.target_energy);
}

double resolve_dt(const MdState& state, const MdParams& params) {
    if (params.dt > 0.0) return params.dt;
    double r_min = std::numeric_limits<double>::infinity();
    for (const auto& s : state.sample.spheres) r_min = std::min(r_min, s.radius);
    for (const auto& c : state.sample.cylinders) r_min = std::min(r_min, c.radius);
    if (!std::isfinite(r_min)) r_min = 1.0;
    return 0.05 * r_min;
}

void md_step(MdState& state, const MdParams& params) {
    const double dt = resolve_dt(state, params);
    const int ns = state.n_s();
    const int nc = state.n_c();

    if (!state.forces_valid) {
        state.cached_forces = evaluate_forces(state);
        state.forces_valid = true;
        state.last_e_pot = state.cached_forces.potential_energy;
    }

    const double e_kin0 = kinetic_energy(state);
    const double gamma0 =
        params.beta + gamma_berendsen(e_kin0, params) + (nh_active(state, params) ? state.gamma_nh : 0.0);

    if (params.integrator == Integrator::VelocityVerlet) {
        const Derivatives d0 = derivatives(state.force_scale, state.half_len0, state.v_s,
                                           state.v_c, state.w_c, state.cached_forces, gamma0);

        std::vector<Vec3> vh_s(ns), vh_c(nc), wh_c(nc);
        for (int i = 0; i < ns; ++i) vh_s[i] = state.v_s[i] + 0.5 * dt * d0.acc_s[i];
        for (int k = 0; k < nc; ++k) {
            vh_c[k] = state.v_c[k] + 0.5 * dt * d0.acc_c[k];
            wh_c[k] = state.w_c[k] + 0.5 * dt * d0.wacc_c[k];
        }

        for (int i = 0; i < ns; ++i)
            state.sample.spheres[i].center = wrap01(state.sample.spheres[i].center + dt * vh_s[i]);
        for (int k = 0; k < nc; ++k) {
            CylinderInc& c = state.sample.cylinders[k];
            c.center = wrap01(c.center + dt * vh_c[k]);
            c.half_axis =
                advance_axis(c.half_axis, cross(wh_c[k], c.half_axis), dt, state.half_len0[k]);
        }

        const double e_kin_half = kinetic_energy_parts(vh_s, vh_c, wh_c, state.half_len0);
        const double gamma1 = params.beta + gamma_berendsen(e_kin_half, params) +
                              (nh_active(state, params) ? state.gamma_nh : 0.0);

        SystemForces f1 = evaluate_forces(state);
        const Derivatives d1 =
            derivatives(state.force_scale, state.half_len0, vh_s, vh_c, wh_c, f1, gamma1);
        for (int i = 0; i < ns; ++i) state.v_s[i] = vh_s[i] + 0.5 * dt * d1.acc_s[i];
        for (int k = 0; k < nc; ++k) {
            state.v_c[k] = vh_c[k] + 0.5 * dt * d1.acc_c[k];
            state.w_c[k] = wh_c[k] + 0.5 * dt * d1.wacc_c[k];
        }
        state.cached_forces = std::move(f1);
    } else {
        // Trapezoid: explicit predictor, averaged corrector.
        const Derivatives d0 = derivatives(state.force_scale, state.half_len0, state.v_s,
                                           state.v_c, state.w_c, state.cached_forces, gamma0);
        MdState pred = state;
        for (int i = 0; i < ns; ++i) {
            pred.sample.spheres[i].center =
                wrap01(state.sample.spheres[i].center + dt * state.v_s[i]);
            pred.v_s[i] = state.v_s[i] + dt * d0.acc_s[i];
        }
        for (int k = 0; k < nc; ++k) {
            CylinderInc& pc = pred.sample.cylinders[k];
            pc.center = wrap01(state.sample.cylinders[k].center + dt * state.v_c[k]);
            pc.half_axis = advance_axis(state.sample.cylinders[k].half_axis,
                                        cross(state.w_c[k], state.sample.cylinders[k].half_axis),
                                        dt, state.half_len0[k]);
            pred.v_c[k] = state.v_c[k] + dt * d0.acc_c[k];
            pred.w_c[k] = state.w_c[k] + dt * d0.wacc_c[k];
        }
        SystemForces f_pred = evaluate_forces(pred);
        const double gamma_pred = params.beta + gamma_berendsen(kinetic_energy(pred), params) +
                                  (nh_active(state, params) ? state.gamma_nh : 0.0);
        const Derivatives d1 = derivatives(pred.force_scale, pred.half_len0, pred.v_s,
                                           pred.v_c, pred.w_c, f_pred, gamma_pred);

        for (int i = 0; i < ns; ++i) {
            state.sample.spheres[i].center = wrap01(
                state.sample.spheres[i].center + 0.5 * dt * (state.v_s[i] + pred.v_s[i]));
            state.v_s[i] = state.v_s[i] + 0.5 * dt * (d0.acc_s[i] + d1.acc_s[i]);
        }
        for (int k = 0; k < nc; ++k) {
            CylinderInc& c = state.sample.cylinders[k];
            Vec3 rate0 = cross(state.w_c[k], c.half_axis);
            Vec3 rate1 = cross(pred.w_c[k], pred.sample.cylinders[k].half_axis);
            c.center = wrap01(c.center + 0.5 * dt * (state.v_c[k] + pred.v_c[k]));
            c.half_axis = advance_axis(c.half_axis, 0.5 * (rate0 + rate1), dt, state.half_len0[k]);
            state.v_c[k] = state.v_c[k] + 0.5 * dt * (d0.acc_c[k] + d1.acc_c[k]);
            state.w_c[k] = state.w_c[k] + 0.5 * dt * (d0.wacc_c[k] + d1.wacc_c[k]);
        }
        state.cached_forces = evaluate_forces(state);
    }

    // Nose-Hoover coefficient advances on the start-of-step kinetic energy.
    if (nh_active(state, params)) {
        state.gamma_nh += dt * params.alpha_nh * (e_kin0 - params.target_energy);
        if (state.nh_window_left > 0 && --state.nh_window_left == 0) state.gamma_nh = 0.0;
    }

    state.last_e_pot = state.cached_forces.potential_energy;
    update_rescale(state, params, state.last_e_pot);
    ++state.step_count;
    append_trace(state, params, state.last_e_pot, kinetic_energy(state));
    check_finite(state, params, dt);
}

RelaxOutcome relax(const MdState& initial, const MdParams& params) {
    MdParams p = params;
    p.dt = resolve_dt(initial, params);

    for (int attempt = 0; attempt < 8; ++attempt) {
        MdState state = initial;
        try {
            state.cached_forces = evaluate_forces(state);
            state.forces_valid = true;
            state.last_e_pot = state.cached_forces.potential_energy;
            state.energy_trace.push_back(
                {0, state.last_e_pot, kinetic_energy(state), state.force_scale});

            if (state.last_e_pot == 0.0 && !has_any_contact(state.sample)) {
                RelaxOutcome out;
                out.converged = true;
                out.sample = state.sample;
                out.sample.provenance = Provenance::MD;
                out.trace = state.energy_trace;
                return out;
            }

            double e_stop = p.e_stop > 0.0 ? p.e_stop : 1e-6 * state.last_e_pot;
            int consec = 0;
            double stagnation_probe = state.last_e_pot;

            while (state.step_count < p.max_steps) {
                md_step(state, p);

                // Stagnation reshuffle: a flat potential well above the stop
                // level opens a Nose-Hoover window.
                if (p.nh_auto && !p.nh_enabled && state.nh_window_left == 0 &&
                    state.step_count % 200 == 0) {
                    const double e = state.last_e_pot;
                    if (e > e_stop && stagnation_probe > 0.0 &&
                        std::fabs(e - stagnation_probe) < 1e-3 * stagnation_probe) {
                        state.nh_window_left = 500;
                    }
                    stagnation_probe = e;
                }

                consec = state.last_e_pot < e_stop ? consec + 1 : 0;
                if (consec >= p.stop_window) {
                    if (!has_any_contact(state.sample)) {
                        RelaxOutcome out;
                        out.converged = true;
                        out.sample = state.sample;
                        for (auto& s : out.sample.spheres) s.center = wrap01(s.center);
                        for (auto& c : out.sample.cylinders) c.center = wrap01(c.center);
                        out.sample.provenance = Provenance::MD;
                        out.steps = state.step_count;
                        out.final_e_pot = state.last_e_pot;
                        out.trace = std::move(state.energy_trace);
                        return out;
                    }
                    e_stop *= 0.1;
                    consec = 0;
                }
            }

            RelaxOutcome out;
            out.converged = false;
            out.steps = state.step_count;
            out.final_e_pot = state.last_e_pot;
            out.trace = std::move(state.energy_trace);
            return out;
        } catch (const BlowUpError&) {
            p.dt *= 0.5; // restart from scratch with a safer step
        }
    }

    RelaxOutcome out;
    out.converged = false;
    return out;
}

void write_trace_csv(const std::vector<TraceRow>& trace, const std::string& path) {
    std::ofstream f(path);
    f << "step,e_pot,e_kin,force_scale\n";
    for (const auto& r : trace) {
        f << r.step << ',' << r.e_pot << ',' << r.e_kin << ',' << r.force_scale << '\n';
    }
}

} // namespace rvegen
