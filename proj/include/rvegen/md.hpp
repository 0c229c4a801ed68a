#pragma once
// Time-driven relaxation of an overlapping configuration: rigid-body
// translation plus thin-rod rotation for cylinders, linear-elastic contact
// forces, viscous damping, Berendsen and (optionally) Nose-Hoover
// thermostats, a squared-force-norm potential energy as the stop criterion,
// and geometric force rescaling to accelerate the tail of the relaxation.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvegen/forces.hpp"
#include "rvegen/rng.hpp"
#include "rvegen/rsa.hpp"
#include "rvegen/sample.hpp"

namespace rvegen {

enum class Integrator { VelocityVerlet, Trapezoid };

struct MdParams {
    double dt = 0.0;           // <= 0: auto, 0.05 * min inclusion radius
    double beta = 2.0;         // viscous damping coefficient
    double alpha_ber = 0.1;    // Berendsen thermostat gain
    double alpha_nh = 0.1;     // Nose-Hoover thermostat gain
    double target_energy = 0.0; // the (1/2) N k_B T aggregate, one number
    double e_stop = 0.0;       // <= 0: auto, 1e-6 * initial potential energy
    int stop_window = 10;      // consecutive below-threshold steps required
    double rescale_factor = 2.0;
    bool rescale_enabled = true;
    long max_steps = 200000;
    bool nh_enabled = false; // integrate gamma_NH on every step
    bool nh_auto = true;     // let relax() open NH windows on stagnation
    Integrator integrator = Integrator::VelocityVerlet;
    int trace_stride = 1; // record energies every k-th step
};

struct TraceRow {
    long step = 0;
    double e_pot = 0.0;
    double e_kin = 0.0;
    double force_scale = 1.0;
};

struct MdState {
    RveSample sample;
    std::vector<Vec3> v_s;       // sphere velocities
    std::vector<Vec3> v_c, w_c;  // cylinder velocities / angular velocities
    std::vector<double> half_len0; // conserved axis half-lengths
    double gamma_nh = 0.0;
    double force_scale = 1.0;
    long step_count = 0;
    std::vector<TraceRow> energy_trace;

    // Relaxation bookkeeping.
    double last_e_pot = -1.0;    // potential energy at the last completed step
    double rescale_ref = -1.0;   // energy level of the last rescale
    long nh_window_left = 0;     // remaining steps of an auto NH window
    SplitMix64 rng{0};           // degenerate force directions

    // Force cache so velocity Verlet runs one sweep per step.
    SystemForces cached_forces;
    bool forces_valid = false;

    int n_s() const { return sample.n_spheres(); }
    int n_c() const { return sample.n_cylinders(); }
};

struct BlowUpError : std::runtime_error {
    long step;
    double dt;
    BlowUpError(long step_, double dt_, const std::string& what_)
        : std::runtime_error(what_), step(step_), dt(dt_) {}
};

// Uniform placement with no rejection; all velocities zero.
MdState init_overlapping(const RsaConfig& cfg, std::uint64_t seed);

// Builds an MD state around an explicit sample (fixture support).
MdState state_from_sample(RveSample sample, std::uint64_t seed);

int degrees_of_freedom(int n_s, int n_c);

double kinetic_energy(const MdState& state);

// gamma_Ber = alpha_Ber * (E_kin - target); target aggregates (1/2) N k_B T.
double gamma_berendsen(double e_kin, const MdParams& params);

// Explicit Euler update of the Nose-Hoover coefficient; identically zero
// while the thermostat is disabled.
double step_gamma_nh(double gamma_nh, double e_kin, const MdParams& params, double dt);

// One integration step. Updates the trace, the boundary wrap, and the force
// rescaling bookkeeping. Throws BlowUpError when the state leaves the
// finite range.
void md_step(MdState& state, const MdParams& params);

struct RelaxOutcome {
    bool converged = false;
    RveSample sample;            // valid when converged
    long steps = 0;
    double final_e_pot = 0.0;
    std::vector<TraceRow> trace; // full energy trace either way
};

// Iterates md_step until the potential energy stays below the stop level and
// an independent periodic sweep confirms zero contacts; tightens the level
// tenfold if the sweep disagrees. dt is halved and integration restarted on
// blow-up. Non-convergence after max_steps returns the trace for diagnosis.
RelaxOutcome relax(const MdState& initial, const MdParams& params);

// Effective parameter resolution (exposed for tests and the CLI).
double resolve_dt(const MdState& state, const MdParams& params);

void write_trace_csv(const std::vector<TraceRow>& trace, const std::string& path);

} // namespace rvegen
