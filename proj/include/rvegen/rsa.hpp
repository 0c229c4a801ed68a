#pragma once
// Random sequential adsorption: draw candidates uniformly, reject any that
// intersect the population under periodicity, stop at the target counts or
// on stagnation (attempt cap or time budget).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rvegen/sample.hpp"

namespace rvegen {

enum class Strategy { CylindersFirst, SpheresFirst, Interleaved };

const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& name);

struct RsaConfig {
    double f_s = 0.0;
    double f_c = 0.0;
    int n_s = 0;
    int n_c = 0;
    double aspect = 3.0;
    Strategy strategy = Strategy::CylindersFirst;
    std::uint64_t seed = 1;
    long max_attempts_per_object = 1000000;
    double time_budget_s = 50.0;
    // Test support: keep the first rejected candidates for replay.
    bool record_rejections = false;
};

// Radii solving the exact-volume equations; throws std::invalid_argument on
// a zero count with a nonzero fraction or when the derived shapes violate
// the size invariants.
std::pair<double, double> radii_from_fractions(double f_s, double f_c, int n_s, int n_c,
                                               double aspect);

// Validates the whole config (fraction sum, counts, derived radii).
void validate_config(const RsaConfig& cfg);

struct StagnationInfo {
    int placed_spheres = 0;
    int placed_cylinders = 0;
    long attempts = 0;
    double elapsed_s = 0.0;
};

struct RejectedCandidate {
    bool is_cylinder = false;
    SphereInc sph;
    CylinderInc cyl;
    int population_spheres = 0; // population size at rejection time
    int population_cylinders = 0;
};

struct RsaResult {
    std::optional<RveSample> sample;      // set on success
    std::optional<StagnationInfo> stagnation;
    std::vector<RejectedCandidate> rejections; // only when recording
    bool ok() const { return sample.has_value(); }
};

RsaResult generate(const RsaConfig& cfg);

} // namespace rvegen
