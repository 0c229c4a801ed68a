#pragma once
// Scenario sweeps reproducing the efficiency experiments: timing matrices
// over (f_s, f_c) grids and the generator crossover curves. Absolute times
// are machine-bound; success/stagnation patterns and trends are the data.

#include <cstdint>
#include <string>
#include <vector>

#include "rvegen/md.hpp"
#include "rvegen/rsa.hpp"

namespace rvegen {

enum class GeneratorKind { RSA, MD };

struct ScenarioCell {
    double f_s = 0.0;
    double f_c = 0.0;
};

struct Scenario {
    GeneratorKind generator = GeneratorKind::RSA;
    std::vector<ScenarioCell> cells;
    int n_s = 10;
    int n_c = 10;
    std::vector<double> aspects{3.0};
    int runs = 20;
    double time_cap_s = 50.0;
    long max_attempts = 1000000; // RSA attempt cap per object
    std::uint64_t seed_base = 1;
    Strategy strategy = Strategy::CylindersFirst;
    MdParams md; // used when generator == MD
    long md_max_steps = 200000;
    int threads = 1; // cells fan out; per-run timing stays single-threaded
};

struct RunRecord {
    std::uint64_t seed = 0;
    double seconds = 0.0;
    bool success = false;
};

struct CellResult {
    ScenarioCell cell;
    double aspect = 0.0;
    std::vector<RunRecord> runs;
    int success_count = 0;
    double mean_time = 0.0; // over successful runs; 0 when none
};

struct BenchResult {
    std::vector<CellResult> cells;
};

// Runs every cell x aspect x run; failures are recorded, never fatal.
BenchResult run_scenario(const Scenario& s);

Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);

void write_bench_csv(const BenchResult& result, const Scenario& s, const std::string& path);

struct CrossoverRow {
    double f = 0.0;
    double rsa_mean = 0.0;
    double md_mean = 0.0;
    int rsa_success = 0;
    int md_success = 0;
};

// Cylinders-only fraction sweep with both generators at each step.
std::vector<CrossoverRow> compare_crossover(double f_lo, double f_hi, double f_step,
                                            int n_c, double aspect, int runs,
                                            double rsa_time_cap, long rsa_max_attempts,
                                            const MdParams& md, std::uint64_t seed_base);

void write_crossover_csv(const std::vector<CrossoverRow>& rows, const std::string& path);

} // namespace rvegen
