// Command-line front end: generate / validate / voxelize / bench.
//
// Exit codes: 0 success, 2 configuration error, 3 RSA stagnation,
// 4 MD non-convergence, 5 I/O error.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "rvegen/bench.hpp"
#include "rvegen/md.hpp"
#include "rvegen/periodic.hpp"
#include "rvegen/rsa.hpp"
#include "rvegen/sample_io.hpp"
#include "rvegen/simd/kernels.hpp"
#include "rvegen/voxel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStagnation = 3;
constexpr int kExitNonConvergence = 4;
constexpr int kExitIo = 5;

int cmd_generate(const std::string& method, const rvegen::RsaConfig& cfg,
                 const rvegen::MdParams& md, const std::string& out_path,
                 const std::string& trace_path) {
    using namespace rvegen;
    try {
        validate_config(cfg);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    RveSample sample;
    if (method == "rsa") {
        RsaResult res = generate(cfg);
        if (!res.ok()) {
            const StagnationInfo& st = *res.stagnation;
            std::cerr << "stagnation: placed " << st.placed_spheres << " spheres, "
                      << st.placed_cylinders << " cylinders after " << st.attempts
                      << " attempts (" << st.elapsed_s << " s)\n";
            return kExitStagnation;
        }
        sample = std::move(*res.sample);
    } else {
        MdState st = init_overlapping(cfg, cfg.seed);
        RelaxOutcome out = relax(st, md);
        if (!trace_path.empty()) {
            try {
                write_trace_csv(out.trace, trace_path);
            } catch (const std::exception& e) {
                std::cerr << "i/o error: " << e.what() << "\n";
                return kExitIo;
            }
        }
        if (!out.converged) {
            std::cerr << "non-convergence after " << out.steps
                      << " steps, potential energy " << out.final_e_pot << "\n";
            return kExitNonConvergence;
        }
        sample = std::move(out.sample);
        sample.seed = cfg.seed;
    }

    try {
        save_sample(sample, out_path);
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    std::cout << "wrote " << out_path << " (" << sample.n_spheres() << " spheres, "
              << sample.n_cylinders() << " cylinders)\n";
    return kExitOk;
}

int cmd_validate(const std::string& in_path, long mc_points) {
    using namespace rvegen;
    RveSample sample;
    try {
        sample = load_sample(in_path);
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }

    std::vector<Contact> contacts = all_contacts(sample);
    std::map<std::string, int> by_kind;
    for (const Contact& ct : contacts) ++by_kind[to_string(ct.kind)];

    std::cout << "contacts: " << contacts.size() << "\n";
    for (const auto& [kind, count] : by_kind)
        std::cout << "  " << kind << ": " << count << "\n";
    if (mc_points > 0) {
        OverlapEstimate est = total_overlap_mc(sample, mc_points, sample.seed + 17);
        std::cout << "mc overlap volume: " << est.volume << " +- " << est.std_error << "\n";
    }
    return contacts.empty() ? kExitOk : 1;
}

int cmd_voxelize(const std::string& in_path, int resolution, const std::string& out_path) {
    using namespace rvegen;
    RveSample sample;
    try {
        sample = load_sample(in_path);
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    VoxelGrid grid = voxelize(sample, resolution);
    try {
        write_raw_with_sidecar(grid, sample, out_path);
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    std::cout << "phase fractions: matrix " << volume_fraction(grid, kPhaseMatrix)
              << ", sphere " << volume_fraction(grid, kPhaseSphere) << ", cylinder "
              << volume_fraction(grid, kPhaseCylinder) << "\n";
    std::cout << "wrote " << out_path << " and " << out_path << ".json\n";
    return kExitOk;
}

int cmd_bench(const std::string& scenario_path, const std::string& out_path, int threads) {
    using namespace rvegen;
    Scenario scenario;
    try {
        scenario = load_scenario(scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (threads > 0) scenario.threads = threads;
    BenchResult result = run_scenario(scenario);
    try {
        write_bench_csv(result, scenario, out_path);
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    std::cout << "wrote " << out_path << " (" << result.cells.size() << " cells)\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic RVE generation for sphere/cylinder composites"};
    app.require_subcommand(1);

    int threads = 0;
    bool deterministic = false;
    std::string backend = "auto";
    app.add_option("--threads", threads, "worker count for bench sweeps (default: env RVEGEN_THREADS or 1)");
    app.add_flag("--deterministic", deterministic,
                 "force single-threaded, fixed-order reductions");
    app.add_option("--backend", backend, "kernel backend: auto|scalar|avx2|neon");

    // generate
    auto* gen = app.add_subcommand("generate", "generate a sample via RSA or MD");
    std::string method = "rsa";
    rvegen::RsaConfig cfg;
    rvegen::MdParams md;
    std::string strategy = "cylinders-first";
    std::string out_path = "sample.json";
    std::string trace_path;
    long max_steps = md.max_steps;
    gen->add_option("--method", method, "rsa|md")->check(CLI::IsMember({"rsa", "md"}));
    gen->add_option("--fs", cfg.f_s, "sphere volume fraction");
    gen->add_option("--fc", cfg.f_c, "cylinder volume fraction");
    gen->add_option("--ns", cfg.n_s, "sphere count");
    gen->add_option("--nc", cfg.n_c, "cylinder count");
    gen->add_option("--aspect", cfg.aspect, "cylinder aspect ratio (length/diameter)");
    gen->add_option("--seed", cfg.seed, "RNG seed");
    gen->add_option("--strategy", strategy, "cylinders-first|spheres-first|interleaved");
    gen->add_option("--time-budget", cfg.time_budget_s, "RSA wall-clock budget (s)");
    gen->add_option("--max-attempts", cfg.max_attempts_per_object,
                    "RSA attempt cap per object");
    gen->add_option("--out", out_path, "output sample path");
    gen->add_option("--dt", md.dt, "MD time step (0 = auto)");
    gen->add_option("--beta", md.beta, "MD viscous damping");
    gen->add_option("--alpha-ber", md.alpha_ber, "Berendsen gain");
    gen->add_option("--alpha-nh", md.alpha_nh, "Nose-Hoover gain");
    gen->add_option("--e-stop", md.e_stop, "MD stop energy (0 = auto)");
    gen->add_option("--max-steps", max_steps, "MD step cap");
    gen->add_option("--trace", trace_path, "MD energy trace CSV path");

    // validate
    auto* val = app.add_subcommand("validate", "periodic contact sweep of a sample file");
    std::string val_in;
    long mc_points = 0;
    val->add_option("--in", val_in, "sample path")->required();
    val->add_option("--mc-points", mc_points, "extra MC overlap estimate with N points");

    // voxelize
    auto* vox = app.add_subcommand("voxelize", "render a sample to a RAW voxel grid");
    std::string vox_in, vox_out = "grid.raw";
    int resolution = 256;
    vox->add_option("--in", vox_in, "sample path")->required();
    vox->add_option("--res", resolution, "grid resolution per edge");
    vox->add_option("--out", vox_out, "output RAW path (sidecar: <out>.json)");

    // bench
    auto* ben = app.add_subcommand("bench", "run a scenario sweep to CSV");
    std::string scenario_path, bench_out = "results.csv";
    ben->add_option("--scenario", scenario_path, "scenario JSON path")->required();
    ben->add_option("--out", bench_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    if (!rvegen::kernels::select_backend(backend.c_str())) {
        std::cerr << "config error: backend '" << backend << "' unavailable\n";
        return kExitConfig;
    }
    if (threads <= 0) {
        if (const char* env = std::getenv("RVEGEN_THREADS")) threads = std::atoi(env);
    }
    if (deterministic) threads = 1;

    if (gen->parsed()) {
        auto st = rvegen::strategy_from_string(strategy);
        if (!st) {
            std::cerr << "config error: unknown strategy '" << strategy << "'\n";
            return kExitConfig;
        }
        cfg.strategy = *st;
        md.max_steps = max_steps;
        return cmd_generate(method, cfg, md, out_path, trace_path);
    }
    if (val->parsed()) return cmd_validate(val_in, mc_points);
    if (vox->parsed()) return cmd_voxelize(vox_in, resolution, vox_out);
    if (ben->parsed()) return cmd_bench(scenario_path, bench_out, threads);
    return kExitConfig;
}
