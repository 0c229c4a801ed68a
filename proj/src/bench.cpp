#include "rvegen/bench.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

namespace rvegen {

using nlohmann::json;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

RunRecord run_once(const Scenario& s, const ScenarioCell& cell, double aspect,
                   std::uint64_t seed) {
    RunRecord rec;
    rec.seed = seed;
    const double t0 = now_seconds();
    if (s.generator == GeneratorKind::RSA) {
        RsaConfig cfg;
        cfg.f_s = cell.f_s;
        cfg.f_c = cell.f_c;
        cfg.n_s = s.n_s;
        cfg.n_c = s.n_c;
        cfg.aspect = aspect;
        cfg.strategy = s.strategy;
        cfg.seed = seed;
        cfg.max_attempts_per_object = s.max_attempts;
        cfg.time_budget_s = s.time_cap_s;
        rec.success = generate(cfg).ok();
    } else {
        RsaConfig cfg;
        cfg.f_s = cell.f_s;
        cfg.f_c = cell.f_c;
        cfg.n_s = s.n_s;
        cfg.n_c = s.n_c;
        cfg.aspect = aspect;
        MdParams md = s.md;
        md.max_steps = s.md_max_steps;
        MdState st = init_overlapping(cfg, seed);
        rec.success = relax(st, md).converged;
    }
    rec.seconds = now_seconds() - t0;
    return rec;
}

CellResult run_cell(const Scenario& s, const ScenarioCell& cell, double aspect,
                    std::uint64_t cell_seed_base) {
    CellResult res;
    res.cell = cell;
    res.aspect = aspect;
    double total = 0.0;
    for (int r = 0; r < s.runs; ++r) {
        RunRecord rec = run_once(s, cell, aspect, cell_seed_base + std::uint64_t(r));
        if (rec.success) {
            ++res.success_count;
            total += rec.seconds;
        }
        res.runs.push_back(rec);
    }
    res.mean_time = res.success_count > 0 ? total / res.success_count : 0.0;
    return res;
}

} // namespace

BenchResult run_scenario(const Scenario& s) {
    BenchResult result;
    struct Job {
        ScenarioCell cell;
        double aspect;
        std::uint64_t seed_base;
    };
    std::vector<Job> jobs;
    std::uint64_t stride = 0;
    for (double aspect : s.aspects)
        for (const ScenarioCell& cell : s.cells)
            jobs.push_back({cell, aspect, s.seed_base + 100000ULL * stride++});

    if (s.threads <= 1) {
        for (const Job& j : jobs) result.cells.push_back(run_cell(s, j.cell, j.aspect, j.seed_base));
        return result;
    }

    result.cells.resize(jobs.size());
    std::size_t next = 0;
    std::vector<std::future<void>> workers;
    std::mutex mu;
    for (int t = 0; t < s.threads; ++t) {
        workers.push_back(std::async(std::launch::async, [&] {
            while (true) {
                std::size_t idx;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= jobs.size()) return;
                    idx = next++;
                }
                result.cells[idx] = run_cell(s, jobs[idx].cell, jobs[idx].aspect,
                                             jobs[idx].seed_base);
            }
        }));
    }
    for (auto& w : workers) w.get();
    return result;
}

Scenario scenario_from_json(const std::string& text) {
    json j = json::parse(text);
    Scenario s;
    const std::string gen = j.value("generator", "rsa");
    if (gen == "rsa" || gen == "RSA")
        s.generator = GeneratorKind::RSA;
    else if (gen == "md" || gen == "MD")
        s.generator = GeneratorKind::MD;
    else
        throw std::runtime_error("scenario generator must be \"rsa\" or \"md\"");

    if (j.contains("cells")) {
        for (const json& c : j["cells"])
            s.cells.push_back({c.at("f_s").get<double>(), c.at("f_c").get<double>()});
    } else if (j.contains("grid")) {
        const json& g = j["grid"];
        const double lo = g.value("f_lo", 0.05);
        const double hi = g.value("f_hi", 0.30);
        const double step = g.value("f_step", 0.05);
        const double cap = g.value("sum_cap", 1.0);
        for (double fs = lo; fs <= hi + 1e-12; fs += step)
            for (double fc = lo; fc <= hi + 1e-12; fc += step)
                if (fs + fc < cap) s.cells.push_back({fs, fc});
    } else {
        throw std::runtime_error("scenario needs \"cells\" or \"grid\"");
    }

    s.n_s = j.value("n_s", 10);
    s.n_c = j.value("n_c", 10);
    if (j.contains("aspects"))
        s.aspects = j["aspects"].get<std::vector<double>>();
    else
        s.aspects = {j.value("aspect", 3.0)};
    s.runs = j.value("runs", 20);
    s.time_cap_s = j.value("time_cap_s", 50.0);
    s.max_attempts = j.value("max_attempts", 1000000L);
    s.seed_base = j.value("seed_base", std::uint64_t(1));
    if (j.contains("strategy")) {
        auto st = strategy_from_string(j["strategy"].get<std::string>());
        if (!st) throw std::runtime_error("unknown strategy in scenario");
        s.strategy = *st;
    }
    s.md_max_steps = j.value("md_max_steps", 200000L);
    if (j.contains("md")) {
        const json& m = j["md"];
        s.md.dt = m.value("dt", 0.0);
        s.md.beta = m.value("beta", s.md.beta);
        s.md.alpha_ber = m.value("alpha_ber", s.md.alpha_ber);
        s.md.alpha_nh = m.value("alpha_nh", s.md.alpha_nh);
        s.md.e_stop = m.value("e_stop", 0.0);
        s.md.rescale_enabled = m.value("rescale", true);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return scenario_from_json(text);
}

void write_bench_csv(const BenchResult& result, const Scenario& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "generator,aspect,f_s,f_c,run,seed,seconds,success\n";
    const char* gen = s.generator == GeneratorKind::RSA ? "rsa" : "md";
    for (const CellResult& cell : result.cells) {
        for (std::size_t r = 0; r < cell.runs.size(); ++r) {
            const RunRecord& rec = cell.runs[r];
            f << gen << ',' << cell.aspect << ',' << cell.cell.f_s << ',' << cell.cell.f_c
              << ',' << r << ',' << rec.seed << ',' << rec.seconds << ','
              << (rec.success ? 1 : 0) << '\n';
        }
    }
}

std::vector<CrossoverRow> compare_crossover(double f_lo, double f_hi, double f_step,
                                            int n_c, double aspect, int runs,
                                            double rsa_time_cap, long rsa_max_attempts,
                                            const MdParams& md, std::uint64_t seed_base) {
    std::vector<CrossoverRow> rows;
    std::uint64_t stride = 0;
    for (double f = f_lo; f <= f_hi + 1e-12; f += f_step) {
        CrossoverRow row;
        row.f = f;
        double rsa_total = 0.0, md_total = 0.0;
        for (int r = 0; r < runs; ++r) {
            const std::uint64_t seed = seed_base + 100000ULL * stride + std::uint64_t(r);
            {
                RsaConfig cfg;
                cfg.f_c = f;
                cfg.n_c = n_c;
                cfg.aspect = aspect;
                cfg.seed = seed;
                cfg.max_attempts_per_object = rsa_max_attempts;
                cfg.time_budget_s = rsa_time_cap;
                const double t0 = now_seconds();
                if (generate(cfg).ok()) {
                    ++row.rsa_success;
                    rsa_total += now_seconds() - t0;
                }
            }
            {
                RsaConfig cfg;
                cfg.f_c = f;
                cfg.n_c = n_c;
                cfg.aspect = aspect;
                MdState st = init_overlapping(cfg, seed);
                const double t0 = now_seconds();
                if (relax(st, md).converged) {
                    ++row.md_success;
                    md_total += now_seconds() - t0;
                }
            }
        }
        row.rsa_mean = row.rsa_success ? rsa_total / row.rsa_success : 0.0;
        row.md_mean = row.md_success ? md_total / row.md_success : 0.0;
        rows.push_back(row);
        ++stride;
    }
    return rows;
}

void write_crossover_csv(const std::vector<CrossoverRow>& rows, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "f,rsa_mean,md_mean,rsa_success,md_success\n";
    for (const CrossoverRow& r : rows)
        f << r.f << ',' << r.rsa_mean << ',' << r.md_mean << ',' << r.rsa_success << ','
          << r.md_success << '\n';
}

} // namespace rvegen
