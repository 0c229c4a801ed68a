#include "rvegen/sample_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rvegen/voxel.hpp"

namespace rvegen {

using nlohmann::json;

namespace {

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::runtime_error("expected a 3-array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

std::string sample_to_json(const RveSample& sample) {
    json j;
    j["version"] = 1;
    j["domain_edge"] = 1.0;
    j["seed"] = sample.seed;
    j["provenance"] = to_string(sample.provenance);
    json cfg;
    cfg["f_s"] = sample.params.f_s;
    cfg["f_c"] = sample.params.f_c;
    cfg["n_s"] = sample.params.n_s;
    cfg["n_c"] = sample.params.n_c;
    cfg["aspect"] = sample.params.aspect;
    if (!sample.strategy.empty()) cfg["strategy"] = sample.strategy;
    j["config"] = cfg;

    json spheres = json::array();
    for (const auto& s : sample.spheres)
        spheres.push_back({{"center", vec_to_json(s.center)}, {"radius", s.radius}});
    j["spheres"] = spheres;

    json cylinders = json::array();
    for (const auto& c : sample.cylinders)
        cylinders.push_back({{"center", vec_to_json(c.center)},
                             {"radius", c.radius},
                             {"half_axis", vec_to_json(c.half_axis)}});
    j["cylinders"] = cylinders;

    return j.dump(2) + "\n";
}

RveSample sample_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("version", 0) != 1) throw std::runtime_error("unsupported sample version");
    if (j.value("domain_edge", 0.0) != 1.0)
        throw std::runtime_error("domain_edge must be 1.0; rescale the input");

    RveSample out;
    out.seed = j.value("seed", std::uint64_t(0));
    const std::string prov = j.value("provenance", "RSA");
    out.provenance = prov == "MD" ? Provenance::MD : Provenance::RSA;
    if (j.contains("config")) {
        const json& cfg = j["config"];
        out.params.f_s = cfg.value("f_s", 0.0);
        out.params.f_c = cfg.value("f_c", 0.0);
        out.params.n_s = cfg.value("n_s", 0);
        out.params.n_c = cfg.value("n_c", 0);
        out.params.aspect = cfg.value("aspect", 0.0);
        out.strategy = cfg.value("strategy", std::string{});
    }
    for (const json& js : j.value("spheres", json::array())) {
        SphereInc s;
        s.center = vec_from_json(js.at("center"));
        s.radius = js.at("radius").get<double>();
        validate(s);
        out.spheres.push_back(s);
    }
    for (const json& jc : j.value("cylinders", json::array())) {
        CylinderInc c;
        c.center = vec_from_json(jc.at("center"));
        c.radius = jc.at("radius").get<double>();
        c.half_axis = vec_from_json(jc.at("half_axis"));
        validate(c);
        out.cylinders.push_back(c);
    }
    return out;
}

void save_sample(const RveSample& sample, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << sample_to_json(sample);
    if (!f) throw std::runtime_error("short write to " + path);
}

RveSample load_sample(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return sample_from_json(text);
}

void write_voxel_sidecar(const VoxelGrid& grid, const RveSample& sample,
                         const std::string& path) {
    json j;
    j["resolution"] = grid.resolution;
    j["legend"] = {{"0", phase_name(0)}, {"1", phase_name(1)}, {"2", phase_name(2)}};
    j["ordering"] = "x-fastest";
    j["provenance"] = to_string(sample.provenance);
    j["seed"] = sample.seed;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << j.dump(2) << "\n";
}

} // namespace rvegen
