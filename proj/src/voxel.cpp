#include "rvegen/voxel.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rvegen/periodic.hpp"
#include "rvegen/sample_io.hpp"
#include "rvegen/simd/kernels.hpp"

namespace rvegen {

const char* phase_name(std::uint8_t id) {
    switch (id) {
        case kPhaseMatrix: return "matrix";
        case kPhaseSphere: return "sphere";
        case kPhaseCylinder: return "cylinder";
    }
    return "?";
}

bool point_in(const SphereInc& s, const Vec3& p, bool periodic) {
    Vec3 d = p - s.center;
    if (periodic) d = min_image(d);
    return norm2(d) <= s.radius * s.radius;
}

bool point_in(const CylinderInc& c, const Vec3& p, bool periodic) {
    Vec3 d = p - c.center;
    if (periodic) d = min_image(d);
    const Vec3 dir = c.axis_dir();
    const double axial = dot(d, dir);
    if (std::fabs(axial) > c.half_length()) return false;
    const double rad2 = norm2(d) - axial * axial;
    return rad2 <= c.radius * c.radius;
}

namespace {

// Paints one inclusion by running the membership kernel over whole x-rows
// of the grid (voxel centers), restricted to the rows its bounding box can
// reach. Index ranges wrap around the cell.
template <class Shape, class KernelCall>
void paint(VoxelGrid& grid, const Shape& shape, std::uint8_t phase, KernelCall&& kernel,
           std::vector<double>& px, std::vector<double>& py, std::vector<double>& pz,
           std::vector<std::uint8_t>& mask) {
    const int res = grid.resolution;
    const double h = 1.0 / res;
    const double reach = bounding_radius(shape);

    auto index_range = [&](double c) {
        // Closed index interval covering [c - reach, c + reach].
        int lo = int(std::floor((c - reach) / h - 0.5));
        int hi = int(std::ceil((c + reach) / h - 0.5));
        if (hi - lo + 1 >= res) {
            lo = 0;
            hi = res - 1;
        }
        return std::pair<int, int>{lo, hi};
    };

    auto [x_lo, x_hi] = index_range(shape.center.x);
    auto [y_lo, y_hi] = index_range(shape.center.y);
    auto [z_lo, z_hi] = index_range(shape.center.z);

    // Canonical (wrapped) voxel-center coordinates so a given voxel is always
    // tested with identical inputs, whichever index range reached it.
    const std::size_t row_n = std::size_t(x_hi - x_lo + 1);
    px.resize(row_n);
    py.resize(row_n);
    pz.resize(row_n);
    mask.resize(row_n);
    auto wrap_idx = [res](int i) { return ((i % res) + res) % res; };
    for (std::size_t i = 0; i < row_n; ++i)
        px[i] = (double(wrap_idx(x_lo + int(i))) + 0.5) * h;

    for (int iz = z_lo; iz <= z_hi; ++iz) {
        const int wz = wrap_idx(iz);
        const double z = (double(wz) + 0.5) * h;
        for (int iy = y_lo; iy <= y_hi; ++iy) {
            const int wy = wrap_idx(iy);
            const double y = (double(wy) + 0.5) * h;
            for (std::size_t i = 0; i < row_n; ++i) {
                py[i] = y;
                pz[i] = z;
            }
            kernel(px.data(), py.data(), pz.data(), row_n, mask.data());
            for (std::size_t i = 0; i < row_n; ++i) {
                if (!mask[i]) continue;
                grid.at(wrap_idx(x_lo + int(i)), wy, wz) = phase;
            }
        }
    }
}

} // namespace

VoxelGrid voxelize(const RveSample& sample, int resolution) {
    if (resolution < 1) throw std::invalid_argument("voxel resolution must be >= 1");
    VoxelGrid grid;
    grid.resolution = resolution;
    grid.data.assign(std::size_t(resolution) * resolution * resolution, kPhaseMatrix);

    std::vector<double> px, py, pz;
    std::vector<std::uint8_t> mask;
    const auto& k = kernels::active();

    for (const SphereInc& s : sample.spheres) {
        paint(grid, s, kPhaseSphere,
              [&](const double* x, const double* y, const double* z, std::size_t n,
                  std::uint8_t* out) {
                  k.point_in_sphere(x, y, z, n, s.center.x, s.center.y, s.center.z, s.radius,
                                    true, out);
              },
              px, py, pz, mask);
    }
    // Cylinders second: they take precedence on a double claim.
    for (const CylinderInc& c : sample.cylinders) {
        const Vec3 dir = c.axis_dir();
        paint(grid, c, kPhaseCylinder,
              [&](const double* x, const double* y, const double* z, std::size_t n,
                  std::uint8_t* out) {
                  k.point_in_cylinder(x, y, z, n, c.center.x, c.center.y, c.center.z, dir.x,
                                      dir.y, dir.z, c.half_length(), c.radius, true, out);
              },
              px, py, pz, mask);
    }
    return grid;
}

double volume_fraction(const VoxelGrid& grid, std::uint8_t phase) {
    std::size_t count = 0;
    for (std::uint8_t v : grid.data) count += (v == phase);
    return double(count) / double(grid.data.size());
}

OverlapEstimate total_overlap_mc(const RveSample& sample, long n_points, std::uint64_t seed) {
    // Coverage multiplicity per point, over inclusions and their images.
    struct ImageShape {
        bool is_cyl;
        SphereInc s;
        CylinderInc c;
    };
    std::vector<ImageShape> images;
    for (const SphereInc& s : sample.spheres) {
        for (const Vec3& t : boundary_attr(s).shifts) {
            SphereInc img = s;
            img.center += t;
            images.push_back({false, img, {}});
        }
    }
    for (const CylinderInc& c : sample.cylinders) {
        for (const Vec3& t : boundary_attr(c).shifts) {
            CylinderInc img = c;
            img.center += t;
            images.push_back({true, {}, img});
        }
    }

    constexpr std::size_t kBatch = 4096;
    std::vector<double> px(kBatch), py(kBatch), pz(kBatch);
    std::vector<std::uint8_t> mask(kBatch);
    std::vector<std::uint32_t> cover(kBatch);
    const auto& k = kernels::active();
    SplitMix64 rng(seed);

    double sum = 0.0, sum_sq = 0.0;
    long remaining = n_points;
    while (remaining > 0) {
        const std::size_t m = std::min<long>(remaining, kBatch);
        for (std::size_t i = 0; i < m; ++i) {
            px[i] = rng.uniform01();
            py[i] = rng.uniform01();
            pz[i] = rng.uniform01();
            cover[i] = 0;
        }
        for (const ImageShape& img : images) {
            if (img.is_cyl) {
                const Vec3 dir = img.c.axis_dir();
                k.point_in_cylinder(px.data(), py.data(), pz.data(), m, img.c.center.x,
                                    img.c.center.y, img.c.center.z, dir.x, dir.y, dir.z,
                                    img.c.half_length(), img.c.radius, false, mask.data());
            } else {
                k.point_in_sphere(px.data(), py.data(), pz.data(), m, img.s.center.x,
                                  img.s.center.y, img.s.center.z, img.s.radius, false,
                                  mask.data());
            }
            for (std::size_t i = 0; i < m; ++i) cover[i] += mask[i];
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double pairs = 0.5 * double(cover[i]) * double(cover[i] - 1);
            sum += pairs;
            sum_sq += pairs * pairs;
        }
        remaining -= m;
    }

    const double n = double(n_points);
    OverlapEstimate est;
    est.volume = sum / n; // cell volume is 1
    const double var = std::max(sum_sq / n - (sum / n) * (sum / n), 0.0);
    est.std_error = std::sqrt(var / n);
    return est;
}

void write_raw_with_sidecar(const VoxelGrid& grid, const RveSample& sample,
                            const std::string& raw_path) {
    {
        std::ofstream f(raw_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + raw_path);
        f.write(reinterpret_cast<const char*>(grid.data.data()),
                std::streamsize(grid.data.size()));
        if (!f) throw std::runtime_error("short write to " + raw_path);
    }
    write_voxel_sidecar(grid, sample, raw_path + ".json");
}

} // namespace rvegen
