#include "rvegen/periodic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>

namespace rvegen {

namespace {

// Distance from a point to the closed unit cube.
double dist_to_cell(const Vec3& p) {
    double dx = std::max({0.0 - p.x, p.x - 1.0, 0.0});
    double dy = std::max({0.0 - p.y, p.y - 1.0, 0.0});
    double dz = std::max({0.0 - p.z, p.z - 1.0, 0.0});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

const std::array<Vec3, 27>& all_shifts() {
    static const std::array<Vec3, 27> s = [] {
        std::array<Vec3, 27> a{};
        int k = 0;
        for (int x = -1; x <= 1; ++x)
            for (int y = -1; y <= 1; ++y)
                for (int z = -1; z <= 1; ++z) a[k++] = Vec3(double(x), double(y), double(z));
        return a;
    }();
    return s;
}

// Lexicographically positive half of the nonzero shifts.
const std::array<Vec3, 13>& half_shifts() {
    static const std::array<Vec3, 13> s = [] {
        std::array<Vec3, 13> a{};
        int k = 0;
        for (const Vec3& v : all_shifts()) {
            if (v.x > 0 || (v.x == 0 && (v.y > 0 || (v.y == 0 && v.z > 0)))) a[k++] = v;
        }
        return a;
    }();
    return s;
}

template <class A, class B, class Fn>
void for_touching_images(const A& a, const B& b, Fn&& fn) {
    const double reach = bounding_radius(a) + bounding_radius(b);
    const double reach2 = reach * reach;
    for (const Vec3& t : all_shifts()) {
        Vec3 cb = b.center + t;
        if (norm2(cb - a.center) >= reach2) continue;
        B moved = b;
        moved.center = cb;
        if (fn(moved, t)) return;
    }
}

template <class S, class Fn>
void for_self_images(const S& s, Fn&& fn) {
    const double reach = 2.0 * bounding_radius(s);
    const double reach2 = reach * reach;
    for (const Vec3& t : half_shifts()) {
        if (norm2(t) >= reach2) continue;
        S moved = s;
        moved.center = s.center + t;
        if (fn(moved, t)) return;
    }
}

template <class A, class B>
std::vector<Contact> periodic_contacts_impl(const A& a, const B& b) {
    std::vector<Contact> out;
    for_touching_images(a, b, [&](const B& img, const Vec3& t) {
        if constexpr (std::is_same_v<A, SphereInc> && std::is_same_v<B, SphereInc>) {
            if (auto ct = sphere_sphere(a, img)) {
                ct->shift = t;
                out.push_back(*ct);
            }
        } else if constexpr (std::is_same_v<A, SphereInc> && std::is_same_v<B, CylinderInc>) {
            if (auto ct = sphere_cylinder(a, img)) {
                ct->shift = t;
                out.push_back(*ct);
            }
        } else {
            for (Contact ct : cylinder_cylinder(a, img)) {
                ct.shift = t;
                out.push_back(ct);
            }
        }
        return false;
    });
    return out;
}

} // namespace

BoundaryAttr boundary_attr(const Vec3& center, double bounding_radius) {
    BoundaryAttr attr;
    attr.shifts.push_back({0, 0, 0});
    for (const Vec3& t : all_shifts()) {
        if (t == Vec3{0, 0, 0}) continue;
        if (dist_to_cell(center + t) <= bounding_radius) attr.shifts.push_back(t);
    }
    return attr;
}

std::vector<Contact> periodic_contacts(const SphereInc& a, const SphereInc& b) {
    return periodic_contacts_impl(a, b);
}
std::vector<Contact> periodic_contacts(const SphereInc& a, const CylinderInc& b) {
    return periodic_contacts_impl(a, b);
}
std::vector<Contact> periodic_contacts(const CylinderInc& a, const CylinderInc& b) {
    return periodic_contacts_impl(a, b);
}

std::vector<Contact> self_image_contacts(const SphereInc& s) {
    std::vector<Contact> out;
    for_self_images(s, [&](const SphereInc& img, const Vec3& t) {
        if (auto ct = sphere_sphere(s, img)) {
            ct->shift = t;
            out.push_back(*ct);
        }
        return false;
    });
    return out;
}

std::vector<Contact> self_image_contacts(const CylinderInc& c) {
    std::vector<Contact> out;
    for_self_images(c, [&](const CylinderInc& img, const Vec3& t) {
        for (Contact ct : cylinder_cylinder(c, img)) {
            ct.shift = t;
            out.push_back(ct);
        }
        return false;
    });
    return out;
}

bool periodic_any(const SphereInc& a, const SphereInc& b) {
    bool hit = false;
    for_touching_images(a, b, [&](const SphereInc& img, const Vec3&) {
        hit = any_intersection(a, img);
        return hit;
    });
    return hit;
}

bool periodic_any(const SphereInc& a, const CylinderInc& b) {
    bool hit = false;
    for_touching_images(a, b, [&](const CylinderInc& img, const Vec3&) {
        hit = any_intersection(a, img);
        return hit;
    });
    return hit;
}

bool periodic_any(const CylinderInc& a, const CylinderInc& b) {
    bool hit = false;
    for_touching_images(a, b, [&](const CylinderInc& img, const Vec3&) {
        hit = any_intersection(a, img);
        return hit;
    });
    return hit;
}

bool self_image_any(const SphereInc& s) {
    bool hit = false;
    for_self_images(s, [&](const SphereInc& img, const Vec3&) {
        hit = any_intersection(s, img);
        return hit;
    });
    return hit;
}

bool self_image_any(const CylinderInc& c) {
    bool hit = false;
    for_self_images(c, [&](const CylinderInc& img, const Vec3&) {
        hit = any_intersection(c, img);
        return hit;
    });
    return hit;
}

std::vector<Contact> all_contacts(const RveSample& sample) {
    std::vector<Contact> out;
    const int ns = sample.n_spheres();
    const int n = sample.size();

    auto tag = [](std::vector<Contact> cts, int i, int j) {
        for (Contact& ct : cts) {
            ct.a = i;
            ct.b = j;
        }
        return cts;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<Contact> cts;
            if (!sample.is_cylinder(i) && !sample.is_cylinder(j))
                cts = periodic_contacts(sample.spheres[i], sample.spheres[j]);
            else if (!sample.is_cylinder(i) && sample.is_cylinder(j))
                cts = periodic_contacts(sample.spheres[i], sample.cylinders[j - ns]);
            else
                cts = periodic_contacts(sample.cylinders[i - ns], sample.cylinders[j - ns]);
            auto tagged = tag(std::move(cts), i, j);
            out.insert(out.end(), tagged.begin(), tagged.end());
        }
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Contact> cts = sample.is_cylinder(i)
                                       ? self_image_contacts(sample.cylinders[i - ns])
                                       : self_image_contacts(sample.spheres[i]);
        auto tagged = tag(std::move(cts), i, i);
        out.insert(out.end(), tagged.begin(), tagged.end());
    }
    return out;
}

bool has_any_contact(const RveSample& sample) {
    const int ns = sample.n_spheres();
    const int n = sample.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool hit;
            if (!sample.is_cylinder(i) && !sample.is_cylinder(j))
                hit = periodic_any(sample.spheres[i], sample.spheres[j]);
            else if (!sample.is_cylinder(i) && sample.is_cylinder(j))
                hit = periodic_any(sample.spheres[i], sample.cylinders[j - ns]);
            else
                hit = periodic_any(sample.cylinders[i - ns], sample.cylinders[j - ns]);
            if (hit) return true;
        }
    }
    for (int i = 0; i < n; ++i) {
        bool hit = sample.is_cylinder(i) ? self_image_any(sample.cylinders[i - ns])
                                         : self_image_any(sample.spheres[i]);
        if (hit) return true;
    }
    return false;
}

} // namespace rvegen
