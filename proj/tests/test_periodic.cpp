#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rvegen/periodic.hpp"
#include "rvegen/rng.hpp"

using namespace rvegen;
using doctest::Approx;

TEST_CASE("boundary attribute shift counts") {
    // Interior sphere: only the identity shift.
    CHECK(boundary_attr(SphereInc{{0.5, 0.5, 0.5}, 0.1}).shifts.size() == 1);
    // Face crossing adds the opposite image.
    auto attr = boundary_attr(SphereInc{{0.05, 0.5, 0.5}, 0.1});
    CHECK(attr.shifts.size() == 2);
    bool has_plus = false;
    for (const Vec3& s : attr.shifts) has_plus |= (s == Vec3{1, 0, 0});
    CHECK(has_plus);
    // Corner sphere acts as eight objects.
    CHECK(boundary_attr(SphereInc{{0.001, 0.001, 0.001}, 0.1}).shifts.size() == 8);
}

TEST_CASE("contacts through the periodic boundary") {
    SphereInc a{{0.02, 0.5, 0.5}, 0.1};
    SphereInc b{{0.98, 0.5, 0.5}, 0.1};
    auto cts = periodic_contacts(a, b);
    REQUIRE(cts.size() == 1);
    CHECK(cts[0].kind == ContactKind::SS);
    // Gap through the face is 0.04, so depth is 0.16.
    CHECK(0.2 - cts[0].dist == Approx(0.16).epsilon(1e-12));

    SphereInc far1{{0.2, 0.2, 0.2}, 0.05};
    SphereInc far2{{0.7, 0.7, 0.7}, 0.05};
    CHECK(periodic_contacts(far1, far2).empty());
}

TEST_CASE("self-image contacts") {
    // Valid-sized inclusions cannot touch their own images.
    CylinderInc ok{{0.5, 0.5, 0.5}, 0.05, {0, 0, 0.45}};
    CHECK(self_image_contacts(ok).empty());

    // An oversized diagonal cylinder does (stress-test configuration).
    CylinderInc fat{{0.5, 0.5, 0.5}, 0.24, {0.28, 0.28, 0.2}};
    CHECK_FALSE(self_image_contacts(fat).empty());
    CHECK(self_image_any(fat));
}

TEST_CASE("translation covariance of the contact multiset") {
    SplitMix64 rng(99);
    RveSample sample;
    for (int i = 0; i < 6; ++i)
        sample.spheres.push_back({rng.point_in_unit_cube(), rng.uniform(0.08, 0.22)});
    for (int i = 0; i < 6; ++i) {
        CylinderInc c;
        c.center = rng.point_in_unit_cube();
        c.radius = rng.uniform(0.04, 0.1);
        c.half_axis = rng.unit_vector() * rng.uniform(0.1, 0.3);
        sample.cylinders.push_back(c);
    }

    auto base = all_contacts(sample);

    RveSample moved = sample;
    const Vec3 shift{0.37, -0.81, 0.123};
    for (auto& s : moved.spheres) s.center = wrap01(s.center + shift);
    for (auto& c : moved.cylinders) c.center = wrap01(c.center + shift);
    auto shifted = all_contacts(moved);

    REQUIRE(base.size() == shifted.size());

    auto depth_of = [&](const RveSample& sm, const Contact& ct) {
        // A kind-independent penetration scalar for multiset comparison.
        switch (ct.kind) {
            case ContactKind::SS: return ct.dist;
            case ContactKind::SC1:
            case ContactKind::SC2:
            case ContactKind::SC3:
            case ContactKind::SC4: return ct.L + std::fabs(ct.X);
            case ContactKind::CC1: return ct.rho;
            default: return norm(ct.pt2 - ct.pt3);
        }
        (void)sm;
    };
    std::vector<std::pair<int, double>> d1, d2;
    for (const auto& ct : base) d1.push_back({int(ct.kind), depth_of(sample, ct)});
    for (const auto& ct : shifted) d2.push_back({int(ct.kind), depth_of(moved, ct)});
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    for (std::size_t i = 0; i < d1.size(); ++i) {
        CHECK(d1[i].first == d2[i].first);
        CHECK(d1[i].second == Approx(d2[i].second).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("full sweep matches the boolean sweep") {
    SplitMix64 rng(123);
    for (int rep = 0; rep < 20; ++rep) {
        RveSample sample;
        for (int i = 0; i < 5; ++i)
            sample.spheres.push_back({rng.point_in_unit_cube(), rng.uniform(0.05, 0.15)});
        for (int i = 0; i < 5; ++i) {
            CylinderInc c;
            c.center = rng.point_in_unit_cube();
            c.radius = rng.uniform(0.03, 0.08);
            c.half_axis = rng.unit_vector() * rng.uniform(0.08, 0.3);
            sample.cylinders.push_back(c);
        }
        CHECK(has_any_contact(sample) == !all_contacts(sample).empty());
    }
}

TEST_CASE("wrapping helpers") {
    CHECK(wrap01(1.25) == Approx(0.25));
    CHECK(wrap01(-0.25) == Approx(0.75));
    CHECK(wrap01(Vec3{1.1, -0.1, 0.5}).x == Approx(0.1));
    CHECK(min_image(0.6) == Approx(-0.4));
    CHECK(min_image(-0.6) == Approx(0.4));
    CHECK(min_image(0.4) == Approx(0.4));
}
