#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rvegen/rng.hpp"
#include "rvegen/shapes.hpp"
#include "rvegen/vec3.hpp"

using namespace rvegen;

TEST_CASE("vector algebra basics") {
    CHECK(cross(Vec3{0, 0, 1}, Vec3{0, 1, 0}) == Vec3{-1, 0, 0});
    CHECK(dot(Vec3{1, 2, 3}, Vec3{4, 5, 6}) == 32.0);
    CHECK(norm(Vec3{3, 4, 0}) == 5.0);
}

TEST_CASE("cross product is orthogonal to its arguments") {
    SplitMix64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        Vec3 u{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Vec3 c = cross(u, v);
        double bound = 1e-12 * norm2(u) * norm2(v);
        CHECK(std::fabs(dot(c, u)) <= bound + 1e-300);
        CHECK(std::fabs(dot(c, v)) <= bound + 1e-300);
    }
}

TEST_CASE("cylinder bases") {
    CylinderInc c{{0, 0, 0}, 1.0, {0, 0, 2}};
    auto [top, bottom] = cylinder_bases(c);
    CHECK(top.center == Vec3{0, 0, 2});
    CHECK(bottom.center == Vec3{0, 0, -2});
    CHECK(top.normal == Vec3{0, 0, 1});
    CHECK(bottom.normal == Vec3{0, 0, -1});
    CHECK(top.radius == 1.0);

    CylinderInc c2{{1, 1, 1}, 0.2, {0.5, 0, 0}};
    auto [t2, b2] = cylinder_bases(c2);
    CHECK(t2.center == Vec3{1.5, 1, 1});
    CHECK(b2.center == Vec3{0.5, 1, 1});
}

TEST_CASE("base centers differ by exactly twice the half-axis") {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        CylinderInc c;
        c.center = rng.point_in_unit_cube();
        c.radius = rng.uniform(0.01, 0.2);
        c.half_axis = rng.unit_vector() * rng.uniform(0.05, 0.45);
        auto [top, bottom] = cylinder_bases(c);
        Vec3 diff = top.center - bottom.center;
        Vec3 expect = 2.0 * c.half_axis;
        CHECK(norm(diff - expect) < 1e-15);
        // Base centers average back to the cylinder center.
        CHECK(norm(0.5 * (top.center + bottom.center) - c.center) < 1e-15);
    }
}

TEST_CASE("shape validation rejects out-of-contract inputs") {
    CHECK_THROWS(validate(SphereInc{{0, 0, 0}, -1.0}));
    CHECK_THROWS(validate(SphereInc{{0, 0, 0}, 0.5}));  // diameter == edge
    CHECK_NOTHROW(validate(SphereInc{{0, 0, 0}, 0.49}));
    CHECK_THROWS(validate(CylinderInc{{0, 0, 0}, 0.1, {0, 0, 0}}));
    CHECK_THROWS(validate(CylinderInc{{0, 0, 0}, 0.1, {0, 0, 0.5}}));
    CHECK_NOTHROW(validate(CylinderInc{{0, 0, 0}, 0.1, {0, 0, 0.45}}));
    double nan = std::nan("");
    CHECK_THROWS(validate(SphereInc{{nan, 0, 0}, 0.1}));
}

TEST_CASE("rng determinism and uniform direction sanity") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    SplitMix64 rng(3);
    Vec3 mean{};
    for (int i = 0; i < 20000; ++i) {
        Vec3 u = rng.unit_vector();
        CHECK(std::fabs(norm(u) - 1.0) < 1e-12);
        mean += u;
    }
    mean = mean / 20000.0;
    CHECK(norm(mean) < 0.02); // isotropy: the mean direction vanishes
}
