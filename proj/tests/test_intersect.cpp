#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rvegen/intersect.hpp"
#include "support.hpp"

using namespace rvegen;
using doctest::Approx;

TEST_CASE("sphere-sphere detection is strict about tangency") {
    SphereInc a{{0, 0, 0}, 1.0};
    SphereInc b{{1.5, 0, 0}, 1.0};
    auto ct = sphere_sphere(a, b);
    REQUIRE(ct.has_value());
    CHECK(ct->kind == ContactKind::SS);
    CHECK(a.radius + b.radius - ct->dist == Approx(0.5).epsilon(1e-12));

    SphereInc c{{2.0, 0, 0}, 1.0};
    CHECK_FALSE(sphere_sphere(a, c).has_value());

    SphereInc d{{0, 0, 0}, 0.3};
    SphereInc e{{0, 0, 0.5}, 0.4};
    auto ct2 = sphere_sphere(d, e);
    REQUIRE(ct2.has_value());
    CHECK(d.radius + e.radius - ct2->dist == Approx(0.2).epsilon(1e-12));
}

TEST_CASE("sphere-cylinder classification against hand-traced cases") {
    const CylinderInc c{{0, 0, 0}, 1.0, {0, 0, 2}};

    SUBCASE("curved-face hit") {
        auto ct = sphere_cylinder(SphereInc{{2, 0, 0}, 1.2}, c);
        REQUIRE(ct.has_value());
        CHECK(ct->kind == ContactKind::SC2);
        CHECK(ct->X == Approx(0.0).epsilon(1e-12));
        CHECK(ct->L == Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("base hit, center over the cap") {
        auto ct = sphere_cylinder(SphereInc{{0, 0, 2.5}, 1.0}, c);
        REQUIRE(ct.has_value());
        CHECK(ct->kind == ContactKind::SC3);
        CHECK(ct->X == Approx(2.5).epsilon(1e-12));
        CHECK(ct->L == Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("base-rim hit") {
        auto ct = sphere_cylinder(SphereInc{{1.2, 0, 2.2}, 0.5}, c);
        REQUIRE(ct.has_value());
        CHECK(ct->kind == ContactKind::SC4);
        CHECK(ct->X == Approx(2.2).epsilon(1e-12));
        CHECK(ct->L == Approx(1.2).epsilon(1e-12));
    }
    SUBCASE("containment goes through the curved-face branch") {
        // A cylinder swallowed by a big sphere satisfies |X| < half-length,
        // so the classifier reports the curved-face kind.
        auto ct = sphere_cylinder(SphereInc{{0, 0, 0}, 3.0}, CylinderInc{{0, 0, 0}, 0.5, {0, 0, 1}});
        REQUIRE(ct.has_value());
        CHECK(ct->kind == ContactKind::SC2);
    }
    SUBCASE("clear separation") {
        CHECK_FALSE(sphere_cylinder(SphereInc{{5, 0, 0}, 1.0},
                                    CylinderInc{{0, 0, 0}, 0.5, {0, 0, 1}})
                        .has_value());
    }
}

TEST_CASE("sphere-cylinder branch exclusivity") {
    SplitMix64 rng(12345);
    for (int i = 0; i < 20000; ++i) {
        CylinderInc c;
        c.center = {0, 0, 0};
        c.radius = rng.uniform(0.05, 0.3);
        c.half_axis = rng.unit_vector() * rng.uniform(0.05, 0.45);
        SphereInc s;
        s.radius = rng.uniform(0.05, 0.3);
        s.center = rng.unit_vector() * rng.uniform(0.0, 1.0);

        auto ct = sphere_cylinder(s, c);
        const double hl = c.half_length();
        const double X = dot(s.center - c.center, c.axis_dir());
        if (!ct) continue;
        // The reported kind must match the branch its scalars claim.
        switch (ct->kind) {
            case ContactKind::SC1: CHECK(std::fabs(X) > hl + s.radius); break;
            case ContactKind::SC2: CHECK(std::fabs(X) < hl); break;
            case ContactKind::SC3:
            case ContactKind::SC4:
                CHECK(std::fabs(X) >= hl);
                CHECK(std::fabs(X) <= hl + s.radius);
                break;
            default: FAIL("unexpected kind");
        }
    }
}

TEST_CASE("disk-disk against the orthogonal worked example") {
    Disk d1{{0, 0, 0}, 1.0, {0, 0, 1}};
    Disk d2{{0.5, 0, 0}, 1.0, {1, 0, 0}};

    auto ct = disk_disk(d1, d2);
    REQUIRE(ct.has_value());
    CHECK(ct->kind == ContactKind::D2);
    CHECK(norm(ct->pt1 - Vec3{0.5, 0, 0}) < 1e-12);

    auto swapped = disk_disk(d2, d1);
    REQUIRE(swapped.has_value());
    CHECK(swapped->kind == ContactKind::D1);

    // Foot outside both radii: separated coplanar-orthogonal disks.
    Disk far{{3.0, 0, 0}, 1.0, {1, 0, 0}};
    CHECK_FALSE(disk_disk(d1, far).has_value());
}

TEST_CASE("disk-disk foot point lies in both planes") {
    SplitMix64 rng(777);
    int found = 0;
    for (int i = 0; i < 20000; ++i) {
        Disk d1{rng.unit_vector() * rng.uniform(0, 0.2), rng.uniform(0.05, 0.4),
                rng.unit_vector()};
        Disk d2{rng.unit_vector() * rng.uniform(0, 0.4), rng.uniform(0.05, 0.4),
                rng.unit_vector()};
        auto ct = disk_disk(d1, d2);
        if (!ct) continue;
        ++found;
        CHECK(std::fabs(dot(ct->pt1 - d1.center, d1.normal)) <= 1e-9);
        CHECK(std::fabs(dot(ct->pt1 - d2.center, d2.normal)) <= 1e-9);
    }
    CHECK(found > 100);
}

TEST_CASE("cylinder-disk hand-traced cases") {
    const CylinderInc c{{0, 0, 0}, 1.0, {0, 0, 2}};

    SUBCASE("rim into the curved face") {
        auto ct = cylinder_disk(c, Disk{{1.5, 0, 0}, 1.0, {0, 0, 1}});
        REQUIRE(ct.has_value());
        CHECK(ct->kind == ContactKind::CD1);
        CHECK(norm(ct->pt1 - Vec3{0, 0, 0}) < 1e-12); // pierce point a
        CHECK(norm(ct->pt2 - Vec3{0.5, 0, 0}) < 1e-12); // rim point
        CHECK(ct->X == Approx(0.0).epsilon(1e-12));
        CHECK(norm(ct->pt3 - Vec3{0, 0, 0}) < 1e-12); // axis projection b
    }
    SUBCASE("disk crossing the axis") {
        auto ct = cylinder_disk(c, Disk{{0.5, 0, 0}, 1.0, {0, 0, 1}});
        REQUIRE(ct.has_value());
        CHECK(ct->kind == ContactKind::CD2);
    }
    SUBCASE("cylinder threading a big disk") {
        auto ct = cylinder_disk(c, Disk{{0, 0, 0}, 3.0, {0, 0, 1}});
        REQUIRE(ct.has_value());
        CHECK(ct->kind == ContactKind::CD3);
    }
    SUBCASE("disk plane beyond the caps reports nothing") {
        CHECK_FALSE(cylinder_disk(c, Disk{{0.1, 0, 3.0}, 0.6, {0.0995, 0, 0.995}}).has_value());
    }
}

TEST_CASE("cylinder-cylinder worked examples") {
    SUBCASE("perpendicular mid-body crossing") {
        CylinderInc c1{{0, 0, 0}, 0.5, {0, 0, 1}};
        CylinderInc c2{{0.8, 0, 0}, 0.5, {0, 1, 0}};
        auto cts = cylinder_cylinder(c1, c2);
        REQUIRE(cts.size() == 1);
        const Contact& ct = cts[0];
        CHECK(ct.kind == ContactKind::CC1);
        CHECK(ct.rho == Approx(0.8).epsilon(1e-12));
        CHECK(ct.t1 == Approx(0.0).epsilon(1e-12));
        CHECK(ct.t2 == Approx(0.0).epsilon(1e-12));
        CHECK(norm(ct.pt1 - Vec3{0, 0, 0}) < 1e-12);
        CHECK(norm(ct.pt2 - Vec3{0.8, 0, 0}) < 1e-12);
    }
    SUBCASE("separated") {
        CylinderInc c1{{0, 0, 0}, 0.5, {0, 0, 1}};
        CylinderInc c2{{2.0, 0, 0}, 0.5, {0, 1, 0}};
        CHECK(cylinder_cylinder(c1, c2).empty());
    }
    SUBCASE("coaxial stack: contact iff the axial gap closes") {
        CylinderInc c1{{0, 0, 0}, 0.5, {0, 0, 1}};
        CylinderInc touching{{0, 0, 1.2}, 0.5, {0, 0, 0.4}};
        CHECK_FALSE(cylinder_cylinder(c1, touching).empty());
        CylinderInc apart{{0, 0, 1.5}, 0.5, {0, 0, 0.4}};
        CHECK(cylinder_cylinder(c1, apart).empty());
    }
}

TEST_CASE("cylinder-cylinder symmetry on existence and axis distance") {
    SplitMix64 rng(31337);
    int hits = 0;
    for (int i = 0; i < 5000; ++i) {
        auto mk = [&] {
            CylinderInc c;
            c.center = rng.unit_vector() * rng.uniform(0, 0.3);
            c.radius = rng.uniform(0.03, 0.2);
            c.half_axis = rng.unit_vector() * rng.uniform(0.05, 0.45);
            return c;
        };
        CylinderInc a = mk(), b = mk();
        auto ab = cylinder_cylinder(a, b);
        auto ba = cylinder_cylinder(b, a);
        CHECK(ab.empty() == ba.empty());
        if (!ab.empty() && ab[0].kind == ContactKind::CC1 && ba[0].kind == ContactKind::CC1) {
            ++hits;
            CHECK(ab[0].rho == Approx(ba[0].rho).epsilon(1e-12));
            // Feet realize the axis distance.
            CHECK(norm(ab[0].pt1 - ab[0].pt2) == Approx(ab[0].rho).epsilon(1e-9));
        }
    }
    CHECK(hits > 50);
}

TEST_CASE("sphere symmetry") {
    SplitMix64 rng(2024);
    for (int i = 0; i < 5000; ++i) {
        SphereInc a{rng.unit_vector() * rng.uniform(0, 0.3), rng.uniform(0.05, 0.3)};
        SphereInc b{rng.unit_vector() * rng.uniform(0, 0.5), rng.uniform(0.05, 0.3)};
        auto ab = sphere_sphere(a, b);
        auto ba = sphere_sphere(b, a);
        CHECK(ab.has_value() == ba.has_value());
        if (ab) CHECK(ab->dist == Approx(ba->dist).epsilon(1e-15));
    }
}

TEST_CASE("overlap oracle calibration") {
    SUBCASE("identical spheres") {
        SphereInc s{{0.5, 0.5, 0.5}, 0.49};
        SphereInc t = s;
        // Scale-free check on a unit-radius equivalent: use r = 0.49 and
        // compare to (4/3) pi r^3.
        auto est = overlap_oracle(s, t, 200000, 5);
        const double expect = 4.0 / 3.0 * M_PI * std::pow(0.49, 3);
        CHECK(std::fabs(est.volume - expect) <= 3.0 * est.std_error);
    }
    SUBCASE("disjoint") {
        SphereInc s{{0, 0, 0}, 0.2};
        SphereInc t{{0.9, 0, 0}, 0.2};
        auto est = overlap_oracle(s, t, 50000, 6);
        CHECK(est.volume == 0.0);
    }
    SUBCASE("half-offset lens") {
        // Spheres r=0.4 at distance 0.4: scaled copy of the unit-radius
        // configuration at distance 1, whose lens volume is 5 pi / 12.
        SphereInc s{{0, 0, 0}, 0.4};
        SphereInc t{{0.4, 0, 0}, 0.4};
        auto est = overlap_oracle(s, t, 400000, 7);
        const double expect = 5.0 * M_PI / 12.0 * std::pow(0.4, 3);
        CHECK(std::fabs(est.volume - expect) <= 3.0 * est.std_error);
    }
}

TEST_CASE("predicates vs oracle on random pairs (small sweep)") {
    using namespace rvegen::testsupport;
    SplitMix64 rng(4242);
    int checked = 0, contacts = 0;
    for (int i = 0; i < 3000; ++i) {
        ShapePair p = random_pair(rng);
        auto est = oracle_for_pair(p, 20000, 9000 + i);
        bool oracle_overlap = est.volume > 3.0 * est.std_error && est.volume > 0.0;
        bool predicate = predicate_reports_contact(p);
        if (oracle_overlap) {
            ++checked;
            CHECK(predicate);
        }
        contacts += predicate;
    }
    CHECK(checked > 300);
    CHECK(contacts > checked / 2);
}

TEST_CASE("boolean fast path agrees with the classifying path") {
    SplitMix64 rng(555);
    for (int i = 0; i < 3000; ++i) {
        auto mk = [&] {
            CylinderInc c;
            c.center = rng.unit_vector() * rng.uniform(0, 0.4);
            c.radius = rng.uniform(0.03, 0.2);
            c.half_axis = rng.unit_vector() * rng.uniform(0.05, 0.45);
            return c;
        };
        CylinderInc a = mk(), b = mk();
        CHECK(any_intersection(a, b) == !cylinder_cylinder(a, b).empty());
    }
}
