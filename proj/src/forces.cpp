#include "rvegen/forces.hpp"

#include <cmath>
#include <stdexcept>

namespace rvegen {

namespace {

Vec3 random_unit(SplitMix64& rng) { return rng.unit_vector(); }

// Unit vector along v, or a random direction when v is numerically null.
Vec3 dir_or_random(const Vec3& v, SplitMix64& rng) {
    double n = norm(v);
    if (n < kNullEps) return random_unit(rng);
    return v / n;
}

Vec3 random_perp(const Vec3& axis_dir, SplitMix64& rng) {
    while (true) {
        Vec3 c = cross(rng.unit_vector(), axis_dir);
        if (!is_null(c)) return normalized(c);
    }
}

const CylinderInc& cyl_of(const Body& body) {
    if (!body.is_cyl) throw std::logic_error("contact participant is not a cylinder");
    return body.cyl;
}

Disk disk_of(const Body& body, int label) {
    const CylinderInc& c = cyl_of(body);
    if (label == 0) throw std::logic_error("contact missing base-disk label");
    Vec3 dir = c.axis_dir();
    if (label > 0) return Disk{c.center + c.half_axis, c.radius, dir};
    return Disk{c.center - c.half_axis, c.radius, -dir};
}

// Sphere-cylinder rows: force on the cylinder, reaction on the sphere.
ContactForce sphere_cylinder_force(const Contact& ct, const SphereInc& s,
                                   const CylinderInc& c, SplitMix64& rng) {
    const double hl = c.half_length();
    const Vec3 ldir = c.axis_dir();
    const Vec3 q = c.center + ct.X * ldir; // axis foot of the sphere center
    Vec3 f_cyl;
    Vec3 pt;
    switch (ct.kind) {
        case ContactKind::SC1: {
            f_cyl = 2.0 * hl * dir_or_random(c.center - s.center, rng);
            pt = c.center;
            break;
        }
        case ContactKind::SC2: {
            const double m =
                std::sqrt(std::max((s.radius + c.radius) * (s.radius + c.radius) -
                                       ct.L * ct.L,
                                   0.0));
            Vec3 dir = (ct.L < kNullEps) ? random_perp(ldir, rng) : (q - s.center) / ct.L;
            f_cyl = m * dir;
            pt = s.center + (s.radius - m) * dir;
            break;
        }
        case ContactKind::SC3: {
            const double depth = hl + s.radius - std::fabs(ct.X);
            const double sgn = ct.X >= 0.0 ? 1.0 : -1.0;
            f_cyl = -depth * sgn * ldir;
            pt = s.center;
            break;
        }
        case ContactKind::SC4: {
            const double cap = std::sqrt(std::max(
                s.radius * s.radius - (std::fabs(ct.X) - hl) * (std::fabs(ct.X) - hl), 0.0));
            const double m = cap + c.radius - ct.L;
            const Vec3 dir = dir_or_random(q - s.center, rng);
            f_cyl = m * dir;
            pt = q - c.radius * dir;
            break;
        }
        default:
            throw std::logic_error("not a sphere-cylinder contact kind");
    }
    return {f_cyl, pt};
}

// Disk-into-curved-face rows: force on the cylinder side, reaction on the
// owner of the disk.
ContactForce cylinder_disk_force(const Contact& ct, const CylinderInc& c, const Disk& d,
                                 SplitMix64& rng) {
    const Vec3 pt_c = ct.pt2;
    const Vec3 b = ct.pt3;
    const double dbp = norm(b - pt_c);
    Vec3 f_cyl;
    Vec3 pt;
    switch (ct.kind) {
        case ContactKind::CD1: {
            f_cyl = (c.radius - dbp) * dir_or_random(b - pt_c, rng);
            pt = pt_c;
            break;
        }
        case ContactKind::CD2: {
            // Pushes the axis toward the nearest rim crossing; the sign is
            // kept as tabulated.
            f_cyl = (2.0 * c.radius - dbp) * dir_or_random(pt_c - b, rng);
            pt = pt_c;
            break;
        }
        case ContactKind::CD3: {
            f_cyl = 2.0 * c.radius * dir_or_random(c.center - d.center, rng);
            pt = ct.pt1; // axis-plane piercing point
            break;
        }
        default:
            throw std::logic_error("not a cylinder-disk contact kind");
    }
    return {f_cyl, pt};
}

} // namespace

ContactForce force_for_contact(const Contact& ct, const Body& a, const Body& b,
                               SplitMix64& rng) {
    switch (ct.kind) {
        case ContactKind::SS: {
            if (a.is_cyl || b.is_cyl) throw std::logic_error("SS contact needs two spheres");
            const double depth = a.sph.radius + b.sph.radius - ct.dist;
            if (depth <= 0.0 || !std::isfinite(depth))
                throw std::logic_error("SS contact without penetration depth");
            const Vec3 dir = dir_or_random(a.sph.center - b.sph.center, rng);
            return {depth * dir, 0.5 * (a.sph.center + b.sph.center)};
        }

        case ContactKind::SC1:
        case ContactKind::SC2:
        case ContactKind::SC3:
        case ContactKind::SC4: {
            // Convention: the sphere is participant A.
            ContactForce on_cyl = sphere_cylinder_force(ct, a.sph, cyl_of(b), rng);
            return {-on_cyl.force_on_a, on_cyl.point};
        }

        case ContactKind::CC1: {
            const CylinderInc& c1 = cyl_of(a);
            const CylinderInc& c2 = cyl_of(b);
            const double depth = c1.radius + c2.radius - ct.rho;
            const Vec3 dir = dir_or_random(ct.pt1 - ct.pt2, rng);
            return {depth * dir, 0.5 * (ct.pt1 + ct.pt2)};
        }

        case ContactKind::CD1:
        case ContactKind::CD2:
        case ContactKind::CD3: {
            // The side without a base label is the cylinder of the row.
            if (ct.disk_b != 0 && ct.disk_a == 0) {
                ContactForce on_cyl =
                    cylinder_disk_force(ct, cyl_of(a), disk_of(b, ct.disk_b), rng);
                return on_cyl;
            }
            if (ct.disk_a != 0 && ct.disk_b == 0) {
                ContactForce on_cyl =
                    cylinder_disk_force(ct, cyl_of(b), disk_of(a, ct.disk_a), rng);
                return {-on_cyl.force_on_a, on_cyl.point};
            }
            throw std::logic_error("cylinder-disk contact without a unique disk side");
        }

        case ContactKind::D1:
        case ContactKind::D2: {
            const Disk d1 = disk_of(a, ct.disk_a);
            const Disk d2 = disk_of(b, ct.disk_b);
            const Vec3 pt = ct.pt1;
            const double e1 = norm(pt - d1.center);
            const double e2 = norm(pt - d2.center);
            const double margin =
                ct.kind == ContactKind::D1 ? d2.radius - e2 : d1.radius - e1;
            const Vec3 n = ct.kind == ContactKind::D1 ? d1.normal : d2.normal;
            // The tabulated direction is along a base normal; orient it to
            // repel the owning cylinders.
            const Vec3 sep = a.center() - b.center();
            Vec3 dir = n;
            double along = dot(dir, sep);
            if (std::fabs(along) < kNullEps * kNullEps)
                dir = random_unit(rng);
            else if (along < 0.0)
                dir = -dir;
            return {margin * dir, pt};
        }
    }
    throw std::logic_error("unhandled contact kind");
}

SystemForces accumulate(const RveSample& sample, const std::vector<Contact>& contacts,
                        SplitMix64& rng, ForceSet* detail) {
    SystemForces sys;
    const int n = sample.size();
    sys.force.assign(n, Vec3{});
    sys.torque.assign(n, Vec3{});
    if (detail) {
        detail->entries.clear();
        detail->potential_energy = 0.0;
    }

    const int ns = sample.n_spheres();
    auto body_at = [&](int idx, const Vec3& shift) {
        if (sample.is_cylinder(idx)) {
            CylinderInc c = sample.cylinders[idx - ns];
            c.center += shift;
            return Body::cylinder(c);
        }
        SphereInc s = sample.spheres[idx];
        s.center += shift;
        return Body::sphere(s);
    };

    for (const Contact& ct : contacts) {
        const Body a = body_at(ct.a, Vec3{0, 0, 0});
        const Body b = body_at(ct.b, ct.shift);
        const ContactForce cf = force_for_contact(ct, a, b, rng);

        sys.force[ct.a] += cf.force_on_a;
        sys.force[ct.b] -= cf.force_on_a;
        sys.torque[ct.a] += cross(cf.point - a.center(), cf.force_on_a);
        sys.torque[ct.b] += cross(cf.point - b.center(), -cf.force_on_a);
        sys.potential_energy += norm2(cf.force_on_a);

        if (detail) {
            detail->entries.push_back({cf.force_on_a, cf.point, ct.a});
            detail->entries.push_back({-cf.force_on_a, cf.point, ct.b});
        }
    }
    if (detail) detail->potential_energy = sys.potential_energy;
    return sys;
}

} // namespace rvegen
