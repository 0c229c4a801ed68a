#pragma once
// Classified intersection records. Each contact stores the scalars and
// points its force-law row consumes, in the frame where participant B has
// already been translated by `shift` (periodic image handling).

#include <cstdint>

#include "rvegen/vec3.hpp"

namespace rvegen {

enum class ContactKind : std::uint8_t {
    SS,  // sphere - sphere
    SC1, // cylinder inside sphere (degenerate)
    SC2, // sphere against the curved face
    SC3, // sphere against a base, center inside the infinite cylinder
    SC4, // sphere against a base rim
    CC1, // curved face against curved face
    CD1, // disk rim into the curved face
    CD2, // disk crossing the cylinder axis
    CD3, // cylinder threading through the disk
    D1,  // base disk pair, first disk deeper
    D2,  // base disk pair, second disk deeper
};

const char* to_string(ContactKind k);

struct Contact {
    ContactKind kind = ContactKind::SS;

    // Global inclusion indices of the participants (pair-local calls use 0/1).
    int a = 0;
    int b = 1;
    // Lattice translation applied to participant B for this contact.
    Vec3 shift{0, 0, 0};
    // Which base disk of a participant is involved: -1/+1 selects the base at
    // center -/+ half_axis, 0 means the body itself.
    int disk_a = 0;
    int disk_b = 0;

    // Scalar payload (meaning depends on kind; unused fields stay 0).
    double dist = 0; // SS: center distance
    double X = 0;    // SC: axis abscissa of the sphere center
                     // CD: axis abscissa of the projection of pt_c
    double L = 0;    // SC: distance from the sphere center to the axis
    double rho = 0;  // CC1: distance between the axes
    double t1 = 0;   // CC1: axis parameters of the common-normal feet
    double t2 = 0;
    double t = 0; // D: line parameter of the foot point

    // Point payload.
    Vec3 pt1{0, 0, 0}; // CC1: foot on axis 1 | CD: plane-piercing point a | D: foot pt
    Vec3 pt2{0, 0, 0}; // CC1: foot on axis 2 | CD: closest disk-rim point pt_c
    Vec3 pt3{0, 0, 0}; // CD: axis projection b of pt_c
};

} // namespace rvegen
