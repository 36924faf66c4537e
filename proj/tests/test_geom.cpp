#include <doctest.h>

#include "confdisk/geom.hpp"
#include "confdisk/types.hpp"

using namespace confdisk;

TEST_CASE("arc_length basics") {
    auto I = [](double a, double b) {
        return ArcInterval{Angle::from_turns(a), Angle::from_turns(b)};
    };
    CHECK(arc_length(I(0.0, 0.5)) == doctest::Approx(0.5));
    ArcInterval full;
    full.full_circle = true;
    CHECK(arc_length(full) == doctest::Approx(1.0));
    CHECK(arc_length(I(0.9, 0.1)) == doctest::Approx(0.2));
    // complement identity
    Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        double a = rng.next_double(), b = rng.next_double();
        if (std::fabs(a - b) < 1e-9) continue;
        CHECK(arc_length(I(a, b)) + arc_length(I(b, a)) == doctest::Approx(1.0));
    }
}

TEST_CASE("arc_contains") {
    auto I = [](double a, double b, bool closed = true) {
        return ArcInterval{Angle::from_turns(a), Angle::from_turns(b), closed};
    };
    CHECK(arc_contains(I(0.0, 0.5), Angle::from_turns(0.25)));
    CHECK(arc_contains(I(0.9, 0.1), Angle::from_turns(0.0)));
    CHECK_FALSE(arc_contains(I(0.0, 0.5, false), Angle::from_turns(0.5)));
    CHECK_FALSE(arc_contains(I(0.0, 0.5), Angle::from_turns(0.75)));
}

TEST_CASE("cyclic_order") {
    auto a = [](double t) { return Angle::from_turns(t); };
    CHECK(cyclic_order(a(0.0), a(0.1), a(0.2)));
    CHECK_FALSE(cyclic_order(a(0.0), a(0.2), a(0.1)));
    CHECK(cyclic_order(a(0.9), a(0.0), a(0.1)));
    CHECK_THROWS_AS(cyclic_order(a(0.1), a(0.1), a(0.2)), PreconditionError);
}

TEST_CASE("arc_contains consistent with cyclic_order") {
    Rng rng(11);
    for (int k = 0; k < 300; ++k) {
        double a = rng.next_double(), b = rng.next_double(), c = rng.next_double();
        if (angle_distance(Angle::from_turns(a), Angle::from_turns(b)) < 1e-6) continue;
        if (angle_distance(Angle::from_turns(b), Angle::from_turns(c)) < 1e-6) continue;
        if (angle_distance(Angle::from_turns(a), Angle::from_turns(c)) < 1e-6) continue;
        ArcInterval I{Angle::from_turns(a), Angle::from_turns(c)};
        bool contains = arc_contains(I, Angle::from_turns(b));
        bool order = cyclic_order(Angle::from_turns(a), Angle::from_turns(b), Angle::from_turns(c));
        CHECK(contains == order);
    }
}

TEST_CASE("boundary_distance on builtins") {
    auto disk = make_unit_disk();
    CHECK(boundary_distance(disk, cplx(0, 0)) == doctest::Approx(1.0));
    CHECK(boundary_distance(disk, cplx(0.25, 0)) == doctest::Approx(0.75));
    auto seg = make_segment_exterior();
    CHECK(boundary_distance(seg, cplx(0, 2)) == doctest::Approx(2.0));
    CHECK(boundary_distance(seg, cplx(3, 0)) == doctest::Approx(1.0));
}

TEST_CASE("boundary_distance is 1-Lipschitz") {
    auto ell = make_ellipse_interior(0.4);
    Rng rng(23);
    for (int k = 0; k < 200; ++k) {
        cplx z1(4 * rng.next_double() - 2, 4 * rng.next_double() - 2);
        cplx z2(4 * rng.next_double() - 2, 4 * rng.next_double() - 2);
        double d1 = boundary_distance(ell, z1), d2 = boundary_distance(ell, z2);
        CHECK(std::fabs(d1 - d2) <= std::abs(z1 - z2) + 1e-9);
    }
}

TEST_CASE("builtin disks contain their centers") {
    std::vector<PointedDisk> disks = {
        make_unit_disk(),        make_unit_disk(0.5),          make_disk_exterior(),
        make_segment_exterior(), make_joukowski_exterior(0.5), make_ellipse_interior(0.5),
        make_radial_slit_exterior(1.5), make_arc_slit_exterior(0.25, 0.2),
        make_ellipse_exterior(2, 1),
    };
    for (const auto& d : disks) {
        if (d.center_at_inf) {
            // after conjugation the center maps to the origin of the bounded picture
            cplx anchor = d.complement_anchor();
            CHECK_FALSE(d.inside(anchor));
            // a very distant point plays the role of the center
            CHECK(d.inside(cplx(1e6, 1e6)));
        } else {
            CHECK(d.inside(d.center));
            CHECK(boundary_distance(d, d.center) > 0);
        }
    }
}

TEST_CASE("marked points sit on the boundary off two-sided slit interiors") {
    auto rs = make_radial_slit_exterior(1.5);
    REQUIRE(rs.marked_point.has_value());
    CHECK(rs.boundary.distance(*rs.marked_point) < 1e-12);
    auto arc = make_arc_slit_exterior(0.25, 0.2);
    REQUIRE(arc.marked_point.has_value());
    CHECK(arc.boundary.distance(*arc.marked_point) < 1e-12);
}

TEST_CASE("boundary_param traverses slits minus side first") {
    auto rs = make_radial_slit_exterior(1.5);
    // origin at the tip; minus side descends toward the junction
    double p_tip_minus = rs.boundary_param(cplx(1.5, 0), Side::Minus);
    double p_mid_minus = rs.boundary_param(cplx(1.25, 0), Side::Minus);
    double p_mid_plus = rs.boundary_param(cplx(1.25, 0), Side::Plus);
    double L = rs.boundary.total_length();
    CHECK(p_tip_minus == doctest::Approx(0.0));
    CHECK(p_mid_minus == doctest::Approx(0.25));
    CHECK(p_mid_plus == doctest::Approx(L - 0.25));
}

TEST_CASE("scale_disk transforms geometry consistently") {
    auto d = make_ellipse_interior(0.3);
    cplx f = std::polar(2.0, 0.7);
    auto s = scale_disk(d, f);
    CHECK(s.inside(f * cplx(0.5, 0.2)) == d.inside(cplx(0.5, 0.2)));
    CHECK(s.boundary.distance(f * cplx(1.3, 0)) ==
          doctest::Approx(std::abs(f) * d.boundary.distance(cplx(1.3, 0))).epsilon(1e-6));
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(make_unit_disk(cplx(1.5, 0)), PreconditionError);
    CHECK_THROWS_AS(make_radial_slit_exterior(0.9), PreconditionError);
    CHECK_THROWS_AS(make_tilted_slit_exterior(cplx(0.5, 0.5)), ConstructionError);
    // arc slit with delta too small for the chosen epsilon: Re p >= 1
    CHECK_THROWS_AS(make_arc_slit_exterior(0.01, 0.5), ConstructionError);
    CHECK_THROWS_AS(make_polygon({cplx(0, 0), cplx(1, 0), cplx(0, 1)}, cplx(5, 5)),
                    PreconditionError);
}
