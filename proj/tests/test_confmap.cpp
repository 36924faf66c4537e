#include <doctest.h>

#include "confdisk/confmap.hpp"
#include "confdisk/zipper.hpp"
#include "oracles.hpp"

using namespace confdisk;

TEST_CASE("eval_map basics") {
    ConformalMap id = ConformalMap::identity();
    CHECK(std::abs(id.eval(cplx(0.3, 0.1)) - cplx(0.3, 0.1)) < 1e-15);

    ConformalMap j;
    j.append(Primitive::zhuk());
    CHECK(std::abs(j.eval(cplx(0, 1))) < 1e-15);  // i + 1/i = 0

    ConformalMap aff;
    aff.append(Primitive::affine(2.0, 1.0));
    CHECK(std::abs(aff.eval(1.0) - cplx(3, 0)) < 1e-15);
}

TEST_CASE("chain derivative matches central differences") {
    auto rs = make_radial_slit_exterior(1.5);
    auto g = riemann_map_for(rs);
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        cplx z = std::polar(1.3 + rng.next_double(), kTwoPi * rng.next_double());
        cplx d_an = g.map.derivative(z);
        double h = 1e-6;
        cplx d_num = (g.map.eval(z + h) - g.map.eval(z - h)) / (2.0 * h);
        CHECK(std::abs(d_an - d_num) <= 1e-6 * (1.0 + std::abs(d_an)));
    }
    auto ge = riemann_map_for(make_joukowski_exterior(cplx(0.3, 0.2)));
    for (int k = 0; k < 100; ++k) {
        cplx z = std::polar(1.2 + rng.next_double(), kTwoPi * rng.next_double());
        cplx d_an = ge.map.derivative(z);
        double h = 1e-6;
        cplx d_num = (ge.map.eval(z + h) - ge.map.eval(z - h)) / (2.0 * h);
        CHECK(std::abs(d_an - d_num) <= 1e-6 * (1.0 + std::abs(d_an)));
    }
}

TEST_CASE("conformal radius closed forms") {
    CHECK(riemann_map_for(make_unit_disk()).conformal_radius == doctest::Approx(1.0));
    CHECK(riemann_map_for(make_disk_exterior()).conformal_radius == doctest::Approx(1.0));
    CHECK(riemann_map_for(make_unit_disk(0.3)).conformal_radius == doctest::Approx(0.91));
    // exterior map z + t/z keeps radius exactly 1 for any |t| < 1
    for (cplx t : {cplx(0.5, 0), cplx(0.3, 0.4), cplx(-0.7, 0.1)}) {
        auto g = riemann_map_for(make_joukowski_exterior(t));
        CHECK(std::fabs(g.conformal_radius - 1.0) < 1e-14);
    }
    double b = (1.5 + 1.0 / 1.5) / 2.0;
    CHECK(riemann_map_for(make_radial_slit_exterior(1.5)).conformal_radius ==
          doctest::Approx((b + 1) / 2).epsilon(1e-12));
    CHECK(riemann_map_for(make_ellipse_exterior(2, 1)).conformal_radius ==
          doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("radius agrees with the Cauchy-coefficient oracle") {
    std::vector<RiemannMap> maps = {
        riemann_map_for(make_joukowski_exterior(cplx(0.4, 0.2))),
        riemann_map_for(make_radial_slit_exterior(2.0)),
        riemann_map_for(make_ellipse_exterior(2, 0.5)),
        riemann_map_for(make_unit_disk(cplx(0.2, -0.3))),
    };
    for (const auto& g : maps)
        CHECK(g.conformal_radius == doctest::Approx(oracles::radius_via_cauchy(g)).epsilon(1e-9));
}

TEST_CASE("zipper on the unit disk") {
    auto g = build_zipper_map(make_unit_disk(), 64);
    CHECK(std::fabs(g.conformal_radius - 1.0) < 1e-2);
    // empirical convergence: doubling n at least halves the error
    double prev = 1e9;
    for (int n : {64, 128, 256}) {
        auto gn = build_zipper_map(make_unit_disk(), n);
        double err = std::fabs(gn.conformal_radius - 1.0);
        CHECK(err < std::max(0.55 * prev, 1e-12));
        prev = err;
    }
}

TEST_CASE("zipper recovers the off-center disk automorphism") {
    auto g = build_zipper_map(make_unit_disk(0.3), 256);
    CHECK(std::fabs(g.conformal_radius - 0.91) < 2e-2);
    CHECK(std::abs(g.eval(0.0) - cplx(0.3, 0)) < 1e-6);
}

TEST_CASE("zipper ellipse radius against the frozen oracle") {
    auto d = make_ellipse_interior(0.5);
    auto g = riemann_map_for(d, 1024);
    CHECK(g.conformal_radius ==
          doctest::Approx(oracles::kEllipseRad050).epsilon(2e-5));
    CHECK(g.conformal_radius > 0.5);
    CHECK(g.conformal_radius < 2.0);
}

TEST_CASE("zipper slit domain matches the closed-form radius") {
    auto rs = make_radial_slit_exterior(1.5);
    auto gz = build_zipper_map(rs, 1024);
    double b = (1.5 + 1.0 / 1.5) / 2.0;
    CHECK(std::fabs(gz.conformal_radius - (b + 1) / 2) < 2e-3);
}

TEST_CASE("Koebe sandwich for interior maps") {
    for (cplx t : {cplx(0.25, 0), cplx(0.5, 0), cplx(0.3, 0.3)}) {
        auto d = make_ellipse_interior(t);
        auto g = riemann_map_for(d, 256);
        double inner = boundary_distance(d, d.center);
        CHECK(g.conformal_radius >= inner - 1e-9);
        CHECK(g.conformal_radius <= 4.0 * inner + 1e-9);
    }
}

TEST_CASE("boundary correspondence of the identity") {
    auto g = riemann_map_for(make_unit_disk());
    CHECK_THROWS_AS(boundary_correspondence(g, 4), PreconditionError);
    auto corr = boundary_correspondence(g, 8);
    REQUIRE(corr.samples.size() == 8);
    cplx expect[] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    for (int q = 0; q < 4; ++q) {
        const auto& s = corr.samples[2 * q];  // angles 0, 1/4, 1/2, 3/4
        CHECK(s.converged);
        CHECK(std::abs(s.point - expect[q]) < 1e-7);
        CHECK(s.tag == AccessTag::Uni);
    }
}

TEST_CASE("exterior correspondence is the closed-form ellipse") {
    cplx t(0.5, 0);
    auto g = riemann_map_for(make_joukowski_exterior(t));
    auto corr = boundary_correspondence(g, 8);
    for (const auto& s : corr.samples) {
        cplx e = s.angle.point();
        CHECK(std::abs(s.point - (e + t / e)) < 1e-6);
    }
}

TEST_CASE("slit correspondence carries two-sided tags") {
    auto rs = make_radial_slit_exterior(1.5);
    auto g = riemann_map_for(rs);
    auto corr = boundary_correspondence(g, 512);
    int minus = 0, plus = 0;
    for (const auto& s : corr.samples) {
        if (s.tag == AccessTag::BiMinus) ++minus;
        if (s.tag == AccessTag::BiPlus) ++plus;
    }
    // both sides populated and balanced by the reflection symmetry
    CHECK(minus > 20);
    CHECK(minus == plus);
    double mass = double(minus + plus) / 512.0;
    CHECK(std::fabs(mass - oracles::radial_slit_mass(1.5)) < 0.01);
}

TEST_CASE("invert_boundary on the slit") {
    auto g = riemann_map_for(make_radial_slit_exterior(1.5));
    auto corr = boundary_correspondence(g, 512);
    // interior slit point: two angles symmetric about 0
    auto hits = invert_boundary(corr, cplx(1.25, 0));
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].tag == AccessTag::BiMinus);
    CHECK(hits[1].tag == AccessTag::BiPlus);
    CHECK(hits[0].angle.turns() + hits[1].angle.turns() == doctest::Approx(1.0).epsilon(1e-6));
    // tip: exactly one angle, angle 0
    auto tip = invert_boundary(corr, cplx(1.5, 0));
    REQUIRE(tip.size() == 1);
    CHECK(angle_distance(tip[0].angle, Angle::from_turns(0)) < 1e-4);
    // identity map: g^{-1}(1) = angle 0
    auto gid = riemann_map_for(make_unit_disk());
    auto corr_id = boundary_correspondence(gid, 64);
    auto one = invert_boundary(corr_id, cplx(1, 0));
    REQUIRE(one.size() == 1);
    CHECK(angle_distance(one[0].angle, Angle::from_turns(0)) < 1e-6);
    // far off the boundary: not found
    CHECK_THROWS_AS(invert_boundary(corr_id, cplx(5, 5)), NumericError);
}

TEST_CASE("round trip: invert after correspondence recovers sample angles") {
    auto g = riemann_map_for(make_joukowski_exterior(cplx(0.3, 0.2)));
    auto corr = boundary_correspondence(g, 64);
    for (int j = 0; j < 64; j += 7) {
        const auto& s = corr.samples[j];
        auto hits = invert_boundary(corr, s.point);
        REQUIRE(!hits.empty());
        CHECK(angle_distance(hits[0].angle, s.angle) < 2.0 / 64.0);
    }
}

TEST_CASE("normalize: model rotations") {
    // multiplication by i on the disk, derivative-positive -> identity
    RiemannMap f;
    f.model = Model::Disk;
    f.map.append(Primitive::affine(cplx(0, 1), 0.0));
    f.target = make_unit_disk();
    f.conformal_radius = 1.0;
    auto g = normalize(f, Normalization::DerivativePositive);
    CHECK(std::abs(g.eval(cplx(0.5, 0)) - cplx(0.5, 0)) < 1e-12);
    CHECK(g.conformal_radius == doctest::Approx(1.0));

    // identity on the exterior with marked point -1: half-turn pre-rotation
    RiemannMap e;
    e.model = Model::Exterior;
    e.map = ConformalMap::identity();
    e.target = make_disk_exterior();
    e.conformal_radius = 1.0;
    auto em = normalize(e, Normalization::MarkedPoint, cplx(-1, 0));
    RadialLimit rl = radial_limit(em, Angle::from_turns(0.0));
    CHECK(std::abs(rl.value - cplx(-1, 0)) < 1e-6);

    // zipper map of the circle with marked point 1 is a rotation fixing 1
    PointedDisk d = make_unit_disk();
    d.marked_point = cplx(1, 0);
    auto gz = build_zipper_map(d, 256);
    RadialLimit rz = radial_limit(gz, Angle::from_turns(0.0));
    CHECK(std::abs(rz.value - cplx(1, 0)) < 1e-3);
}

TEST_CASE("normalization invariance of the conformal radius") {
    PointedDisk d = make_ellipse_interior(0.4);
    auto g1 = riemann_map_for(d, 256);  // marked-point normalization (marked 1+t)
    PointedDisk d2 = d;
    d2.marked_point.reset();
    auto g2 = build_zipper_map(d2, 256);  // derivative-positive
    CHECK(g1.conformal_radius == doctest::Approx(g2.conformal_radius).epsilon(1e-12));
}

TEST_CASE("zipper rejects malformed input") {
    std::vector<cplx> few = {cplx(1, 0), cplx(0, 1), cplx(-1, 0)};
    CHECK_THROWS_AS(build_zipper_map_from_points(few, 0.0), PreconditionError);
    // self-intersecting order: swap two far-apart samples
    std::vector<cplx> pts;
    for (int k = 0; k < 32; ++k) pts.push_back(std::polar(1.0, kTwoPi * k / 32.0));
    std::swap(pts[5], pts[20]);
    CHECK_THROWS_AS(build_zipper_map_from_points(pts, 0.0), ConstructionError);
}
