#include <doctest.h>

#include "confdisk/motion.hpp"
#include "confdisk/zipper.hpp"
#include "oracles.hpp"

using namespace confdisk;

TEST_CASE("eval_motion point values") {
    auto aff = MotionFamily::affine_stretch();
    CHECK(std::abs(eval_motion(aff, cplx(1, 0), cplx(0.3, 0)) - cplx(1.3, 0)) < 1e-15);
    auto jk = MotionFamily::joukowski();
    CHECK(std::abs(eval_motion(jk, cplx(0, 1), cplx(0.5, 0)) - cplx(0, 0.5)) < 1e-15);
    // identity at t = 0 for every kind
    std::vector<MotionFamily> kinds = {MotionFamily::affine_stretch(), MotionFamily::joukowski(),
                                       MotionFamily::trivial_interior(),
                                       MotionFamily::trivial_exterior(),
                                       MotionFamily::slit_grow()};
    Rng rng(3);
    for (const auto& m : kinds) {
        for (int k = 0; k < 16; ++k) {
            cplx z = std::polar(1.0, kTwoPi * rng.next_double());
            if (m.kind() == MotionKind::SlitGrow && k % 2) z = cplx(1.4, 0);  // slit point
            CHECK(std::abs(eval_motion(m, z, 0.0) - z) < 1e-15);
        }
        CHECK_THROWS_AS(eval_motion(m, cplx(1, 0), cplx(1.2, 0)), PreconditionError);
    }
}

TEST_CASE("motions are holomorphic in t pointwise") {
    std::vector<MotionFamily> kinds = {MotionFamily::affine_stretch(), MotionFamily::joukowski(),
                                       MotionFamily::trivial_interior(),
                                       MotionFamily::trivial_exterior(),
                                       MotionFamily::slit_grow()};
    Rng rng(7);
    for (const auto& m : kinds) {
        for (int k = 0; k < 20; ++k) {
            cplx z = std::polar(1.0, kTwoPi * rng.next_double());
            if (m.kind() == MotionKind::SlitGrow && k % 2) z = cplx(1.0 + rng.next_double(), 0);
            cplx t0 = std::polar(0.5 * rng.next_double(), kTwoPi * rng.next_double());
            auto f = [&](cplx t) { return eval_motion(m, z, t); };
            CHECK(holomorphy_residual(f, t0, 1e-4) < 1e-6);
        }
    }
}

TEST_CASE("injectivity spot check on the base set") {
    std::vector<MotionFamily> kinds = {MotionFamily::affine_stretch(), MotionFamily::joukowski(),
                                       MotionFamily::trivial_interior(),
                                       MotionFamily::trivial_exterior()};
    for (const auto& m : kinds) {
        for (cplx t : {cplx(0.5, 0), cplx(0.3, 0.4), cplx(-0.6, 0.2)}) {
            std::vector<cplx> imgs;
            for (int k = 0; k < 256; ++k)
                imgs.push_back(eval_motion(m, std::polar(1.0, kTwoPi * k / 256.0), t));
            double min_gap = 1e300;
            for (int k = 0; k < 256; ++k)
                min_gap = std::min(min_gap, std::abs(imgs[k] - imgs[(k + 1) % 256]));
            CHECK(min_gap > 1e-6);
        }
    }
}

TEST_CASE("holomorphy_residual calibration") {
    CHECK(holomorphy_residual([](cplx t) { return t * t; }, cplx(0.3, 0), 1e-4) < 1e-8);
    CHECK(holomorphy_residual([](cplx t) { return std::conj(t); }, cplx(0.2, 0.1), 1e-4) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("intrinsic rotation basics") {
    auto g = riemann_map_for(make_unit_disk(0.4));
    // fixes the center
    CHECK(std::abs(intrinsic_rotation(g, 0.37, cplx(0.4, 0)) - cplx(0.4, 0)) < 1e-12);
    // group law rho_a o rho_b = rho_{a+b}
    Rng rng(13);
    for (int k = 0; k < 24; ++k) {
        cplx z = std::polar(0.7 * rng.next_double(), kTwoPi * rng.next_double());
        z = g.eval(z);
        double a = rng.next_double(), b = rng.next_double();
        cplx r1 = intrinsic_rotation(g, a, intrinsic_rotation(g, b, z));
        cplx r2 = intrinsic_rotation(g, a + b, z);
        CHECK(std::abs(r1 - r2) < 1e-9);
    }
    // on the round disk it is the rigid rotation about the center
    auto g0 = riemann_map_for(make_unit_disk());
    cplx z(0.3, 0.2);
    cplx expect = std::polar(1.0, kTwoPi * 0.2) * z;
    CHECK(std::abs(intrinsic_rotation(g0, 0.2, z) - expect) < 1e-12);
}

TEST_CASE("intrinsic rotation is normalization independent") {
    PointedDisk d = make_ellipse_interior(0.4);
    auto g1 = riemann_map_for(d, 256);  // marked normalization
    PointedDisk d2 = d;
    d2.marked_point.reset();
    auto g2 = build_zipper_map(d2, 256);  // derivative positive
    Rng rng(17);
    for (int k = 0; k < 10; ++k) {
        cplx w = std::polar(0.6 * rng.next_double(), kTwoPi * rng.next_double());
        cplx z = g1.eval(w);
        CHECK(std::abs(intrinsic_rotation(g1, kGoldenTurns, z) -
                       intrinsic_rotation(g2, kGoldenTurns, z)) < 1e-7);
    }
}

TEST_CASE("harmonicity_scan calibration") {
    auto re = [](cplx t) { return t.real(); };
    auto rep1 = harmonicity_scan(re, {cplx(0, 0), cplx(0.2, 0.1)}, {0.1, 0.3}, 16);
    CHECK(rep1.max_residual < 1e-12);
    CHECK(rep1.harmonic);
    auto sq = [](cplx t) { return std::norm(t); };
    auto rep2 = harmonicity_scan(sq, {cplx(0, 0)}, {0.5}, 64);
    CHECK(rep2.entries[0].residual == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("log rad of the ellipse family fails the mean value property") {
    auto m = MotionFamily::affine_stretch();
    auto u = [&](cplx t) { return std::log(m.map_at(t, 256, false).conformal_radius); };
    auto rep = harmonicity_scan(u, {cplx(0, 0)}, {0.5}, 16);
    CHECK(rep.entries[0].residual > 0.05);
    // frozen oracle: |log rad(E(1.5, 0.5))| = 0.4715
    CHECK(rep.entries[0].residual ==
          doctest::Approx(-std::log(oracles::kEllipseRad050)).epsilon(0.02));
}

TEST_CASE("induced circle map: trivial chain is the identity") {
    auto m = MotionFamily::trivial_interior();
    cplx t(0.4, 0.2);
    auto g0 = m.map_at(0.0, 256);
    auto gt = m.map_at(t, 256);
    auto cm = induced_circle_map(m, t, g0, gt, 64);
    CHECK(cm.monotone);
    CHECK(cm.sup_dev < 1e-5);
}

TEST_CASE("induced circle map: affine stretch deviates") {
    auto m = MotionFamily::affine_stretch();
    cplx t(0.5, 0);
    auto g0 = m.map_at(0.0, 256);
    auto gt = m.map_at(t, 256);
    auto cm = induced_circle_map(m, t, g0, gt, 64);
    CHECK(cm.monotone);
    CHECK(cm.sup_dev > 0.01);
}

TEST_CASE("pre-rotating the base map pre-rotates sigma") {
    auto m = MotionFamily::joukowski();
    cplx t(0.3, 0.1);
    auto g0 = m.map_at(0.0, 128);
    auto gt = m.map_at(t, 128);
    auto cm = induced_circle_map(m, t, g0, gt, 32);
    RiemannMap g0r = g0;
    g0r.map.prepend(Primitive::rotation(0.125));
    auto cmr = induced_circle_map(m, t, g0r, gt, 32);
    // sigma_rotated(a) = sigma(a + 1/8) on convergent pairs
    for (const auto& pr : cmr.pairs) {
        if (!pr.converged) continue;
        for (const auto& qr : cm.pairs) {
            if (!qr.converged) continue;
            if (angle_distance(Angle::from_turns(pr.a.turns() + 0.125), qr.a) < 1e-9)
                CHECK(angle_distance(pr.sigma, qr.sigma) < 1e-4);
        }
    }
}

TEST_CASE("fitness harness: trivial and joukowski all-pass, affine all-fails") {
    // reduced grid keeps this test quick; the acceptance suite runs the full one
    std::vector<cplx> grid = {cplx(0, 0)};
    for (int k = 0; k < 8; ++k) grid.push_back(std::polar(0.5, kTwoPi * k / 8.0));
    for (int k = 0; k < 8; ++k) grid.push_back(std::polar(0.75, kTwoPi * k / 8.0));

    SUBCASE("trivial interior") {
        auto rep = fitness_report(MotionFamily::trivial_interior(), grid, 256, {}, 2);
        CHECK(rep.all_consistent);
        for (const auto& r : rep.rows) {
            CHECK(r.complete);
            CHECK(r.v_iii == Verdict::Pass);
            CHECK(r.v_iv == Verdict::Pass);
            CHECK(r.v_v == Verdict::Pass);
            CHECK(r.v_vi == Verdict::Pass);
        }
    }
    SUBCASE("joukowski") {
        auto rep = fitness_report(MotionFamily::joukowski(), grid, 256, {}, 2);
        CHECK(rep.all_consistent);
        for (const auto& r : rep.rows) {
            CHECK(r.v_iii == Verdict::Pass);
            CHECK(r.v_iv == Verdict::Pass);
            CHECK(r.v_v == Verdict::Pass);
            CHECK(r.v_vi == Verdict::Pass);
        }
    }
    SUBCASE("affine stretch fails throughout") {
        auto rep = fitness_report(MotionFamily::affine_stretch(), grid, 256, {}, 2);
        CHECK(rep.all_consistent);
        int fails_iv = 0, fails_vi = 0;
        for (const auto& r : rep.rows) {
            CHECK(r.v_iii != Verdict::Pass);
            CHECK(r.v_iv != Verdict::Pass);
            CHECK(r.v_v != Verdict::Pass);
            CHECK(r.v_vi != Verdict::Pass);
            fails_iv += r.v_iv == Verdict::Fail;
            fails_vi += r.v_vi == Verdict::Fail;
        }
        CHECK(fails_iv == int(rep.rows.size()));
        CHECK(fails_vi == int(rep.rows.size()));
    }
}

TEST_CASE("corollary: constant radius on the grid forces a trivial motion") {
    // joukowski keeps rad identically 1; its induced circle map stays put
    std::vector<cplx> grid = {cplx(0, 0)};
    for (int k = 0; k < 8; ++k) grid.push_back(std::polar(0.6, kTwoPi * k / 8.0));
    auto m = MotionFamily::joukowski();
    double max_rad_dev = 0;
    for (cplx t : grid)
        max_rad_dev = std::max(max_rad_dev,
                               std::fabs(m.map_at(t, 128).conformal_radius - 1.0));
    REQUIRE(max_rad_dev < 1e-12);
    auto g0 = m.map_at(0.0, 128);
    for (cplx t : {cplx(0.6, 0), cplx(0, 0.6)}) {
        auto cm = induced_circle_map(m, t, g0, m.map_at(t, 128), 32);
        CHECK(cm.sup_dev < 5e-3);
    }
}

TEST_CASE("corollary: Taylor coefficients move holomorphically for passing motions") {
    auto m = MotionFamily::trivial_interior();
    // a_k(t) of g_t at 0 via Cauchy integrals on |z| = 1/2
    auto coeff = [&](cplx t, int k) {
        RiemannMap g = m.map_at(t, 64);
        cplx acc = 0;
        const int N = 64;
        for (int j = 0; j < N; ++j) {
            double th = kTwoPi * j / N;
            acc += g.eval(std::polar(0.5, th)) * std::polar(1.0, -k * th);
        }
        return acc / (double(N) * std::pow(0.5, k));
    };
    for (int k = 1; k <= 4; ++k) {
        auto f = [&](cplx t) { return coeff(t, k); };
        CHECK(holomorphy_residual(f, cplx(0.2, 0.1), 1e-4) < 1e-5);
    }
}

TEST_CASE("uniqueness regression: the two ellipse motions agree on the base circle") {
    auto a = MotionFamily::affine_stretch();
    auto j = MotionFamily::joukowski();
    Rng rng(29);
    for (int k = 0; k < 64; ++k) {
        cplx z = std::polar(1.0, kTwoPi * rng.next_double());
        cplx t = std::polar(0.8 * rng.next_double(), kTwoPi * rng.next_double());
        CHECK(std::abs(eval_motion(a, z, t) - eval_motion(j, z, t)) < 1e-12);
    }
}

TEST_CASE("rescale to constant radius") {
    std::vector<cplx> grid = {cplx(0, 0)};
    for (double r : {0.25, 0.5, 0.75})
        for (int k = 0; k < 16; ++k) grid.push_back(std::polar(r, kTwoPi * k / 16.0));

    SUBCASE("joukowski is already constant") {
        auto m = MotionFamily::joukowski();
        auto res = rescale_to_constant_radius(m, grid, 128);
        for (cplx t : {cplx(0.5, 0), cplx(0, 0.4)}) {
            CHECK(std::fabs(std::abs(res.rescale_factor(t)) - 1.0) < 1e-9);
            CHECK(std::fabs(res.map_at(t, 128).conformal_radius - 1.0) < 1e-9);
        }
    }
    SUBCASE("scaled trivial chain becomes constant") {
        auto m = MotionFamily::trivial_exterior();  // rad = |1 + 0.4 t|
        auto res = rescale_to_constant_radius(m, grid, 128);
        double rad0 = res.map_at(0.0, 128).conformal_radius;
        for (cplx t : {cplx(0.5, 0), cplx(-0.3, 0.3), cplx(0, 0.6)}) {
            double rad = res.map_at(t, 128).conformal_radius;
            CHECK(std::fabs(rad - rad0) < 2e-2 * rad0);
        }
    }
    SUBCASE("affine stretch is rejected") {
        CHECK_THROWS_AS(rescale_to_constant_radius(MotionFamily::affine_stretch(), grid, 128),
                        PreconditionError);
    }
}
