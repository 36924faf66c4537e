#include <doctest.h>

#include "confdisk/zhukovskii.hpp"
#include "oracles.hpp"

using namespace confdisk;

TEST_CASE("zhukovskii point values") {
    CHECK(std::abs(zhukovskii(1.0) - cplx(2, 0)) < 1e-15);
    CHECK(std::abs(zhukovskii(cplx(0, 1))) < 1e-15);
    CHECK(std::abs(zhukovskii(2.0) - cplx(2.5, 0)) < 1e-15);
    CHECK_THROWS_AS(zhukovskii(0.0), PreconditionError);
}

TEST_CASE("symmetry Z(zeta) = Z(1/zeta)") {
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        cplx z = std::polar(0.1 + 3 * rng.next_double(), kTwoPi * rng.next_double());
        CHECK(std::abs(zhukovskii(z) - zhukovskii(1.0 / z)) < 1e-12 * (1.0 + std::abs(z)));
    }
}

TEST_CASE("exterior inverse branch") {
    CHECK(std::abs(zhukovskii_inverse_exterior(2.0) - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(zhukovskii_inverse_exterior(2.5) - cplx(2, 0)) < 1e-12);
    // w = 10i: the larger root of the quadratic
    cplx z = zhukovskii_inverse_exterior(cplx(0, 10));
    cplx expect = (cplx(0, 10) + cplx(0, 1) * std::sqrt(104.0)) / 2.0;
    CHECK(std::abs(z - expect) < 1e-10);
    CHECK(std::abs(z) == doctest::Approx(10.0990195).epsilon(1e-6));
    CHECK_THROWS_AS(zhukovskii_inverse_exterior(cplx(0.5, 0)), NumericError);
}

TEST_CASE("inverse round trip and modulus bound") {
    Rng rng(17);
    for (int k = 0; k < 300; ++k) {
        cplx w(8 * rng.next_double() - 4, 8 * rng.next_double() - 4);
        if (std::fabs(w.imag()) < 1e-3 && std::fabs(w.real()) < 2 + 1e-3) continue;
        cplx z = zhukovskii_inverse_exterior(w);
        CHECK(std::abs(z) >= 1.0 - 1e-12);
        CHECK(std::abs(zhukovskii(z) - w) < 1e-12 * (1.0 + std::abs(w)));
    }
}

TEST_CASE("preimage of the slit sphere is the disk exterior") {
    auto U = make_segment_exterior();
    auto g = riemann_map_for(U);
    auto lift = zhukovskii_preimage(U, g);
    // h = Z^{-1} o Z = identity on Delta
    Rng rng(9);
    for (int k = 0; k < 50; ++k) {
        cplx zeta = std::polar(1.1 + 2 * rng.next_double(), kTwoPi * rng.next_double());
        CHECK(std::abs(lift.lifted_map.eval(zeta) - zeta) < 1e-9);
    }
    CHECK(lift.lifted_map.conformal_radius == doctest::Approx(1.0));
}

TEST_CASE("radius preservation on ellipse exteriors through +-2") {
    for (double b : {1.0, 0.5}) {
        auto U = make_ellipse_exterior(2.0, b);
        auto g = riemann_map_for(U);
        auto lift = zhukovskii_preimage(U, g);
        // both sides via the independent Cauchy-coefficient oracle
        double rad_u = oracles::radius_via_cauchy(g, 1024);
        double rad_v = oracles::radius_via_cauchy(lift.lifted_map, 1024);
        CHECK(std::fabs(rad_v - rad_u) < 1e-9);
        CHECK(std::fabs(lift.lifted_map.conformal_radius - g.conformal_radius) < 1e-9);
        // covering relation Z o h = g on a dense model sample
        double resid = 0;
        for (int k = 0; k < 128; ++k) {
            cplx zeta = std::polar(1.25 + (k % 7) * 0.35, kTwoPi * k / 128.0);
            resid = std::max(resid,
                             std::abs(zhukovskii(lift.lifted_map.eval(zeta)) - g.eval(zeta)));
        }
        CHECK(resid < 1e-9);
    }
}

TEST_CASE("preconditions of the preimage") {
    auto U = make_joukowski_exterior(0.3);  // boundary misses +-2
    auto g = riemann_map_for(U);
    CHECK_THROWS_AS(zhukovskii_preimage(U, g), PreconditionError);
}

TEST_CASE("lift of the identity is the identity") {
    auto U = make_ellipse_exterior(2.0, 1.0);
    auto g = riemann_map_for(U);
    auto lift = zhukovskii_preimage(U, g);
    BoundaryMap id;
    id.target = U;
    id.apply = [](cplx z, AccessTag t) { return std::make_pair(z, t); };
    auto psi = zhukovskii_lift(id, lift, lift, 256);
    // psi fixes +-1 and reproduces boundary points of V
    auto corr_h = boundary_correspondence(lift.lifted_map, 64);
    double dev = 0;
    for (const auto& s : corr_h.samples) {
        if (!s.converged) continue;
        auto [q, tag] = psi.apply(s.point, s.tag);
        dev = std::max(dev, std::abs(q - s.point));
    }
    CHECK(dev < 1e-6);
}

TEST_CASE("lift commutes with the covering map") {
    // phi: boundary homeomorphism between two ellipse exteriors through +-2,
    // defined by the shared exterior parameterization (a trivial motion)
    auto U = make_ellipse_exterior(2.0, 1.0);
    auto Ut = make_ellipse_exterior(2.0, 0.5);
    auto g = riemann_map_for(U);
    auto gt = riemann_map_for(Ut);
    auto lift = zhukovskii_preimage(U, g);
    auto lift_t = zhukovskii_preimage(Ut, gt);

    BoundaryMap phi;
    phi.target = Ut;
    phi.apply = [](cplx z, AccessTag tag) {
        // a cos s + i b sin s -> a cos s + i b' sin s with a=2, b=1, b'=0.5
        return std::make_pair(cplx(z.real(), 0.5 * z.imag()), tag);
    };
    auto psi = zhukovskii_lift(phi, lift, lift_t, 512);

    auto corr_h = boundary_correspondence(lift.lifted_map, 32);
    double resid = 0;
    int used = 0;
    for (const auto& s : corr_h.samples) {
        if (!s.converged) continue;
        auto [pq, tag] = psi.apply(s.point, s.tag);
        auto [pw, tag2] = phi.apply(zhukovskii(s.point), tag);
        (void)tag2;
        resid = std::max(resid, std::abs(zhukovskii(pq) - pw));
        ++used;
    }
    REQUIRE(used > 16);
    CHECK(resid < 1e-6);
    // psi fixes the critical points
    auto [p1, t1] = psi.apply(cplx(1, 0), AccessTag::Uni);
    auto [m1, t2] = psi.apply(cplx(-1, 0), AccessTag::Uni);
    (void)t1;
    (void)t2;
    CHECK(std::abs(p1 - cplx(1, 0)) < 2e-5);
    CHECK(std::abs(m1 - cplx(-1, 0)) < 2e-5);
}

TEST_CASE("classification of lifted biaccessible pairs") {
    // U = complement of [-2,2] with a vertical spike at 0: the closed-form
    // chain is Z composed with a rotated radial-slit map.
    double s = 0.75;
    auto U = make_spiked_segment_exterior(s);
    auto g = riemann_map_for(U);
    auto corr = boundary_correspondence(g, 1024);

    // collect biaccessible pairs by landing points
    int splits = 0, keeps = 0;
    for (const auto& smp : corr.samples) {
        if (smp.tag != AccessTag::BiMinus || !smp.converged) continue;
        cplx p = smp.point;
        std::vector<AngleHit> hits;
        try {
            hits = invert_boundary(corr, p);
        } catch (const NumericError&) {
            continue;
        }
        if (hits.size() != 2) continue;
        auto cls = classify_lifted_access(hits[0].angle, hits[1].angle, g);
        bool on_spike = std::fabs(p.real()) < 0.05;
        if (on_spike) {
            CHECK(cls == LiftClass::LiftsToOneBi);
            ++keeps;
        } else if (std::fabs(p.imag()) < 1e-6 && std::fabs(p.real()) > 0.2 &&
                   std::fabs(p.real()) < 1.8) {
            CHECK(cls == LiftClass::SplitsToTwoUni);
            ++splits;
        }
    }
    CHECK(splits > 10);
    CHECK(keeps > 3);
}

TEST_CASE("corollary: pairs on a Zhukovskii preimage never separate -1 from 1") {
    // V = Delta minus a radial slit at angle 1/4 is the Zhukovskii preimage
    // of the spiked segment complement; classify its pairs against +-1.
    double s = 0.75;
    double q = (s + std::sqrt(s * s + 4.0)) / 2.0;
    auto V = make_rotated_slit_exterior(q, 0.25);
    auto h = riemann_map_for(V);
    auto corr = boundary_correspondence(h, 512);
    int checked = 0;
    for (const auto& smp : corr.samples) {
        if (smp.tag != AccessTag::BiMinus || !smp.converged) continue;
        std::vector<AngleHit> hits;
        try {
            hits = invert_boundary(corr, smp.point);
        } catch (const NumericError&) {
            continue;
        }
        if (hits.size() != 2) continue;
        auto cls = classify_lifted_access(hits[0].angle, hits[1].angle, h, cplx(-1, 0), cplx(1, 0));
        CHECK(cls == LiftClass::LiftsToOneBi);
        ++checked;
    }
    CHECK(checked > 10);
}
