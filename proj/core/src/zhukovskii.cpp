#include "confdisk/zhukovskii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace confdisk {

cplx zhukovskii(cplx zeta) {
    if (zeta == cplx(0, 0)) throw PreconditionError("zhukovskii: zeta = 0");
    if (std::isinf(zeta.real()) || std::isinf(zeta.imag()))
        return cplx(std::numeric_limits<double>::infinity(), 0);
    return zeta + 1.0 / zeta;
}

cplx zhukovskii_inverse_exterior(cplx w) {
    if (std::isinf(w.real()) || std::isinf(w.imag()))
        return cplx(std::numeric_limits<double>::infinity(), 0);
    if (w.imag() == 0.0 && std::fabs(w.real()) < 2.0 - 1e-15)
        throw NumericError(
            "zhukovskii_inverse_exterior: branch ambiguity strictly inside the slit (-2,2)");
    cplx s = std::sqrt(w * w - 4.0);
    cplx r1 = (w + s) / 2.0, r2 = (w - s) / 2.0;
    return std::abs(r1) >= std::abs(r2) ? r1 : r2;
}

LiftData zhukovskii_preimage(const PointedDisk& U, const RiemannMap& g) {
    if (!U.center_at_inf) throw PreconditionError("zhukovskii_preimage: center must be infinity");
    double tol = 1e-6 * std::max(1.0, U.boundary.diameter());
    if (U.boundary.distance(cplx(2, 0)) > tol || U.boundary.distance(cplx(-2, 0)) > tol)
        throw PreconditionError("zhukovskii_preimage: +-2 must lie on the boundary");
    RadialLimit s = radial_limit(g, Angle::from_turns(0.0));
    if (!s.converged || std::abs(s.value - cplx(2, 0)) > 64.0 * tol)
        throw PreconditionError("zhukovskii_preimage: g must be normalized with g(1) = 2");

    LiftData lift;
    lift.base = U;
    lift.base_map = g;

    // h = Z^{-1} o g; the exterior branch keeps h(infinity) = infinity and
    // Z'(infinity) = 1 preserves the conformal radius.
    lift.lifted_map = g;
    lift.lifted_map.map.append(Primitive::zhuk_inv_ext());
    lift.lifted_map.conformal_radius = g.conformal_radius;
    lift.lifted_map.boundary_slack = std::max(g.boundary_slack, 1e-7);

    // V's boundary from lifted boundary samples of U, with side tracking
    // across the slit pieces; represented as a sampled polygon.
    auto samples = U.sample_boundary(1024, 1e-7);
    std::vector<cplx> vpts;
    vpts.reserve(samples.size());
    for (const auto& smp : samples) {
        cplx w = smp.z;
        cplx zeta;
        if (w.imag() == 0.0 && std::fabs(w.real()) < 2.0) {
            // keyhole samples are offset off the slit, so an exact hit means
            // the sample carries no side information
            throw NumericError("zhukovskii_preimage: untagged slit crossing in boundary sample");
        }
        zeta = zhukovskii_inverse_exterior(w);
        vpts.push_back(zeta);
    }
    PointedDisk V;
    V.center_at_inf = true;
    V.kind = DiskKind::Sampled;
    V.marked_point = cplx(1, 0);
    for (std::size_t i = 0; i < vpts.size(); ++i)
        V.boundary.pieces.push_back(BoundaryPiece::segment(vpts[i], vpts[(i + 1) % vpts.size()]));
    auto pts = vpts;
    V.inside_fn = [pts](cplx z) {
        // outside the sampled polygon
        bool in = false;
        for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
            if ((pts[i].imag() > z.imag()) != (pts[j].imag() > z.imag()) &&
                z.real() < (pts[j].real() - pts[i].real()) * (z.imag() - pts[i].imag()) /
                                   (pts[j].imag() - pts[i].imag()) +
                               pts[i].real())
                in = !in;
        }
        return !in;
    };
    lift.preimage = V;
    lift.lifted_map.target = V;
    return lift;
}

BoundaryMap zhukovskii_lift(const BoundaryMap& phi, const LiftData& lift,
                            const LiftData& lift_tilde, int n) {
    // psi(q) = h~(phi_deg(a)) with phi_deg the induced circle map of phi; the
    // lemma gives psi_deg = phi_deg, so psi is evaluated through the base
    // correspondences.
    auto corr = std::make_shared<BoundaryCorrespondence>(
        boundary_correspondence(lift.base_map, n));
    auto corr_tilde = std::make_shared<BoundaryCorrespondence>(
        boundary_correspondence(lift_tilde.base_map, n));
    RiemannMap h = lift.lifted_map;
    RiemannMap h_tilde = lift_tilde.lifted_map;
    auto phi_apply = phi.apply;

    // phi must fix the critical values
    auto [p2, t2] = phi_apply(cplx(2, 0), AccessTag::Uni);
    auto [m2, t3] = phi_apply(cplx(-2, 0), AccessTag::Uni);
    (void)t2;
    (void)t3;
    if (std::abs(p2 - cplx(2, 0)) > 1e-9 || std::abs(m2 - cplx(-2, 0)) > 1e-9)
        throw PreconditionError("zhukovskii_lift: phi must fix +-2");

    BoundaryMap psi;
    psi.target = lift_tilde.preimage;
    psi.apply = [corr, corr_tilde, h, h_tilde, phi_apply](cplx q, AccessTag tag)
        -> std::pair<cplx, AccessTag> {
        // angle of q under h; h and g share landing angles
        cplx w = zhukovskii(q);
        auto hits = invert_boundary(*corr, w);
        const AngleHit* pick = nullptr;
        for (const auto& hh : hits) {
            // choose the angle whose lifted landing point matches q
            RadialLimit rl = radial_limit(h, hh.angle);
            if (rl.converged && std::abs(rl.value - q) < 1e-5 * (1.0 + std::abs(q))) {
                pick = &hh;
                break;
            }
        }
        if (!pick) pick = &hits.front();
        auto [pw, ptag] = phi_apply(w, pick->tag);
        auto hits_t = invert_boundary(*corr_tilde, pw);
        const AngleHit* pick_t = nullptr;
        for (const auto& hh : hits_t)
            if (hh.tag == ptag) pick_t = &hh;
        if (!pick_t) pick_t = &hits_t.front();
        RadialLimit out = radial_limit(h_tilde, pick_t->angle);
        return {out.value, tag};
    };
    return psi;
}

namespace {

int segment_crossings(cplx a1, cplx a2, cplx b1, cplx b2) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    double d1 = cross(a2 - a1, b1 - a1);
    double d2 = cross(a2 - a1, b2 - a1);
    double d3 = cross(b2 - b1, a1 - b1);
    double d4 = cross(b2 - b1, a2 - b1);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return 1;
    return 0;
}

// Ray polyline of g at the given angle, from the base point side out to the
// boundary, geometrically refined toward the boundary.
std::vector<cplx> sample_ray(const RiemannMap& g, Angle a, int n_samples) {
    std::vector<cplx> pts;
    pts.reserve(n_samples);
    EvalHints hints = g.map.make_hints();
    cplx dir = a.point();
    for (int i = 0; i < n_samples; ++i) {
        double s = double(i) / (n_samples - 1);
        cplx zeta;
        if (g.model == Model::Disk) {
            double r = 1.0 - 0.98 * std::pow(2.0, -40.0 * s);
            zeta = r * dir;
        } else {
            // |zeta| from 8 down to the boundary; beyond 8 the image cannot
            // reach the bounded test path
            double m = 1.0 + 7.0 * std::pow(2.0, -40.0 * s);
            zeta = m * dir;
        }
        pts.push_back(g.map.eval(zeta, hints));
    }
    return pts;
}

}  // namespace

LiftClass classify_lifted_access(Angle a_minus, Angle a_plus, const RiemannMap& g, cplx sep_a,
                                 cplx sep_b) {
    RadialLimit pm = radial_limit(g, a_minus);
    RadialLimit pp = radial_limit(g, a_plus);
    if (!pm.converged || !pp.converged)
        throw NumericError("classify_lifted_access: non-landing ray");
    cplx p = (pm.value + pp.value) / 2.0;
    double tolp = 1e-6 * (1.0 + std::abs(p));
    if (std::abs(pm.value - pp.value) > 1e-3 * (1.0 + std::abs(p)))
        throw PreconditionError("classify_lifted_access: rays do not land at a common point");
    if (std::abs(p - sep_a) < tolp || std::abs(p - sep_b) < tolp)
        throw PreconditionError("classify_lifted_access: landing point at a critical value");

    std::vector<cplx> ray1 = sample_ray(g, a_minus, 512);
    std::vector<cplx> ray2 = sample_ray(g, a_plus, 512);
    ray1.push_back(p);
    ray2.push_back(p);

    // test path from sep_a to sep_b, bowed away from p when p sits near the
    // straight segment
    std::vector<cplx> path;
    cplx mid = (sep_a + sep_b) / 2.0;
    cplx dirs = (sep_b - sep_a) / std::abs(sep_b - sep_a);
    cplx nrm = cplx(0, 1) * dirs;
    double dist_p = [&] {
        cplx d = sep_b - sep_a;
        double t = std::clamp((((p - sep_a) * std::conj(d)).real()) / std::norm(d), 0.0, 1.0);
        return std::abs(p - (sep_a + t * d));
    }();
    if (dist_p > 0.05 * std::abs(sep_b - sep_a)) {
        path = {sep_a, sep_b};
    } else {
        double bow = 0.02 * std::abs(sep_b - sep_a);
        cplx off = (((p - mid) * std::conj(nrm)).real() >= 0 ? -bow : bow) * nrm;
        path = {sep_a, mid + off, sep_b};
    }

    int crossings = 0;
    for (const auto& ray : {ray1, ray2})
        for (std::size_t i = 0; i + 1 < ray.size(); ++i)
            for (std::size_t j = 0; j + 1 < path.size(); ++j)
                crossings += segment_crossings(ray[i], ray[i + 1], path[j], path[j + 1]);

    return (crossings % 2 == 1) ? LiftClass::SplitsToTwoUni : LiftClass::LiftsToOneBi;
}

}  // namespace confdisk
