#include "confdisk/zipper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace confdisk {

namespace {

const cplx kInf(std::numeric_limits<double>::infinity(), 0.0);

struct StageParam {
    double b, d;
};

// Core construction in the bounded picture: samples in positive cyclic order,
// center strictly inside. Returns the chain mapping D -> domain with 0 ->
// center (derivative phase not yet normalized).
ConformalMap zipper_chain(const std::vector<cplx>& pts, cplx center) {
    const std::size_t n = pts.size();
    if (n < 8) throw PreconditionError("zipper: need at least 8 boundary samples");

    const cplx z0 = pts[0], z1 = pts[1];
    auto phi1 = [&](cplx z) { return cplx(0, 1) * std::sqrt((z - z1) / (z - z0)); };

    std::vector<cplx> w(n);
    for (std::size_t k = 2; k < n; ++k) w[k] = phi1(pts[k]);

    std::vector<StageParam> stages;
    stages.reserve(n - 2);
    auto stage_fwd = [](cplx z, const StageParam& s) {
        cplx m = (std::isinf(s.b)) ? z : z / (1.0 - z / s.b);
        cplx u = m / s.d;
        cplx q = u * u + 1.0;
        double th = std::arg(q);
        if (th <= 0) th += kTwoPi;
        return std::polar(std::sqrt(std::abs(q)), 0.5 * th);
    };
    for (std::size_t k = 2; k < n; ++k) {
        cplx a = w[k];
        if (!(a.imag() > 0))
            throw ConstructionError("zipper: sample " + std::to_string(k) +
                                    " leaves the upper half-plane (self-intersecting input?)");
        double b = (std::fabs(a.real()) > 1e-300 * std::abs(a))
                       ? std::norm(a) / a.real()
                       : std::numeric_limits<double>::infinity();
        double d = std::norm(a) / a.imag();
        StageParam sp{b, d};
        stages.push_back(sp);
        for (std::size_t j = k + 1; j < n; ++j) w[j] = stage_fwd(w[j], sp);
    }

    // track the image of z0 along the real line; it starts at infinity
    double p = std::numeric_limits<double>::infinity();
    for (const auto& s : stages) {
        double m;
        if (std::isinf(p))
            m = -s.b;  // Mobius sends infinity to -b
        else if (std::isinf(s.b))
            m = p;
        else {
            double den = 1.0 - p / s.b;
            m = (den == 0.0) ? std::numeric_limits<double>::infinity() : p / den;
        }
        if (std::isinf(m))
            p = std::numeric_limits<double>::infinity();
        else
            p = std::copysign(std::sqrt((m / s.d) * (m / s.d) + 1.0), m);
    }

    // forward image of the center through phi1 and the stages
    cplx wc = phi1(center);
    for (const auto& s : stages) wc = stage_fwd(wc, s);
    cplx mc = std::isinf(p) ? wc : wc / (1.0 - wc / p);
    bool q2 = mc.real() < 0;
    cplx hc = q2 ? -(mc * mc) : (mc * mc);  // center image in H

    // assemble the D -> domain chain: Blaschke^-1, Cayley^-1, closing^-1,
    // stages^-1 (reversed), phi1^-1
    cplx a_disk = (hc - cplx(0, 1)) / (hc + cplx(0, 1));
    ConformalMap g;
    // z -> (z + a)/(1 + conj(a) z): Blaschke moving 0 to a_disk
    g.append(Primitive::mobius(1.0, a_disk, std::conj(a_disk), 1.0));
    // Cayley D -> H: z -> i(1+z)/(1-z)
    g.append(Primitive::mobius(cplx(0, 1), cplx(0, 1), -1.0, 1.0));
    g.append(Primitive::zip_close(p, q2), /*inverted=*/true);
    for (std::size_t i = stages.size(); i-- > 0;)
        g.append(Primitive::zip_stage(stages[i].b, stages[i].d), /*inverted=*/true);
    g.append(Primitive::zip_init(z0, z1), /*inverted=*/true);
    return g;
}

}  // namespace

RiemannMap build_zipper_map_from_points(const std::vector<cplx>& pts, cplx center) {
    RiemannMap g;
    g.model = Model::Disk;
    g.map = zipper_chain(pts, center);
    PointedDisk d;
    std::vector<cplx> verts = pts;
    d.boundary.pieces.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        d.boundary.pieces.push_back(
            BoundaryPiece::segment(pts[i], pts[(i + 1) % pts.size()]));
    d.center = center;
    d.kind = DiskKind::Sampled;
    d.inside_fn = [verts](cplx z) {
        bool in = false;
        for (std::size_t i = 0, j = verts.size() - 1; i < verts.size(); j = i++) {
            if ((verts[i].imag() > z.imag()) != (verts[j].imag() > z.imag()) &&
                z.real() < (verts[j].real() - verts[i].real()) * (z.imag() - verts[i].imag()) /
                                   (verts[j].imag() - verts[i].imag()) +
                               verts[i].real())
                in = !in;
        }
        return in;
    };
    g.target = d;
    g = normalize(std::move(g), Normalization::DerivativePositive);
    g.boundary_slack = 4.0 / double(pts.size());
    return g;
}

RiemannMap build_zipper_map(const PointedDisk& d, int n, double keyhole_delta) {
    std::vector<BoundarySample> samples = d.sample_boundary(n, keyhole_delta);
    std::vector<cplx> pts;
    pts.reserve(samples.size());

    RiemannMap g;
    g.target = d;
    if (!d.center_at_inf) {
        // canonical order is already positive for interior domains
        for (const auto& s : samples) pts.push_back(s.z);
        // start the traversal at the flattest spot: the initial square root
        // and the closing geodesic are the crudest approximations, so keep
        // them away from high-curvature features (sample spacing is largest
        // where the boundary is flat)
        if (!d.boundary.has_slit() && pts.size() > 2) {
            std::size_t start = 0;
            double widest = 0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                double gap = std::abs(pts[(i + 1) % pts.size()] - pts[i]);
                if (gap > widest) {
                    widest = gap;
                    start = (i + 1) % pts.size();
                }
            }
            std::rotate(pts.begin(), pts.begin() + start, pts.end());
        }
        g.model = Model::Disk;
        g.map = zipper_chain(pts, d.center);
    } else {
        // conjugate through w = 1/(z - anchor); reverse order to keep the
        // bounded image positively oriented
        cplx anchor = d.complement_anchor();
        for (auto it = samples.rbegin(); it != samples.rend(); ++it)
            pts.push_back(1.0 / (it->z - anchor));
        // start the traversal at a slit keyhole tip when one exists: the
        // initial square root then opens the slit and keeps the stage
        // parameters moderate
        if (d.boundary.has_slit()) {
            double best = -1;
            std::size_t best_i = 0;
            for (std::size_t i = 0; i < samples.size(); ++i) {
                if (!samples[i].on_slit) continue;
                double dist = 1e300;
                for (const auto& pc : d.boundary.pieces)
                    if (pc.side() == Side::None) dist = std::min(dist, pc.distance(samples[i].z));
                if (dist > best) {
                    best = dist;
                    best_i = i;
                }
            }
            std::size_t cut = samples.size() - 1 - best_i;  // index in reversed order
            std::rotate(pts.begin(), pts.begin() + cut, pts.end());
        }
        ConformalMap inner = zipper_chain(pts, 0.0);
        // g(zeta) = anchor + 1/inner(1/zeta)
        g.model = Model::Exterior;
        g.conjugated = true;
        g.anchor = anchor;
        g.map.append(Primitive::reciprocal());
        g.inner_begin = g.map.chain.size();
        g.map.chain.insert(g.map.chain.end(), inner.chain.begin(), inner.chain.end());
        g.inner_end = g.map.chain.size();
        g.map.append(Primitive::mobius(anchor, 1.0, 1.0, 0.0));  // w -> (anchor w + 1)/w
    }

    // calibrate the landing slack against the true boundary: the geodesic
    // interpolation error grows with curvature, so probe it directly
    {
        double diam = d.boundary.diameter();
        double worst = 0;
        for (int k = 0; k < 32; ++k) {
            RadialLimit rl = radial_limit(g, Angle::from_turns((k + 0.37) / 32.0));
            if (rl.converged) worst = std::max(worst, d.boundary.distance(rl.value));
        }
        double floor = d.boundary.has_slit() ? std::max(2.0 * keyhole_delta, 1e-6) : 1e-7;
        g.boundary_slack = std::max(floor, 3.0 * worst / diam);
    }
    if (d.marked_point)
        g = normalize(std::move(g), Normalization::MarkedPoint, d.marked_point);
    else
        g = normalize(std::move(g), Normalization::DerivativePositive);
    return g;
}

}  // namespace confdisk
