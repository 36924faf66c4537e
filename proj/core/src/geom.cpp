#include "confdisk/geom.hpp"

#include <algorithm>
#include <cmath>

namespace confdisk {

namespace {
double reduce_turns(double t) {
    double r = t - std::floor(t);
    if (r >= 1.0) r -= 1.0;  // guards the t = -1e-18 case
    return r;
}
cplx unit(cplx z) {
    double m = std::abs(z);
    return m > 0 ? z / m : cplx(1, 0);
}
}  // namespace

Angle Angle::from_turns(double t) {
    Angle a;
    a.turns_ = reduce_turns(t);
    return a;
}

Angle Angle::from_point(cplx z) {
    if (z == cplx(0, 0)) throw PreconditionError("Angle::from_point: zero");
    return from_turns(std::arg(z) / kTwoPi);
}

cplx Angle::point() const { return std::polar(1.0, kTwoPi * turns_); }

double angle_distance(Angle a, Angle b) {
    double d = std::fabs(a.turns() - b.turns());
    return std::min(d, 1.0 - d);
}

bool Angle::approx_equal(Angle other, const Tolerances& tol) const {
    return angle_distance(*this, other) < tol.angle;
}

double arc_length(const ArcInterval& I) {
    if (I.full_circle) return 1.0;
    return reduce_turns(I.end.turns() - I.start.turns());
}

bool arc_contains(const ArcInterval& I, Angle a, const Tolerances& tol) {
    if (I.full_circle) return true;
    double len = arc_length(I);
    double off = reduce_turns(a.turns() - I.start.turns());
    if (I.closed) {
        if (off < tol.angle || off > 1.0 - tol.angle) return true;
        return off <= len + tol.angle;
    }
    if (off < tol.angle || off > 1.0 - tol.angle) return false;
    return off < len - tol.angle;
}

bool cyclic_order(Angle a, Angle b, Angle c, const Tolerances& tol) {
    if (angle_distance(a, b) < tol.angle || angle_distance(b, c) < tol.angle ||
        angle_distance(a, c) < tol.angle)
        throw PreconditionError("cyclic_order: coincident angles");
    double ab = reduce_turns(b.turns() - a.turns());
    double ac = reduce_turns(c.turns() - a.turns());
    return ab < ac;
}

std::string side_name(Side s) {
    switch (s) {
        case Side::Minus: return "minus";
        case Side::Plus: return "plus";
        default: return "none";
    }
}

// BoundaryPiece ---------------------------------------------------------

BoundaryPiece BoundaryPiece::circular_arc(cplx center, double radius, double ang0, double ang1,
                                          Side side) {
    BoundaryPiece p;
    p.kind_ = Kind::CircularArc;
    p.side_ = side;
    p.a_ = center;
    p.radius_ = radius;
    p.ang0_ = ang0;
    p.ang1_ = ang1;
    p.length_ = std::fabs(ang1 - ang0) * radius;
    return p;
}

BoundaryPiece BoundaryPiece::segment(cplx a, cplx b, Side side) {
    BoundaryPiece p;
    p.kind_ = Kind::Segment;
    p.side_ = side;
    p.a_ = a;
    p.b_ = b;
    p.length_ = std::abs(b - a);
    return p;
}

BoundaryPiece BoundaryPiece::parametric(std::vector<cplx> coeffs, int k_min, Side side) {
    BoundaryPiece p;
    p.kind_ = Kind::Parametric;
    p.side_ = side;
    p.coeffs_ = std::move(coeffs);
    p.k_min_ = k_min;
    p.compute_length();
    return p;
}

void BoundaryPiece::compute_length() {
    double len = 0;
    cplx prev = point(0.0);
    for (int i = 1; i <= n_samples_; ++i) {
        cplx cur = point(double(i) / n_samples_);
        len += std::abs(cur - prev);
        prev = cur;
    }
    length_ = len;
}

cplx BoundaryPiece::point(double u) const {
    switch (kind_) {
        case Kind::Segment: return a_ + u * (b_ - a_);
        case Kind::CircularArc: {
            double ang = ang0_ + u * (ang1_ - ang0_);
            return a_ + std::polar(radius_, ang);
        }
        case Kind::Parametric: {
            cplx z = 0;
            for (std::size_t j = 0; j < coeffs_.size(); ++j) {
                int k = k_min_ + int(j);
                z += coeffs_[j] * std::polar(1.0, kTwoPi * k * u);
            }
            return z;
        }
    }
    return {};
}

cplx BoundaryPiece::tangent(double u) const {
    switch (kind_) {
        case Kind::Segment: return b_ - a_;
        case Kind::CircularArc: {
            double ang = ang0_ + u * (ang1_ - ang0_);
            return cplx(0, 1) * std::polar(radius_, ang) * (ang1_ - ang0_);
        }
        case Kind::Parametric: {
            cplx z = 0;
            for (std::size_t j = 0; j < coeffs_.size(); ++j) {
                int k = k_min_ + int(j);
                z += coeffs_[j] * cplx(0, kTwoPi * k) * std::polar(1.0, kTwoPi * k * u);
            }
            return z;
        }
    }
    return {};
}

double BoundaryPiece::nearest_param(cplx z) const {
    switch (kind_) {
        case Kind::Segment: {
            cplx d = b_ - a_;
            double t = ((z - a_) * std::conj(d)).real() / std::norm(d);
            return std::clamp(t, 0.0, 1.0);
        }
        case Kind::CircularArc: {
            double ang = std::arg(z - a_);
            double lo = std::min(ang0_, ang1_), hi = std::max(ang0_, ang1_);
            // choose representative of ang within [lo-2pi, hi+2pi] closest to span
            double best_u = 0, best_d = 1e300;
            for (int s = -1; s <= 1; ++s) {
                double a = ang + s * kTwoPi;
                double ac = std::clamp(a, lo, hi);
                double u = (ac - ang0_) / (ang1_ - ang0_);
                double d = std::abs(z - point(u));
                if (d < best_d) {
                    best_d = d;
                    best_u = u;
                }
            }
            return best_u;
        }
        case Kind::Parametric: {
            double best_u = 0, best_d = 1e300;
            for (int i = 0; i < n_samples_; ++i) {
                double u = (i + 0.5) / n_samples_;
                double d = std::abs(z - point(u));
                if (d < best_d) {
                    best_d = d;
                    best_u = u;
                }
            }
            // Newton on f(u) = d/du |z - p(u)|^2
            for (int it = 0; it < 4; ++it) {
                cplx p = point(best_u), t = tangent(best_u);
                double h = 1e-6;
                cplx t2 = (tangent(best_u + h) - tangent(best_u - h)) / (2 * h);
                double f = -2.0 * ((z - p) * std::conj(t)).real();
                double fp = 2.0 * std::norm(t) - 2.0 * ((z - p) * std::conj(t2)).real();
                if (fp == 0) break;
                best_u -= f / fp;
                best_u = best_u - std::floor(best_u);
            }
            return best_u;
        }
    }
    return 0;
}

BoundaryPiece BoundaryPiece::scaled(cplx f) const {
    switch (kind_) {
        case Kind::Segment: return segment(f * a_, f * b_, side_);
        case Kind::CircularArc: {
            double rot = std::arg(f);
            return circular_arc(f * a_, std::abs(f) * radius_, ang0_ + rot, ang1_ + rot, side_);
        }
        case Kind::Parametric: {
            std::vector<cplx> c = coeffs_;
            for (auto& x : c) x *= f;
            return parametric(std::move(c), k_min_, side_);
        }
    }
    return *this;
}

double BoundaryPiece::distance(cplx z) const {
    switch (kind_) {
        case Kind::Segment: return std::abs(z - point(nearest_param(z)));
        case Kind::CircularArc: {
            double ang = std::arg(z - a_);
            double lo = std::min(ang0_, ang1_), hi = std::max(ang0_, ang1_);
            bool in_span = false;
            for (int s = -1; s <= 1 && !in_span; ++s)
                in_span = (ang + s * kTwoPi >= lo - 1e-15 && ang + s * kTwoPi <= hi + 1e-15);
            if (in_span) return std::fabs(std::abs(z - a_) - radius_);
            return std::min(std::abs(z - point(0.0)), std::abs(z - point(1.0)));
        }
        case Kind::Parametric: return std::abs(z - point(nearest_param(z)));
    }
    return 0;
}

// BoundaryCurve ---------------------------------------------------------

double BoundaryCurve::total_length() const {
    double s = 0;
    for (const auto& p : pieces) s += p.length();
    return s;
}

double BoundaryCurve::diameter() const {
    if (pieces.empty()) return 0.0;
    // bounding box over coarse samples
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& p : pieces)
        for (int i = 0; i <= 32; ++i) {
            cplx z = p.point(i / 32.0);
            xlo = std::min(xlo, z.real());
            xhi = std::max(xhi, z.real());
            ylo = std::min(ylo, z.imag());
            yhi = std::max(yhi, z.imag());
        }
    return std::hypot(xhi - xlo, yhi - ylo);
}

double BoundaryCurve::distance(cplx z) const {
    double d = 1e300;
    for (const auto& p : pieces) d = std::min(d, p.distance(z));
    return d;
}

cplx BoundaryCurve::nearest_point(cplx z, Side* side) const {
    double best = 1e300;
    cplx bz{};
    Side bs = Side::None;
    for (const auto& p : pieces) {
        double u = p.nearest_param(z);
        cplx q = p.point(u);
        double d = std::abs(z - q);
        if (d < best) {
            best = d;
            bz = q;
            bs = p.side();
        }
    }
    if (side) *side = bs;
    return bz;
}

bool BoundaryCurve::has_slit() const {
    return std::any_of(pieces.begin(), pieces.end(),
                       [](const BoundaryPiece& p) { return p.side() != Side::None; });
}

// PointedDisk ------------------------------------------------------------

cplx PointedDisk::complement_anchor() const {
    if (!center_at_inf) throw PreconditionError("complement_anchor: finite-center disk");
    // Every builtin exterior family keeps the origin inside its complement.
    if (!inside(0.0) && boundary.distance(0.0) > 1e-3 * boundary.diameter()) return 0.0;
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& p : boundary.pieces)
        for (int i = 0; i <= 32; ++i) {
            cplx z = p.point(i / 32.0);
            xlo = std::min(xlo, z.real());
            xhi = std::max(xhi, z.real());
            ylo = std::min(ylo, z.imag());
            yhi = std::max(yhi, z.imag());
        }
    cplx c((xlo + xhi) / 2, (ylo + yhi) / 2);
    if (inside(c)) throw ConstructionError("complement_anchor: no interior complement point found");
    return c;
}

double PointedDisk::boundary_param(cplx z, Side side) const {
    double acc = 0;
    double best = 1e300, best_param = 0;
    for (const auto& p : boundary.pieces) {
        if (side == Side::None || p.side() == Side::None || p.side() == side) {
            double u = p.nearest_param(z);
            double d = std::abs(z - p.point(u));
            // prefer exact side matches on ties
            double bias = (p.side() == side) ? 0.0 : 1e-12;
            if (d + bias < best) {
                best = d + bias;
                best_param = acc + u * p.length();
            }
        }
        acc += p.length();
    }
    return best_param;
}

double boundary_distance(const PointedDisk& d, cplx z) { return d.boundary.distance(z); }

namespace {

// cos-clustered samples of (0,1): denser near both ends
double cluster(double s) { return 0.5 - 0.5 * std::cos(kPi * s); }

bool point_in_polygon(const std::vector<cplx>& poly, cplx z) {
    bool in = false;
    std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        double xi = poly[i].real(), yi = poly[i].imag();
        double xj = poly[j].real(), yj = poly[j].imag();
        if ((yi > z.imag()) != (yj > z.imag()) &&
            z.real() < (xj - xi) * (z.imag() - yi) / (yj - yi) + xi)
            in = !in;
    }
    return in;
}

}  // namespace

std::string disk_kind_name(DiskKind k) {
    switch (k) {
        case DiskKind::UnitDisk: return "unit_disk";
        case DiskKind::DiskExterior: return "disk_exterior";
        case DiskKind::SegmentExterior: return "segment_exterior";
        case DiskKind::JoukowskiExterior: return "joukowski_exterior";
        case DiskKind::EllipseInterior: return "ellipse_interior";
        case DiskKind::RadialSlitExterior: return "radial_slit_exterior";
        case DiskKind::ArcSlitExterior: return "arc_slit_exterior";
        case DiskKind::TiltedSlitExterior: return "tilted_slit_exterior";
        case DiskKind::EllipseExterior: return "ellipse_exterior";
        case DiskKind::RotatedSlitExterior: return "rotated_slit_exterior";
        case DiskKind::SpikedSegmentExterior: return "spiked_segment_exterior";
        case DiskKind::Polygon: return "polygon";
        case DiskKind::Sampled: return "sampled";
    }
    return "?";
}

std::vector<BoundarySample> PointedDisk::sample_boundary(int n, double keyhole_delta) const {
    // Canonical prime-end order. Slit pieces get offset into the adjacent
    // domain side; the offset sign follows the piece traversal direction (for
    // exterior domains the domain lies to the right of the traversal).
    std::vector<BoundarySample> out;
    double total = boundary.total_length();
    double delta = keyhole_delta * boundary.diameter();
    double sgn = center_at_inf ? -1.0 : 1.0;  // domain side = sgn * i * tangent
    for (const auto& p : boundary.pieces) {
        int m = std::max(4, int(std::lround(n * p.length() / total)));
        bool slit = p.side() != Side::None;
        std::vector<double> us(m);
        if (slit) {
            for (int i = 0; i < m; ++i) us[i] = cluster((i + 0.5) / m);
        } else if (p.kind() == BoundaryPiece::Kind::Parametric) {
            // quantiles of |z'|^{1/2}: clusters samples at slow (high
            // curvature) spots more strongly than plain arclength
            const int grid = 2048;
            std::vector<double> cum(grid + 1, 0.0);
            for (int i = 0; i < grid; ++i)
                cum[i + 1] = cum[i] + std::sqrt(std::abs(p.tangent((i + 0.5) / grid)));
            for (int i = 0; i < m; ++i) {
                double w = cum[grid] * (i + 0.5) / m;
                std::size_t lo = std::lower_bound(cum.begin(), cum.end(), w) - cum.begin();
                lo = std::min<std::size_t>(std::max<std::size_t>(lo, 1), grid);
                double frac = (w - cum[lo - 1]) / std::max(1e-300, cum[lo] - cum[lo - 1]);
                us[i] = (double(lo - 1) + frac) / grid;
            }
        } else {
            for (int i = 0; i < m; ++i) us[i] = (i + 0.5) / m;
        }
        for (int i = 0; i < m; ++i) {
            double u = us[i];
            cplx z = p.point(u);
            if (slit) z += sgn * cplx(0, 1) * unit(p.tangent(u)) * delta;
            out.push_back({z, p.side(), slit});
        }
    }
    return out;
}

// Builders ---------------------------------------------------------------

PointedDisk make_unit_disk(cplx center) {
    PointedDisk d;
    d.boundary.pieces = {BoundaryPiece::circular_arc(0.0, 1.0, 0.0, kTwoPi)};
    d.center = center;
    d.kind = DiskKind::UnitDisk;
    d.params = {center};
    d.inside_fn = [](cplx z) { return std::abs(z) < 1.0; };
    if (std::abs(center) >= 1.0) throw PreconditionError("unit_disk: center outside");
    return d;
}

PointedDisk make_disk_exterior() {
    PointedDisk d;
    d.boundary.pieces = {BoundaryPiece::circular_arc(0.0, 1.0, 0.0, kTwoPi)};
    d.center_at_inf = true;
    d.kind = DiskKind::DiskExterior;
    d.inside_fn = [](cplx z) { return std::abs(z) > 1.0; };
    return d;
}

PointedDisk make_segment_exterior() {
    PointedDisk d;
    d.boundary.pieces = {BoundaryPiece::segment(2.0, -2.0, Side::Minus),
                         BoundaryPiece::segment(-2.0, 2.0, Side::Plus)};
    d.center_at_inf = true;
    d.marked_point = 2.0;
    d.kind = DiskKind::SegmentExterior;
    d.inside_fn = [](cplx z) {
        return std::fabs(z.imag()) > 0.0 || std::fabs(z.real()) > 2.0;
    };
    return d;
}

namespace {
PointedDisk make_laurent_ellipse(cplx t, bool interior) {
    PointedDisk d;
    d.boundary.pieces = {BoundaryPiece::parametric({t, 0.0, 1.0}, -1)};
    d.kind = interior ? DiskKind::EllipseInterior : DiskKind::JoukowskiExterior;
    d.params = {t};
    d.marked_point = 1.0 + t;
    if (interior) {
        d.center = 0.0;
        double n2 = std::norm(t);
        d.inside_fn = [t, n2](cplx z) {
            return std::abs((z - t * std::conj(z)) / (1.0 - n2)) < 1.0;
        };
    } else {
        d.center_at_inf = true;
        d.inside_fn = [t](cplx z) {
            // exterior preimage of z under w + t/w: the larger root of
            // w^2 - z w + t = 0 must lie outside the closed unit disk
            cplx s = std::sqrt(z * z - 4.0 * t);
            cplx w1 = (z + s) / 2.0, w2 = (z - s) / 2.0;
            return std::max(std::abs(w1), std::abs(w2)) > 1.0;
        };
    }
    return d;
}
}  // namespace

PointedDisk make_joukowski_exterior(cplx t) {
    if (std::abs(t) >= 1.0) throw PreconditionError("joukowski_exterior: |t| >= 1");
    return make_laurent_ellipse(t, false);
}

PointedDisk make_ellipse_interior(cplx t) {
    if (std::abs(t) >= 1.0) throw PreconditionError("ellipse_interior: |t| >= 1");
    return make_laurent_ellipse(t, true);
}

PointedDisk make_ellipse_exterior(double a, double b) {
    if (a <= 0 || b <= 0) throw PreconditionError("ellipse_exterior: bad semiaxes");
    PointedDisk d;
    cplx c1 = (a + b) / 2.0, cm1 = (a - b) / 2.0;
    d.boundary.pieces = {BoundaryPiece::parametric({cm1, 0.0, c1}, -1)};
    d.center_at_inf = true;
    d.kind = DiskKind::EllipseExterior;
    d.params = {a, b};
    d.marked_point = a;
    d.inside_fn = [a, b](cplx z) {
        double x = z.real() / a, y = z.imag() / b;
        return x * x + y * y > 1.0;
    };
    return d;
}

PointedDisk make_radial_slit_exterior(double p) {
    if (!(p > 1.0)) throw PreconditionError("radial_slit_exterior: need p > 1");
    return make_tilted_slit_exterior(cplx(p, 0.0));
}

PointedDisk make_tilted_slit_exterior(cplx p) {
    if (!(p.real() > 1.0))
        throw ConstructionError("tilted_slit_exterior: slit endpoint must have Re > 1");
    PointedDisk d;
    d.boundary.pieces = {BoundaryPiece::segment(p, 1.0, Side::Minus),
                         BoundaryPiece::circular_arc(0.0, 1.0, 0.0, kTwoPi),
                         BoundaryPiece::segment(1.0, p, Side::Plus)};
    d.center_at_inf = true;
    d.marked_point = p;
    d.kind = (p.imag() == 0.0) ? DiskKind::RadialSlitExterior : DiskKind::TiltedSlitExterior;
    d.params = {p};
    d.inside_fn = [](cplx z) { return std::abs(z) > 1.0; };
    return d;
}

PointedDisk make_arc_slit_exterior(double delta, double eps) {
    if (!(delta > 0 && delta < 0.5) || !(eps > 0))
        throw PreconditionError("arc_slit_exterior: need 0 < delta < 1/2, eps > 0");
    cplx p = std::polar(1.0 + eps, kTwoPi * delta);
    if (!(p.real() < 1.0))
        throw ConstructionError("arc_slit_exterior: asymmetry condition fails (Re p >= 1)");
    double c = (std::norm(p) - 1.0) / (2.0 * (1.0 - p.real()));
    cplx cc(-c, 0.0);
    double R = c + 1.0;
    double th_p = std::arg(p - cc);  // in (0, pi)
    PointedDisk d;
    d.boundary.pieces = {BoundaryPiece::circular_arc(cc, R, th_p, 0.0, Side::Minus),
                         BoundaryPiece::circular_arc(0.0, 1.0, 0.0, kTwoPi),
                         BoundaryPiece::circular_arc(cc, R, 0.0, th_p, Side::Plus)};
    d.center_at_inf = true;
    d.marked_point = p;
    d.kind = DiskKind::ArcSlitExterior;
    d.params = {delta, eps};
    d.inside_fn = [](cplx z) { return std::abs(z) > 1.0; };
    return d;
}

PointedDisk make_rotated_slit_exterior(double q, double at) {
    if (!(q > 1.0)) throw PreconditionError("rotated_slit_exterior: need q > 1");
    cplx rot = std::polar(1.0, kTwoPi * at);
    cplx tip = rot * q;
    PointedDisk d;
    d.boundary.pieces = {BoundaryPiece::segment(tip, rot, Side::Minus),
                         BoundaryPiece::circular_arc(0.0, 1.0, kTwoPi * at, kTwoPi * at + kTwoPi),
                         BoundaryPiece::segment(rot, tip, Side::Plus)};
    d.center_at_inf = true;
    d.marked_point = tip;
    d.kind = DiskKind::RotatedSlitExterior;
    d.params = {q, at};
    d.inside_fn = [](cplx z) { return std::abs(z) > 1.0; };
    return d;
}

PointedDisk make_spiked_segment_exterior(double s) {
    if (!(s > 0)) throw PreconditionError("spiked_segment_exterior: need s > 0");
    PointedDisk d;
    cplx tip(0.0, s);
    d.boundary.pieces = {
        BoundaryPiece::segment(2.0, 0.0, Side::Minus),
        BoundaryPiece::segment(0.0, tip, Side::Minus),
        BoundaryPiece::segment(tip, 0.0, Side::Plus),
        BoundaryPiece::segment(0.0, -2.0, Side::Minus),
        BoundaryPiece::segment(-2.0, 2.0, Side::Plus),
    };
    d.center_at_inf = true;
    d.marked_point = 2.0;
    d.kind = DiskKind::SpikedSegmentExterior;
    d.params = {s};
    d.inside_fn = [s](cplx z) {
        bool on_seg = z.imag() == 0.0 && std::fabs(z.real()) <= 2.0;
        bool on_spike = z.real() == 0.0 && z.imag() >= 0.0 && z.imag() <= s;
        return !on_seg && !on_spike;
    };
    return d;
}

PointedDisk scale_disk(const PointedDisk& d, cplx factor) {
    if (factor == cplx(0, 0)) throw PreconditionError("scale_disk: zero factor");
    PointedDisk out = d;
    out.boundary.pieces.clear();
    for (const auto& p : d.boundary.pieces) out.boundary.pieces.push_back(p.scaled(factor));
    if (!d.center_at_inf) out.center = factor * d.center;
    if (d.marked_point) out.marked_point = factor * *d.marked_point;
    out.kind = DiskKind::Sampled;
    auto base_inside = d.inside_fn;
    out.inside_fn = [base_inside, factor](cplx z) { return base_inside(z / factor); };
    return out;
}

PointedDisk make_polygon(const std::vector<cplx>& vertices, cplx center) {
    if (vertices.size() < 3) throw PreconditionError("polygon: need >= 3 vertices");
    PointedDisk d;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        d.boundary.pieces.push_back(
            BoundaryPiece::segment(vertices[i], vertices[(i + 1) % vertices.size()]));
    d.center = center;
    d.kind = DiskKind::Polygon;
    auto verts = vertices;
    d.inside_fn = [verts](cplx z) { return point_in_polygon(verts, z); };
    if (!d.inside(center)) throw PreconditionError("polygon: center not inside");
    return d;
}

}  // namespace confdisk
