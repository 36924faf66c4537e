#include "confdisk/confmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "confdisk/zipper.hpp"

namespace confdisk {

namespace {

const cplx kInf(std::numeric_limits<double>::infinity(), 0.0);
bool is_inf(cplx z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

// sqrt with branch cut along [0, inf); image is the closed upper half plane.
cplx sqrt_pos(cplx z) {
    double th = std::arg(z);  // (-pi, pi]
    if (th <= 0) th += kTwoPi;
    return std::polar(std::sqrt(std::abs(z)), 0.5 * th);
}

// Exterior-branch inverse of z + c/z: the root of zeta^2 - w zeta + c = 0 of
// larger modulus; near-ties broken by the hint (continuity along the path).
cplx zhuk_c_inv(cplx w, cplx c, const cplx* hint) {
    if (is_inf(w)) return kInf;
    cplx s = std::sqrt(w * w - 4.0 * c);
    cplx r1 = (w + s) / 2.0, r2 = (w - s) / 2.0;
    double m1 = std::abs(r1), m2 = std::abs(r2);
    if (hint && *hint != cplx(0, 0) && std::fabs(m1 - m2) < 1e-6 * (m1 + m2))
        return (std::abs(r1 - *hint) <= std::abs(r2 - *hint)) ? r1 : r2;
    return m1 >= m2 ? r1 : r2;
}

}  // namespace

Primitive Primitive::mobius(cplx a, cplx b, cplx c, cplx d) {
    if (a * d - b * c == cplx(0, 0)) throw PreconditionError("mobius: zero determinant");
    Primitive p;
    p.kind = Kind::Mobius;
    p.a = a;
    p.b = b;
    p.c_ = c;
    p.d_ = d;
    return p;
}
Primitive Primitive::affine(cplx a, cplx b) { return mobius(a, b, 0.0, 1.0); }
Primitive Primitive::rotation(double turns) { return affine(std::polar(1.0, kTwoPi * turns), 0.0); }
Primitive Primitive::reciprocal() { return mobius(0.0, 1.0, 1.0, 0.0); }
Primitive Primitive::power(double alpha) {
    Primitive p;
    p.kind = Kind::Power;
    p.alpha = alpha;
    return p;
}
Primitive Primitive::zhuk() {
    Primitive p;
    p.kind = Kind::Zhuk;
    return p;
}
Primitive Primitive::zhuk_inv_ext() {
    Primitive p;
    p.kind = Kind::ZhukInvExt;
    return p;
}
Primitive Primitive::family_quad(cplx a) {
    Primitive p;
    p.kind = Kind::FamilyQuad;
    p.a = a;
    return p;
}
Primitive Primitive::family_zhuk_c(cplx a) {
    Primitive p;
    p.kind = Kind::FamilyZhukC;
    p.a = a;
    return p;
}
Primitive Primitive::zip_init(cplx z0, cplx z1) {
    Primitive p;
    p.kind = Kind::ZipInit;
    p.a = z0;
    p.b = z1;
    return p;
}
Primitive Primitive::zip_stage(double b, double d) {
    Primitive p;
    p.kind = Kind::ZipStage;
    p.binv = std::isinf(b) ? 0.0 : 1.0 / b;
    p.d = d;
    return p;
}
Primitive Primitive::zip_close(double p_, bool q2) {
    Primitive p;
    p.kind = Kind::ZipClose;
    p.pinv = std::isinf(p_) ? 0.0 : 1.0 / p_;
    p.flag = q2;
    return p;
}

cplx Primitive::eval(cplx z, const cplx* hint) const {
    switch (kind) {
        case Kind::Mobius: {
            if (is_inf(z)) return c_ == cplx(0, 0) ? kInf : a / c_;
            cplx den = c_ * z + d_;
            if (den == cplx(0, 0)) return kInf;
            return (a * z + b) / den;
        }
        case Kind::Power:
            return std::pow(z, alpha);
        case Kind::Zhuk:
            if (is_inf(z) || z == cplx(0, 0)) return kInf;
            return z + 1.0 / z;
        case Kind::ZhukInvExt:
            return zhuk_c_inv(z, 1.0, hint);
        case Kind::FamilyQuad:
            return z + a * z * z;
        case Kind::FamilyZhukC:
            if (is_inf(z) || z == cplx(0, 0)) return kInf;
            return z + a / z;
        case Kind::ZipInit: {
            if (z == a) return kInf;
            cplx q = is_inf(z) ? cplx(1, 0) : (z - b) / (z - a);
            return cplx(0, 1) * std::sqrt(q);
        }
        case Kind::ZipStage: {
            cplx m = z / (1.0 - z * binv);
            cplx u = m / d;
            return sqrt_pos(u * u + 1.0);
        }
        case Kind::ZipClose: {
            cplx m = z / (1.0 - z * pinv);
            cplx m2 = m * m;
            return flag ? -m2 : m2;
        }
    }
    return {};
}

cplx Primitive::eval_inverse(cplx w, const cplx* hint) const {
    switch (kind) {
        case Kind::Mobius: {
            if (is_inf(w)) return c_ == cplx(0, 0) ? kInf : -d_ / c_;
            if (c_ != cplx(0, 0) && w == a / c_) return kInf;
            return (d_ * w - b) / (-c_ * w + a);
        }
        case Kind::Power:
            return std::pow(w, 1.0 / alpha);
        case Kind::Zhuk:
            return zhuk_c_inv(w, 1.0, hint);
        case Kind::ZhukInvExt:
            if (is_inf(w) || w == cplx(0, 0)) return kInf;
            return w + 1.0 / w;
        case Kind::FamilyQuad: {
            // branch fixing the origin
            cplx s = std::sqrt(1.0 + 4.0 * a * w);
            return (s - 1.0) / (2.0 * a);
        }
        case Kind::FamilyZhukC:
            return zhuk_c_inv(w, a, hint);
        case Kind::ZipInit: {
            cplx mi = w / cplx(0, 1);
            cplx q = mi * mi;
            if (q == cplx(1, 0)) return kInf;
            if (is_inf(w)) return a;
            return (b - q * a) / (1.0 - q);
        }
        case Kind::ZipStage: {
            cplx s = d * sqrt_pos(w * w - 1.0);
            return s / (1.0 + s * binv);
        }
        case Kind::ZipClose: {
            cplx m;
            if (flag) {
                cplx v = -w;
                double th = std::arg(v);
                if (th > 0) th -= kTwoPi;
                th += kTwoPi;  // (pi, 2pi]
                m = std::polar(std::sqrt(std::abs(v)), 0.5 * th);
            } else {
                m = std::sqrt(w);
            }
            return m / (1.0 + m * pinv);
        }
    }
    return {};
}

cplx Primitive::derivative(cplx z) const {
    switch (kind) {
        case Kind::Mobius: {
            cplx den = c_ * z + d_;
            return (a * d_ - b * c_) / (den * den);
        }
        case Kind::Power:
            return alpha * std::pow(z, alpha - 1.0);
        case Kind::Zhuk:
            return 1.0 - 1.0 / (z * z);
        case Kind::ZhukInvExt: {
            cplx zeta = eval(z);
            return 1.0 / (1.0 - 1.0 / (zeta * zeta));
        }
        case Kind::FamilyQuad:
            return 1.0 + 2.0 * a * z;
        case Kind::FamilyZhukC:
            return 1.0 - a / (z * z);
        case Kind::ZipInit: {
            cplx q = (z - b) / (z - a);
            cplx qp = (b - a) / ((z - a) * (z - a));
            cplx zeta = cplx(0, 1) * std::sqrt(q);
            return qp * zeta / (2.0 * q);
        }
        case Kind::ZipStage: {
            cplx den = 1.0 - z * binv;
            cplx m = z / den;
            cplx mp = 1.0 / (den * den);
            cplx s = sqrt_pos((m / d) * (m / d) + 1.0);
            return (m / (d * d)) * mp / s;
        }
        case Kind::ZipClose: {
            cplx den = 1.0 - z * pinv;
            cplx m = z / den;
            cplx mp = 1.0 / (den * den);
            cplx out = 2.0 * m * mp;
            return flag ? -out : out;
        }
    }
    return {};
}

// ConformalMap -----------------------------------------------------------

ConformalMap ConformalMap::identity() {
    ConformalMap m;
    m.chain.push_back({Primitive::affine(1.0, 0.0), false});
    return m;
}

ConformalMap ConformalMap::compose(const ConformalMap& first, const ConformalMap& then) {
    ConformalMap m = first;
    m.chain.insert(m.chain.end(), then.chain.begin(), then.chain.end());
    return m;
}

void ConformalMap::prepend(const Primitive& p, bool inverted) {
    chain.insert(chain.begin(), {p, inverted});
}
void ConformalMap::append(const Primitive& p, bool inverted) { chain.push_back({p, inverted}); }

cplx ConformalMap::eval(cplx z) const {
    EvalHints h = make_hints();
    return eval(z, h);
}

cplx ConformalMap::eval(cplx z, EvalHints& hints) const {
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& e = chain[i];
        const cplx* hint = hints[i] ? &*hints[i] : nullptr;
        z = e.inverted ? e.prim.eval_inverse(z, hint) : e.prim.eval(z, hint);
        hints[i] = z;
    }
    return z;
}

cplx ConformalMap::eval_inverse(cplx w) const {
    EvalHints hints(chain.size());
    for (std::size_t i = chain.size(); i-- > 0;) {
        const auto& e = chain[i];
        w = e.inverted ? e.prim.eval(w, nullptr) : e.prim.eval_inverse(w, nullptr);
    }
    return w;
}

cplx ConformalMap::derivative(cplx z) const {
    cplx d(1, 0);
    for (const auto& e : chain) {
        if (e.inverted) {
            cplx out = e.prim.eval_inverse(z, nullptr);
            d /= e.prim.derivative(out);
            z = out;
        } else {
            d *= e.prim.derivative(z);
            z = e.prim.eval(z);
        }
    }
    return d;
}

namespace {

// One chart-aware dual step through a primitive (forward sense). The deriv
// component is taken in the w = 1/z chart at the point at infinity.
DualPoint dual_step(const Primitive& p, DualPoint in) {
    using K = Primitive::Kind;
    if (!in.inf) {
        cplx out = p.eval(in.value);
        if (!is_inf(out)) {
            return {out, false, in.deriv * p.derivative(in.value)};
        }
        // finite -> infinity
        switch (p.kind) {
            case K::Mobius: {
                cplx num = p.a * in.value + p.b;
                cplx d = (p.c_ * num - p.a * (p.c_ * in.value + p.d_)) / (num * num);
                return {out, true, in.deriv * d};
            }
            case K::Zhuk: {
                // z = 0 -> inf; (1/Z)'(0) = 1
                return {out, true, in.deriv};
            }
            case K::FamilyZhukC: {
                // (z/(z^2+c))'(0) = 1/c
                return {out, true, in.deriv / p.a};
            }
            default:
                throw NumericError("dual_step: unsupported pole");
        }
    }
    // input at infinity
    switch (p.kind) {
        case K::Mobius: {
            if (p.c_ == cplx(0, 0)) {
                // inf -> inf: (1/M(1/w))'(0) = d/a
                return {kInf, true, in.deriv * p.d_ / p.a};
            }
            cplx out = p.a / p.c_;
            cplx d = (p.b * p.c_ - p.a * p.d_) / (p.c_ * p.c_);
            return {out, false, in.deriv * d};
        }
        case K::Zhuk:
            return {kInf, true, in.deriv};  // 1/Z(1/w) = w/(1+w^2)
        case K::ZhukInvExt:
            return {kInf, true, in.deriv};
        case K::FamilyZhukC:
            return {kInf, true, in.deriv};  // w/(1+cw^2)
        case K::ZipInit: {
            cplx out = cplx(0, 1);  // i*sqrt(1)
            return {out, false, in.deriv * cplx(0, 1) * (p.a - p.b) / 2.0};
        }
        default:
            throw NumericError("dual_step: unsupported point at infinity");
    }
}

DualPoint dual_step_inverted(const Primitive& p, DualPoint in) {
    if (!in.inf) {
        cplx out = p.eval_inverse(in.value);
        if (!is_inf(out)) return {out, false, in.deriv / p.derivative(out)};
    }
    if (p.kind == Primitive::Kind::Mobius) {
        // invert the Mobius explicitly and reuse the forward logic
        Primitive q = Primitive::mobius(p.d_, -p.b, -p.c_, p.a);
        return dual_step(q, in);
    }
    if (in.inf &&
        (p.kind == Primitive::Kind::Zhuk || p.kind == Primitive::Kind::ZhukInvExt ||
         p.kind == Primitive::Kind::FamilyZhukC))
        return {kInf, true, in.deriv};
    throw NumericError("dual_step_inverted: unsupported configuration");
}

}  // namespace

DualPoint ConformalMap::eval_dual(DualPoint pnt) const {
    for (const auto& e : chain)
        pnt = e.inverted ? dual_step_inverted(e.prim, pnt) : dual_step(e.prim, pnt);
    return pnt;
}

std::string access_tag_name(AccessTag t) {
    switch (t) {
        case AccessTag::Uni: return "uni";
        case AccessTag::BiMinus: return "bi-";
        case AccessTag::BiPlus: return "bi+";
        default: return "unknown";
    }
}

// RiemannMap -------------------------------------------------------------

cplx RiemannMap::base_point_image() const {
    return model == Model::Disk ? map.eval(0.0) : map.eval(kInf);
}

double conformal_radius(const RiemannMap& g) { return g.conformal_radius; }

namespace {

double compute_radius(const RiemannMap& g) {
    if (g.model == Model::Disk) {
        DualPoint p = g.map.eval_dual({cplx(0, 0), false, cplx(1, 0)});
        if (p.inf) throw NumericError("conformal radius: base maps to infinity");
        return std::abs(p.deriv);
    }
    if (g.conjugated) {
        // rad(U, inf) = 1/|h'(0)| for the bounded picture h: D -> 1/(U-anchor)
        ConformalMap inner;
        inner.chain.assign(g.map.chain.begin() + g.inner_begin, g.map.chain.begin() + g.inner_end);
        DualPoint p = inner.eval_dual({cplx(0, 0), false, cplx(1, 0)});
        if (p.inf) throw NumericError("conformal radius: bounded slice maps base to infinity");
        return 1.0 / std::abs(p.deriv);
    }
    DualPoint p = g.map.eval_dual({kInf, true, cplx(1, 0)});
    if (!p.inf) throw NumericError("conformal radius: exterior base not fixed");
    // p.deriv = 1/A for g(zeta) = A zeta + O(1)
    return 1.0 / std::abs(p.deriv);
}

}  // namespace

RadialLimit radial_limit(const RiemannMap& g, Angle a) {
    EvalHints hints = g.map.make_hints();
    cplx dir = a.point();
    cplx v_prev2{}, v_prev{};
    int have = 0;
    cplx v{};
    for (int k = 2; k <= 40; ++k) {
        double r = 1.0 - std::pow(2.0, -k);
        cplx zeta = (g.model == Model::Disk) ? r * dir : dir / r;
        v = g.map.eval(zeta, hints);
        if (have >= 2 && std::abs(v - v_prev) < 1e-7 && std::abs(v_prev - v_prev2) < 1e-7)
            return {v, true};
        v_prev2 = v_prev;
        v_prev = v;
        ++have;
    }
    return {v, false};
}

BoundaryCorrespondence boundary_correspondence(const RiemannMap& g, int n, double offset) {
    if (n < 8) throw PreconditionError("boundary_correspondence: n >= 8 required");
    BoundaryCorrespondence out;
    out.source = g;
    double diam = g.target.boundary.diameter();
    out.match_tol = std::max(1e-6, 3.0 * g.boundary_slack) * diam;
    out.samples.resize(n);
    for (int j = 0; j < n; ++j) {
        Angle a = Angle::from_turns((j + offset) / n);
        RadialLimit rl = radial_limit(g, a);
        out.samples[j] = {a, rl.value, rl.converged, AccessTag::Unknown, 0.0};
    }

    const auto& pieces = g.target.boundary.pieces;
    bool slit = g.target.boundary.has_slit();
    if (!slit) {
        for (auto& s : out.samples)
            if (s.converged) s.tag = AccessTag::Uni;
    } else {
        // Identify slit geometries: pieces sharing endpoints with opposite
        // side markers describe the same slit.
        struct SlitGeom {
            const BoundaryPiece* piece;
            cplx e0, e1;
        };
        std::vector<SlitGeom> slits;
        for (const auto& p : pieces)
            if (p.side() == Side::Minus) slits.push_back({&p, p.point(0.0), p.point(1.0)});

        std::vector<int> slit_id(out.samples.size(), -1);
        double tip_tol = 2.0 * out.match_tol;
        for (std::size_t i = 0; i < out.samples.size(); ++i) {
            auto& s = out.samples[i];
            if (!s.converged) continue;
            s.tag = AccessTag::Uni;
            for (std::size_t k = 0; k < slits.size(); ++k) {
                if (slits[k].piece->distance(s.point) < out.match_tol) {
                    if (std::abs(s.point - slits[k].e0) < tip_tol ||
                        std::abs(s.point - slits[k].e1) < tip_tol)
                        break;  // slit endpoint: uniaccessible tip or corner
                    slit_id[i] = int(k);
                    break;
                }
            }
        }
        // Per slit, split the landing angles into their two runs; the run of
        // smaller turns is the minus side (cyclic order 1 -> a- -> a+). The
        // split sits where the slit parameter reverses direction (the far
        // tip of the slit).
        for (std::size_t k = 0; k < slits.size(); ++k) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < out.samples.size(); ++i)
                if (slit_id[i] == int(k)) idx.push_back(i);
            if (idx.size() < 2) continue;
            std::vector<double> u(idx.size());
            for (std::size_t j = 0; j < idx.size(); ++j)
                u[j] = slits[k].piece->nearest_param(out.samples[idx[j]].point);
            auto monotone = [&](std::size_t lo, std::size_t hi, int dir) {
                for (std::size_t j = lo + 1; j <= hi; ++j)
                    if (dir * (u[j] - u[j - 1]) < -1e-9) return false;
                return true;
            };
            // the turn-around pair consists of the two samples nearest the far
            // end; locating it by the adjacent-pair sum is robust to the two
            // sides landing at numerically identical points
            std::size_t jA = 0, jB = 0;
            double sA = -1e300, sB = 1e300;
            for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
                double s = u[j] + u[j + 1];
                if (s > sA) {
                    sA = s;
                    jA = j;
                }
                if (s < sB) {
                    sB = s;
                    jB = j;
                }
            }
            std::size_t split = idx.size();  // first index of the plus run
            if (jA + 1 < idx.size() && monotone(0, jA, +1) && monotone(jA + 1, idx.size() - 1, -1))
                split = jA + 1;
            else if (jB + 1 < idx.size() && monotone(0, jB, -1) &&
                     monotone(jB + 1, idx.size() - 1, +1))
                split = jB + 1;
            if (split >= idx.size()) {
                for (auto i : idx) out.samples[i].tag = AccessTag::Unknown;
                continue;
            }
            for (std::size_t j = 0; j < idx.size(); ++j)
                out.samples[idx[j]].tag = (j < split) ? AccessTag::BiMinus : AccessTag::BiPlus;
        }
    }

    for (auto& s : out.samples) {
        Side side = Side::None;
        if (s.tag == AccessTag::BiMinus) side = Side::Minus;
        if (s.tag == AccessTag::BiPlus) side = Side::Plus;
        if (s.converged) s.param = g.target.boundary_param(s.point, side);
    }
    return out;
}

std::vector<AngleHit> invert_boundary(const BoundaryCorrespondence& c, cplx p) {
    const auto& S = c.samples;
    const std::size_t n = S.size();
    const PointedDisk& disk = c.source.target;
    const double accept = std::max(c.match_tol, 1e-6 * disk.boundary.diameter());

    // champion sample per access class; a biaccessible point has one landing
    // cluster per side, so per-tag champions cover all its angles
    struct Champ {
        std::size_t idx = 0;
        double dist = 1e300;
    };
    Champ best[4];
    for (std::size_t i = 0; i < n; ++i) {
        if (!S[i].converged) continue;
        double d = std::abs(S[i].point - p);
        auto& ch = best[std::size_t(S[i].tag)];
        if (d < ch.dist) {
            ch.dist = d;
            ch.idx = i;
        }
    }

    auto dist = [&](double t) {
        RadialLimit rl = radial_limit(c.source, Angle::from_turns(t));
        return std::abs(rl.value - p);
    };

    std::vector<AngleHit> hits;
    for (std::size_t k = 0; k < 4; ++k) {
        if (best[k].dist > 0.5 * disk.boundary.diameter()) continue;
        std::size_t i = best[k].idx;
        double lo = S[(i + n - 1) % n].angle.turns();
        double hi = S[(i + 1) % n].angle.turns();
        if (hi <= lo) hi += 1.0;
        // coarse scan first: near under-resolved boundary features the
        // distance is not unimodal over the whole window
        {
            const int m = 48;
            int bj = 0;
            double bd = 1e300;
            for (int j = 0; j <= m; ++j) {
                double a = lo + (hi - lo) * j / m;
                double dd = dist(a);
                if (dd < bd) {
                    bd = dd;
                    bj = j;
                }
            }
            double w = (hi - lo) / m;
            double nlo = lo + w * std::max(0, bj - 1);
            double nhi = lo + w * std::min(m, bj + 1);
            lo = nlo;
            hi = nhi;
        }
        for (int it = 0; it < 80; ++it) {
            double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (dist(m1) <= dist(m2))
                hi = m2;
            else
                lo = m1;
        }
        double a_star = (lo + hi) / 2;
        if (dist(a_star) >= accept) continue;
        Angle cand = Angle::from_turns(a_star);
        bool dup = false;
        for (const auto& h : hits)
            if (angle_distance(h.angle, cand) < 2.0 / double(n)) dup = true;
        if (!dup) hits.push_back({cand, AccessTag(k)});
    }
    if (hits.empty())
        throw NumericError("invert_boundary: boundary point not matched by any sample");
    std::sort(hits.begin(), hits.end(),
              [](const AngleHit& x, const AngleHit& y) { return x.angle.turns() < y.angle.turns(); });
    return hits;
}

RiemannMap normalize(RiemannMap g, Normalization how, std::optional<cplx> marked) {
    if (how == Normalization::DerivativePositive) {
        double phase;
        if (g.model == Model::Disk) {
            DualPoint p = g.map.eval_dual({cplx(0, 0), false, cplx(1, 0)});
            phase = -std::arg(p.deriv);
        } else if (g.conjugated) {
            ConformalMap inner;
            inner.chain.assign(g.map.chain.begin() + g.inner_begin,
                               g.map.chain.begin() + g.inner_end);
            DualPoint p = inner.eval_dual({cplx(0, 0), false, cplx(1, 0)});
            phase = std::arg(p.deriv);  // A = 1/c1
        } else {
            DualPoint p = g.map.eval_dual({kInf, true, cplx(1, 0)});
            phase = -std::arg(p.deriv);  // arg(1/A) = -arg(A)
        }
        g.map.prepend(Primitive::rotation(phase / kTwoPi));
    } else {
        if (!marked) throw PreconditionError("normalize: marked point required");
        BoundaryCorrespondence corr = boundary_correspondence(g, 512);
        auto hits = invert_boundary(corr, *marked);
        // for a uniaccessible marked point there is exactly one hit
        g.map.prepend(Primitive::rotation(hits.front().angle.turns()));
        g.target.marked_point = *marked;
    }
    if (g.conjugated) {
        ++g.inner_begin;
        ++g.inner_end;
    }
    g.conformal_radius = compute_radius(g);
    return g;
}

// Closed-form chains ------------------------------------------------------

namespace {

// Delta -> Delta minus [1, p] for real p > 1: J^-1 ( A ( J(zeta) ) ) with
// J = Z/2 and A(w) = (b-1)/2 + (b+1)/2 w, b = (p + 1/p)/2.
ConformalMap radial_slit_chain(double p) {
    double b = (p + 1.0 / p) / 2.0;
    double m = (b - 1.0) / 2.0, l = (b + 1.0) / 2.0;
    ConformalMap c;
    c.append(Primitive::zhuk());
    c.append(Primitive::affine(0.5, 0.0));
    c.append(Primitive::affine(l, m));
    c.append(Primitive::affine(2.0, 0.0));
    c.append(Primitive::zhuk_inv_ext());
    return c;
}

RiemannMap finish(RiemannMap g) {
    g.conformal_radius = compute_radius(g);
    return g;
}

}  // namespace

RiemannMap riemann_map_for(const PointedDisk& d, int n) {
    RiemannMap g;
    g.target = d;
    switch (d.kind) {
        case DiskKind::UnitDisk: {
            cplx c0 = d.center;
            g.model = Model::Disk;
            g.map.append(Primitive::mobius(1.0, c0, std::conj(c0), 1.0));
            return finish(g);
        }
        case DiskKind::DiskExterior: {
            g.model = Model::Exterior;
            g.map = ConformalMap::identity();
            return finish(g);
        }
        case DiskKind::SegmentExterior: {
            g.model = Model::Exterior;
            g.map.append(Primitive::zhuk());
            return finish(g);
        }
        case DiskKind::JoukowskiExterior: {
            g.model = Model::Exterior;
            g.map.append(Primitive::family_zhuk_c(d.params.at(0)));
            return finish(g);
        }
        case DiskKind::RadialSlitExterior: {
            g.model = Model::Exterior;
            g.map = radial_slit_chain(d.params.at(0).real());
            return finish(g);
        }
        case DiskKind::EllipseExterior: {
            double a = d.params.at(0).real(), b = d.params.at(1).real();
            g.model = Model::Exterior;
            g.map.append(Primitive::family_zhuk_c((a - b) / (a + b)));
            g.map.append(Primitive::affine((a + b) / 2.0, 0.0));
            return finish(g);
        }
        case DiskKind::RotatedSlitExterior: {
            double q = d.params.at(0).real(), at = d.params.at(1).real();
            g.model = Model::Exterior;
            g.map = radial_slit_chain(q);
            g.map.append(Primitive::rotation(at));
            return finish(g);
        }
        case DiskKind::SpikedSegmentExterior: {
            double s = d.params.at(0).real();
            double q = (s + std::sqrt(s * s + 4.0)) / 2.0;
            g.model = Model::Exterior;
            g.map = radial_slit_chain(q);
            g.map.append(Primitive::rotation(0.25));
            g.map.append(Primitive::zhuk());
            g = finish(g);
            return normalize(std::move(g), Normalization::MarkedPoint, cplx(2.0, 0.0));
        }
        case DiskKind::EllipseInterior:
        case DiskKind::ArcSlitExterior:
        case DiskKind::TiltedSlitExterior:
        case DiskKind::Polygon:
        case DiskKind::Sampled:
            return build_zipper_map(d, n);
    }
    throw ConstructionError("riemann_map_for: unsupported kind");
}

}  // namespace confdisk
