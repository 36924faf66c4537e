#include "confdisk/motion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "confdisk/zipper.hpp"

namespace confdisk {

namespace {
void require_param(cplx t) {
    if (std::abs(t) >= 1.0) throw PreconditionError("motion: |t| >= 1");
}
}  // namespace

MotionFamily MotionFamily::affine_stretch() {
    MotionFamily m;
    m.kind_ = MotionKind::AffineStretch;
    m.interior_ = true;
    return m;
}

MotionFamily MotionFamily::joukowski() {
    MotionFamily m;
    m.kind_ = MotionKind::Joukowski;
    m.interior_ = false;
    return m;
}

MotionFamily MotionFamily::trivial_chain(std::vector<TrivialPrim> prims, bool interior) {
    MotionFamily m;
    m.kind_ = MotionKind::TrivialChain;
    m.interior_ = interior;
    m.prims_ = std::move(prims);
    return m;
}

MotionFamily MotionFamily::trivial_interior() {
    return trivial_chain({TrivialPrim{TrivialPrim::Type::Quad, PolyCoeffs{{0.0, 0.3}}}}, true);
}

MotionFamily MotionFamily::trivial_exterior() {
    return trivial_chain({TrivialPrim{TrivialPrim::Type::ZhukC, PolyCoeffs{{0.0, 0.0, 0.2}}},
                          TrivialPrim{TrivialPrim::Type::Scale, PolyCoeffs{{1.0, 0.4}}}},
                         false);
}

MotionFamily MotionFamily::slit_grow(PolyCoeffs tip) {
    MotionFamily m;
    m.kind_ = MotionKind::SlitGrow;
    m.interior_ = false;
    m.tip_ = std::move(tip);
    return m;
}

std::string MotionFamily::name() const {
    switch (kind_) {
        case MotionKind::AffineStretch: return "affine_stretch";
        case MotionKind::Joukowski: return "joukowski";
        case MotionKind::TrivialChain: return interior_ ? "trivial_chain" : "trivial_chain_ext";
        case MotionKind::SlitGrow: return "slit_grow";
        case MotionKind::Rescaled: return "rescaled(" + (inner ? inner->name() : "?") + ")";
    }
    return "?";
}

namespace {

ConformalMap chain_at(const std::vector<TrivialPrim>& prims, cplx t) {
    ConformalMap m;
    for (const auto& p : prims) {
        cplx c = p.coeff.eval(t);
        switch (p.type) {
            case TrivialPrim::Type::Scale: m.append(Primitive::affine(c, 0.0)); break;
            case TrivialPrim::Type::Quad: m.append(Primitive::family_quad(c)); break;
            case TrivialPrim::Type::ZhukC: m.append(Primitive::family_zhuk_c(c)); break;
        }
    }
    if (m.chain.empty()) m = ConformalMap::identity();
    return m;
}

// Boundary curve of the trivial-chain image of the model circle, as a
// truncated Laurent parametric piece built by discrete Fourier analysis.
BoundaryPiece trivial_boundary_piece(const ConformalMap& g, bool interior) {
    const int N = 256, kmax = 12;
    std::vector<cplx> vals(N);
    for (int j = 0; j < N; ++j) {
        cplx e = std::polar(1.0, kTwoPi * j / double(N));
        vals[j] = g.eval(e);
    }
    std::vector<cplx> coeffs(2 * kmax + 1);
    for (int k = -kmax; k <= kmax; ++k) {
        cplx acc = 0;
        for (int j = 0; j < N; ++j)
            acc += vals[j] * std::polar(1.0, -kTwoPi * k * j / double(N));
        coeffs[k + kmax] = acc / double(N);
    }
    (void)interior;
    return BoundaryPiece::parametric(std::move(coeffs), -kmax);
}

}  // namespace

PointedDisk MotionFamily::disk_at(cplx t) const {
    require_param(t);
    switch (kind_) {
        case MotionKind::AffineStretch: return make_ellipse_interior(t);
        case MotionKind::Joukowski: return make_joukowski_exterior(t);
        case MotionKind::SlitGrow: {
            cplx p = tip_.eval(t);
            return make_tilted_slit_exterior(p);
        }
        case MotionKind::TrivialChain: {
            ConformalMap g = chain_at(prims_, t);
            PointedDisk d;
            d.boundary.pieces = {trivial_boundary_piece(g, interior_)};
            d.kind = DiskKind::Sampled;
            d.marked_point = g.eval(1.0);
            if (interior_) {
                d.center = g.eval(0.0);
                auto gc = g;
                d.inside_fn = [gc](cplx z) { return std::abs(gc.eval_inverse(z)) < 1.0; };
            } else {
                d.center_at_inf = true;
                auto gc = g;
                d.inside_fn = [gc](cplx z) { return std::abs(gc.eval_inverse(z)) > 1.0; };
            }
            return d;
        }
        case MotionKind::Rescaled: {
            PointedDisk base = inner->disk_at(t);
            return scale_disk(base, rescale_factor(t));
        }
    }
    throw ConstructionError("disk_at: bad kind");
}

cplx MotionFamily::marked0() const {
    PointedDisk d0 = disk_at(0.0);
    if (d0.marked_point) return *d0.marked_point;
    return 1.0;
}

cplx MotionFamily::eval(cplx z, cplx t) const {
    require_param(t);
    switch (kind_) {
        case MotionKind::AffineStretch: return z + t * std::conj(z);
        case MotionKind::Joukowski: return z + t / z;
        case MotionKind::TrivialChain: {
            // base chain is the identity at t = 0, so phi_t = g_t on the base set
            return chain_at(prims_, t).eval(z);
        }
        case MotionKind::SlitGrow: {
            cplx p0 = tip_.eval(0.0), pt = tip_.eval(t);
            if (std::fabs(std::abs(z) - 1.0) < 1e-12) return z;  // circle part fixed
            return 1.0 + (z - 1.0) * (pt - 1.0) / (p0 - 1.0);
        }
        case MotionKind::Rescaled:
            return rescale_factor(t) * inner->eval(z, t);
    }
    throw ConstructionError("eval: bad kind");
}

std::pair<cplx, AccessTag> MotionFamily::eval_tagged(cplx z, AccessTag tag, cplx t) const {
    return {eval(z, t), tag};
}

BoundaryMap MotionFamily::boundary_map_at(cplx t) const {
    BoundaryMap bm;
    bm.target = disk_at(t);
    const MotionFamily* self = this;
    cplx tt = t;
    bm.apply = [self, tt](cplx z, AccessTag tag) { return self->eval_tagged(z, tag, tt); };
    return bm;
}

RiemannMap MotionFamily::map_at(cplx t, int n, bool marked_norm) const {
    require_param(t);
    switch (kind_) {
        case MotionKind::AffineStretch:
        case MotionKind::SlitGrow: {
            PointedDisk d = disk_at(t);
            if (kind_ == MotionKind::SlitGrow && std::fabs(tip_.eval(t).imag()) < 1e-13) {
                PointedDisk rs = make_radial_slit_exterior(tip_.eval(t).real());
                return riemann_map_for(rs, n);
            }
            if (!marked_norm) d.marked_point.reset();
            return build_zipper_map(d, n);
        }
        case MotionKind::Joukowski: {
            return riemann_map_for(disk_at(t), n);
        }
        case MotionKind::TrivialChain: {
            RiemannMap g;
            g.model = interior_ ? Model::Disk : Model::Exterior;
            g.map = chain_at(prims_, t);
            g.target = disk_at(t);
            DualPoint base = interior_
                                 ? g.map.eval_dual({cplx(0, 0), false, cplx(1, 0)})
                                 : g.map.eval_dual({cplx(std::numeric_limits<double>::infinity(), 0),
                                                    true, cplx(1, 0)});
            g.conformal_radius = interior_ ? std::abs(base.deriv) : 1.0 / std::abs(base.deriv);
            return g;
        }
        case MotionKind::Rescaled: {
            RiemannMap g = inner->map_at(t, n, marked_norm);
            cplx f = rescale_factor(t);
            g.map.append(Primitive::affine(f, 0.0));
            g.target = scale_disk(g.target, f);
            g.conformal_radius *= std::abs(f);
            return g;
        }
    }
    throw ConstructionError("map_at: bad kind");
}

cplx MotionFamily::rescale_factor(cplx t) const {
    if (kind_ != MotionKind::Rescaled) return 1.0;
    // f(t) by the Schwarz integral over the sampled ring; Re f = log rad there
    const std::size_t N = ring_u.size();
    auto f_at = [&](cplx tau) {
        cplx acc = 0;
        for (std::size_t j = 0; j < N; ++j) {
            cplx e = std::polar(ring_R, kTwoPi * double(j) / N);
            acc += (e + tau) / (e - tau) * ring_u[j];
        }
        return acc / double(N);
    };
    cplx f0 = f_at(0.0), ft = f_at(t);
    return std::exp(f0 - ft);
}

cplx eval_motion(const MotionFamily& M, cplx z, cplx t) { return M.eval(z, t); }

double holomorphy_residual(const std::function<cplx(cplx)>& f, cplx t0, double step) {
    cplx fx1 = f(t0 + step), fx0 = f(t0 - step);
    cplx fy1 = f(t0 + cplx(0, step)), fy0 = f(t0 - cplx(0, step));
    cplx dbar = (fx1 - fx0) + cplx(0, 1) * (fy1 - fy0);
    return std::abs(dbar) / (4.0 * step);
}

CircleMapSample induced_circle_map(const MotionFamily& M, cplx t, const RiemannMap& g0,
                                   const RiemannMap& gt, int n) {
    BoundaryCorrespondence corr0 = boundary_correspondence(g0, n);
    BoundaryCorrespondence corr_t = boundary_correspondence(gt, n);
    CircleMapSample out;
    int failures = 0, attempted = 0;
    for (const auto& s : corr0.samples) {
        CircleMapSample::Pair pr;
        pr.a = s.angle;
        if (!s.converged) {
            out.pairs.push_back(pr);
            continue;
        }
        auto [q, tag] = M.eval_tagged(s.point, s.tag, t);
        ++attempted;
        try {
            auto hits = invert_boundary(corr_t, q);
            const AngleHit* pick = nullptr;
            for (const auto& h : hits)
                if (h.tag == tag) pick = &h;
            if (!pick) pick = &hits.front();
            pr.sigma = pick->angle;
            pr.converged = true;
        } catch (const NumericError&) {
            ++failures;
        }
        out.pairs.push_back(pr);
    }
    if (attempted == 0 || failures * 100 > attempted)
        throw NumericError("induced_circle_map: too many inversion failures");

    out.monotone = true;
    double dev = 0;
    bool have_prev = false;
    double last_sigma = 0;
    for (const auto& pr : out.pairs) {
        if (!pr.converged) continue;
        dev = std::max(dev, angle_distance(pr.a, pr.sigma));
        if (have_prev) {
            double step = pr.sigma.turns() - last_sigma;
            if (step < -0.5) step += 1.0;  // one wrap through angle zero is fine
            if (step < -1e-6) out.monotone = false;
        }
        last_sigma = pr.sigma.turns();
        have_prev = true;
    }
    out.sup_dev = dev;
    return out;
}

cplx intrinsic_rotation(const RiemannMap& g, double theta_turns, cplx z) {
    cplx w = g.eval_inverse(z);
    cplx rw = std::polar(1.0, kTwoPi * theta_turns) * w;
    return g.eval(rw);
}

HarmonicityReport harmonicity_scan(const std::function<double(cplx)>& u,
                                   const std::vector<cplx>& centers,
                                   const std::vector<double>& radii, int n_circle, double tol) {
    HarmonicityReport rep;
    rep.tol = tol;
    for (cplx c : centers) {
        double uc = u(c);
        for (double r : radii) {
            double acc = 0;
            for (int k = 0; k < n_circle; ++k)
                acc += u(c + std::polar(r, kTwoPi * k / double(n_circle)));
            double res = std::fabs(acc / n_circle - uc);
            rep.entries.push_back({c, r, res});
            rep.max_residual = std::max(rep.max_residual, res);
        }
    }
    rep.harmonic = rep.max_residual < tol;
    return rep;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "indeterminate";
    }
}

std::vector<cplx> default_t_grid() {
    std::vector<cplx> g;
    g.push_back(0.0);
    for (double r : {0.25, 0.5, 0.75})
        for (int k = 0; k < 16; ++k) g.push_back(std::polar(r, kTwoPi * k / 16.0));
    return g;
}

namespace {

Verdict verdict_of(double dev, double tau) {
    if (dev < tau) return Verdict::Pass;
    if (dev > 10.0 * tau) return Verdict::Fail;
    return Verdict::Indeterminate;
}

}  // namespace

FitnessReport fitness_report(const MotionFamily& M, const std::vector<cplx>& t_samples, int n,
                             const FitnessTolerances& tols, int threads) {
    FitnessReport rep;
    rep.tols = tols;

    RiemannMap g0 = M.map_at(0.0, n);
    DiscreteMeasure omega0 = harmonic_measure(g0, n);
    rep.log_rad0 = std::log(g0.conformal_radius);

    struct Slot {
        cplx t;
        double rad = 0;
        double dev_iii = 0, dev_iv = 0, dev_v = 0;
        std::string note;
        bool used = false;
    };
    std::vector<Slot> slots(t_samples.size());

    const double theta = kGoldenTurns;
    std::vector<cplx> probes = {cplx(0.35, 0.1), cplx(-0.2, 0.4), cplx(0.1, -0.45)};

    auto work = [&](std::size_t i) {
        cplx t = t_samples[i];
        Slot s;
        s.t = t;
        try {
            RiemannMap gt = M.map_at(t, n);
            s.rad = gt.conformal_radius;
            if (std::abs(t) > 1e-12) {
                CircleMapSample cm = induced_circle_map(M, t, g0, gt, std::min(n, 64));
                s.dev_iii = cm.sup_dev;
                // condition (iv): intrinsic rotation holomorphy at probe points
                double dev4 = 0;
                for (cplx zp : probes) {
                    cplx z_at_t = M.interior() ? gt.eval(zp) : gt.eval(1.0 / zp);
                    auto f = [&](cplx tau) {
                        RiemannMap gq = M.map_at(tau, n, /*marked_norm=*/false);
                        return intrinsic_rotation(gq, theta, z_at_t);
                    };
                    dev4 = std::max(dev4, holomorphy_residual(f, t, 1e-4));
                }
                s.dev_iv = dev4;
                DiscreteMeasure pushed = pushforward(omega0, M.boundary_map_at(t));
                DiscreteMeasure omega_t = harmonic_measure(gt, n);
                s.dev_v = measure_distance(pushed, omega_t);
            }
            s.used = true;
        } catch (const std::exception& e) {
            s.note = e.what();
        }
        slots[i] = s;
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < t_samples.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t per = (t_samples.size() + threads - 1) / threads;
        for (int k = 0; k < threads; ++k) {
            std::size_t lo = k * per, hi = std::min(t_samples.size(), (k + 1) * per);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) work(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    // ring mean-value residuals of log rad about the origin; a ring counts
    // only when every one of its grid points evaluated
    std::vector<double> ring_radii;
    for (cplx t : t_samples) {
        double m = std::abs(t);
        if (m < 1e-12) continue;
        bool seen = false;
        for (double r : ring_radii)
            if (std::fabs(r - m) < 1e-9) seen = true;
        if (!seen) ring_radii.push_back(m);
    }
    auto ring_residual = [&](double r) {
        double acc = 0;
        int cnt = 0, members = 0;
        for (const auto& s : slots) {
            if (std::fabs(std::abs(s.t) - r) >= 1e-9) continue;
            ++members;
            if (s.used && s.rad > 0) {
                acc += std::log(s.rad);
                ++cnt;
            }
        }
        if (cnt < members || cnt < 8) return -1.0;
        return std::fabs(acc / cnt - rep.log_rad0);
    };
    std::vector<std::pair<double, double>> ring_res;
    for (double r : ring_radii) {
        double res = ring_residual(r);
        if (res >= 0) ring_res.push_back({r, res});
    }

    rep.all_consistent = true;
    for (const auto& s : slots) {
        if (std::abs(s.t) < 1e-12) continue;
        FitnessRow row;
        row.t = s.t;
        row.note = s.note;
        if (!s.used) {
            row.v_iii = row.v_iv = row.v_v = row.v_vi = Verdict::Indeterminate;
            rep.rows.push_back(row);
            continue;
        }
        row.dev_iii = s.dev_iii;
        row.dev_iv = s.dev_iv;
        row.dev_v = s.dev_v;
        row.dev_vi = 0;
        bool have_ring = false;
        for (const auto& [r, res] : ring_res)
            if (std::fabs(std::abs(s.t) - r) < 1e-9) {
                row.dev_vi = res;
                have_ring = true;
            }
        row.v_iii = verdict_of(row.dev_iii, tols.iii);
        row.v_iv = verdict_of(row.dev_iv, tols.iv);
        row.v_v = verdict_of(row.dev_v, tols.v);
        row.v_vi = have_ring ? verdict_of(row.dev_vi, tols.vi) : Verdict::Indeterminate;

        int passes = 0, fails = 0, indet = 0;
        for (Verdict v : {row.v_iii, row.v_iv, row.v_v, row.v_vi}) {
            if (v == Verdict::Pass) ++passes;
            if (v == Verdict::Fail) ++fails;
            if (v == Verdict::Indeterminate) ++indet;
        }
        row.consistent = (passes == 0 || fails == 0);
        row.complete = (indet == 0);
        if (row.complete && !row.consistent) rep.all_consistent = false;
        rep.rows.push_back(row);
    }
    return rep;
}

MotionFamily rescale_to_constant_radius(const MotionFamily& M, const std::vector<cplx>& grid,
                                        int n, double tol) {
    // the scan of log rad over the grid must pass at the stated tolerance
    std::vector<double> radii;
    for (cplx t : grid) {
        double m = std::abs(t);
        if (m < 1e-12) continue;
        bool seen = false;
        for (double r : radii)
            if (std::fabs(r - m) < 1e-9) seen = true;
        if (!seen) radii.push_back(m);
    }
    auto u = [&](cplx t) { return std::log(M.map_at(t, n, false).conformal_radius); };
    HarmonicityReport h = harmonicity_scan(u, {cplx(0, 0)}, radii, 16, tol);
    if (!h.harmonic)
        throw PreconditionError("rescale_to_constant_radius: log rad is not harmonic on the grid");

    double R = 0;
    for (double r : radii) R = std::max(R, r);
    if (R == 0) throw PreconditionError("rescale_to_constant_radius: empty grid");

    MotionFamily out;
    out.inner = std::make_shared<MotionFamily>(M);
    out.ring_R = R;
    out.ring_u.resize(32);
    for (int j = 0; j < 32; ++j)
        out.ring_u[j] = u(std::polar(R, kTwoPi * j / 32.0));
    out.kind_ = MotionKind::Rescaled;
    out.interior_ = M.interior();
    return out;
}

}  // namespace confdisk
