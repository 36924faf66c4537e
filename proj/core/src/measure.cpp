#include "confdisk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace confdisk {

double DiscreteMeasure::total_weight() const {
    double s = 0;
    for (const auto& a : atoms) s += a.weight;
    return s;
}

std::vector<double> DiscreteMeasure::cumulative() const {
    std::vector<double> c(atoms.size());
    double s = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        s += atoms[i].weight;
        c[i] = s;
    }
    return c;
}

double DiscreteMeasure::mass_where(const std::function<bool(const MeasureAtom&)>& pred) const {
    double s = 0;
    for (const auto& a : atoms)
        if (pred(a)) s += a.weight;
    return s;
}

void DiscreteMeasure::sort_by_param() {
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const MeasureAtom& a, const MeasureAtom& b) { return a.param < b.param; });
}

DiscreteMeasure DiscreteMeasure::merged_by_location(double tol) const {
    // cluster by position on a grid of size tol, then greedy merge
    DiscreteMeasure out;
    out.boundary = boundary;
    out.n_nonconvergent = n_nonconvergent;
    out.n_dropped = n_dropped;
    out.warning = warning;
    std::vector<MeasureAtom> pool = atoms;
    std::sort(pool.begin(), pool.end(), [](const MeasureAtom& a, const MeasureAtom& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    std::vector<bool> used(pool.size(), false);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        MeasureAtom m = pool[i];
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            if (used[j]) continue;
            if (pool[j].z.real() - m.z.real() > tol) break;
            if (std::abs(pool[j].z - m.z) <= tol) {
                m.weight += pool[j].weight;
                m.cell_len += pool[j].cell_len;
                used[j] = true;
            }
        }
        m.tag = AccessTag::Unknown;
        out.atoms.push_back(m);
    }
    out.sort_by_param();
    return out;
}

DiscreteMeasure harmonic_measure(const RiemannMap& g, int n) {
    if (n < 8) throw PreconditionError("harmonic_measure: n >= 8 required");
    BoundaryCorrespondence mid = boundary_correspondence(g, n, 0.5);
    BoundaryCorrespondence edge = boundary_correspondence(g, n, 0.0);

    DiscreteMeasure mu;
    mu.boundary = g.target;
    mu.atoms.reserve(n);
    std::vector<int> convergent;
    for (int j = 0; j < n; ++j)
        if (mid.samples[j].converged) convergent.push_back(j);
    if (convergent.empty()) throw NumericError("harmonic_measure: no convergent cells");

    std::vector<double> w(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (mid.samples[j].converged) {
            w[j] += 1.0 / n;
        } else {
            ++mu.n_nonconvergent;
            // nearest convergent cell in angle distance
            int bestj = convergent.front();
            double bestd = 2;
            for (int k : convergent) {
                double d = std::fabs(k - j);
                d = std::min(d, n - d);
                if (d < bestd) {
                    bestd = d;
                    bestj = k;
                }
            }
            w[bestj] += 1.0 / n;
        }
    }
    mu.warning = (mu.n_nonconvergent > n / 100);

    for (int j = 0; j < n; ++j) {
        if (!mid.samples[j].converged) continue;
        MeasureAtom a;
        a.z = mid.samples[j].point;
        a.weight = w[j];
        a.tag = mid.samples[j].tag;
        a.param = mid.samples[j].param;
        const auto& e0 = edge.samples[j];
        const auto& e1 = edge.samples[(j + 1) % n];
        if (e0.converged && e1.converged) a.cell_len = std::abs(e1.point - e0.point);
        mu.atoms.push_back(a);
    }
    mu.sort_by_param();
    return mu;
}

// walk on spheres ----------------------------------------------------------

namespace {

struct ConjPiece {
    // segment or circular arc in the walking picture
    bool is_arc = false;
    cplx a{}, b{};        // segment endpoints
    cplx c{};             // arc center
    double r = 0;         // arc radius
    double ang0 = 0, ang1 = 0;
    const BoundaryPiece* origin = nullptr;

    double distance(cplx z) const {
        if (!is_arc) {
            cplx d = b - a;
            double t = std::clamp(((z - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
            return std::abs(z - (a + t * d));
        }
        double ang = std::arg(z - c);
        for (int s = -1; s <= 1; ++s) {
            double aa = ang + s * kTwoPi;
            if (aa >= std::min(ang0, ang1) - 1e-14 && aa <= std::max(ang0, ang1) + 1e-14)
                return std::fabs(std::abs(z - c) - r);
        }
        cplx p0 = c + std::polar(r, ang0), p1 = c + std::polar(r, ang1);
        return std::min(std::abs(z - p0), std::abs(z - p1));
    }
};

// Image of a boundary piece under w = 1/(z - z0). Circles and lines map to
// circles and lines.
std::vector<ConjPiece> conjugate_piece(const BoundaryPiece& p, cplx z0) {
    auto M = [&](cplx z) { return 1.0 / (z - z0); };
    std::vector<ConjPiece> out;
    if (p.kind() == BoundaryPiece::Kind::Segment) {
        cplx A = p.point(0.0), B = p.point(1.0);
        // does the supporting line pass through z0?
        cplx d = B - A;
        double cross = ((z0 - A) * std::conj(d)).imag();
        if (std::fabs(cross) < 1e-14 * std::abs(d) * (std::abs(z0 - A) + 1)) {
            // image is a subset of a line: possibly two rays if z0 is inside
            cplx wa = M(A), wb = M(B);
            double t0 = ((z0 - A) * std::conj(d)).real() / std::norm(d);
            if (t0 > 0 && t0 < 1) {
                // two rays from wa and wb pointing away; approximate by long segments
                cplx dir_a = wa / std::abs(wa), dir_b = wb / std::abs(wb);
                double far = 1e8;
                ConjPiece r1, r2;
                r1.a = wa;
                r1.b = wa + far * dir_a;
                r2.a = wb;
                r2.b = wb + far * dir_b;
                r1.origin = r2.origin = &p;
                out.push_back(r1);
                out.push_back(r2);
            } else {
                ConjPiece s;
                s.a = wa;
                s.b = wb;
                s.origin = &p;
                out.push_back(s);
            }
            return out;
        }
        // generic segment -> arc of the circle through M(A), M(B), M(midpoint)
        cplx wa = M(A), wb = M(B), wm = M((A + B) / 2.0);
        // circumcenter of three points
        cplx u = wb - wa, v = wm - wa;
        double u2 = std::norm(u), v2 = std::norm(v);
        double det = (u * std::conj(v)).imag();
        if (std::fabs(det) < 1e-30) {  // nearly straight
            ConjPiece s;
            s.a = wa;
            s.b = wb;
            s.origin = &p;
            out.push_back(s);
            return out;
        }
        cplx center = wa + cplx(0, 1) * (v * u2 - u * v2) / (2.0 * det) * cplx(0, -1);
        // standard formula: center = wa + (u2*v - v2*u) rotated; recompute robustly:
        {
            double ax = 0, ay = 0;  // coordinates relative to wa
            double bx = u.real(), by = u.imag();
            double cx = v.real(), cy = v.imag();
            double dd = 2.0 * (bx * cy - by * cx);
            double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / dd;
            double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / dd;
            (void)ax;
            (void)ay;
            center = wa + cplx(ux, uy);
        }
        ConjPiece arc;
        arc.is_arc = true;
        arc.c = center;
        arc.r = std::abs(wa - center);
        double a0 = std::arg(wa - center), a1 = std::arg(wb - center), am = std::arg(wm - center);
        // choose the arc from a0 to a1 passing through am
        auto norm01 = [&](double x) {
            while (x < a0) x += kTwoPi;
            while (x >= a0 + kTwoPi) x -= kTwoPi;
            return x;
        };
        double b1 = norm01(a1), bm = norm01(am);
        if (bm <= b1) {
            arc.ang0 = a0;
            arc.ang1 = b1;
        } else {
            arc.ang0 = b1 - kTwoPi;
            arc.ang1 = a0;
        }
        arc.origin = &p;
        out.push_back(arc);
        return out;
    }
    if (p.kind() == BoundaryPiece::Kind::CircularArc) {
        // sample three points and build the image arc (Mobius maps circles to
        // circles or lines; our anchors never lie on the circle)
        cplx A = p.point(0.0), B = p.point(1.0), Mid = p.point(0.5);
        cplx wa = M(A), wb = M(B), wm = M(Mid);
        cplx u = wb - wa, v = wm - wa;
        double det = (u * std::conj(v)).imag();
        if (std::fabs(det) < 1e-18 * std::abs(u) * std::abs(v)) {
            ConjPiece s;
            s.a = wa;
            s.b = wb;
            s.origin = &p;
            out.push_back(s);
            return out;
        }
        double bx = u.real(), by = u.imag(), cx = v.real(), cy = v.imag();
        double dd = 2.0 * (bx * cy - by * cx);
        double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / dd;
        double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / dd;
        cplx center = wa + cplx(ux, uy);
        ConjPiece arc;
        arc.is_arc = true;
        arc.c = center;
        arc.r = std::abs(wa - center);
        double a0 = std::arg(wa - center), a1 = std::arg(wb - center), am = std::arg(wm - center);
        auto norm01 = [&](double x) {
            while (x < a0) x += kTwoPi;
            while (x >= a0 + kTwoPi) x -= kTwoPi;
            return x;
        };
        double b1 = norm01(a1), bm = norm01(am);
        if (bm <= b1) {
            arc.ang0 = a0;
            arc.ang1 = b1;
        } else {
            arc.ang0 = b1 - kTwoPi;
            arc.ang1 = a0;
        }
        // full circle: the two endpoints coincide
        if (std::abs(A - B) < 1e-14) {
            arc.ang0 = 0;
            arc.ang1 = kTwoPi;
        }
        arc.origin = &p;
        out.push_back(arc);
        return out;
    }
    throw NumericError("walk_on_spheres: parametric boundary in an exterior domain is unsupported");
}

// side assignment for slit hits: Minus iff the approach point lies on the
// side i * tangent(junction -> tip) of the slit. The minus piece is traversed
// tip -> junction, so its tangent is the negative of that direction.
Side slit_side_of(const PointedDisk& d, const BoundaryPiece& minus_piece, cplx z_approach,
                  cplx snapped, double u) {
    double sgn = d.center_at_inf ? -1.0 : 1.0;
    cplx nrm = sgn * cplx(0, 1) * minus_piece.tangent(u);
    double dot = ((z_approach - snapped) * std::conj(nrm)).real();
    return dot > 0 ? Side::Minus : Side::Plus;
}

}  // namespace

DiscreteMeasure walk_on_spheres(const PointedDisk& d, int n_samples, const WosOptions& opt) {
    bool conj = d.center_at_inf;
    cplx anchor = conj ? d.complement_anchor() : cplx(0, 0);
    auto from_walk = [&](cplx w) { return conj ? anchor + 1.0 / w : w; };

    std::vector<ConjPiece> walls;
    if (conj) {
        for (const auto& p : d.boundary.pieces) {
            if (p.side() == Side::Plus) continue;  // slit geometry appears once
            auto imgs = conjugate_piece(p, anchor);
            for (auto& ip : imgs) walls.push_back(ip);
        }
    }
    auto wall_distance = [&](cplx w) {
        double dist = 1e300;
        for (const auto& p : walls) dist = std::min(dist, p.distance(w));
        return dist;
    };

    // walking-picture scale
    double scale;
    cplx start;
    if (conj) {
        start = 0.0;
        double lo = 1e300, hi = 0;
        for (const auto& p : walls) {
            for (double t : {0.0, 0.5, 1.0}) {
                cplx q = p.is_arc ? p.c + std::polar(p.r, p.ang0 + t * (p.ang1 - p.ang0))
                                  : p.a + t * (p.b - p.a);
                double m = std::abs(q);
                if (m < 1e7) {  // ignore ray far-points
                    lo = std::min(lo, m);
                    hi = std::max(hi, m);
                }
            }
        }
        scale = std::max(hi, 2 * lo);
    } else {
        start = d.center;
        scale = d.boundary.diameter();
        if (!d.inside(start)) throw PreconditionError("walk_on_spheres: center not inside");
    }
    const double eps = opt.eps_factor * scale;
    const double r_cap = opt.r_cap_factor * scale;

    int threads = std::max(1, opt.threads);
    std::vector<std::vector<MeasureAtom>> results(threads);
    std::vector<int> dropped(threads, 0);

    auto worker = [&](int tid, int lo_i, int hi_i) {
        Rng rng = Rng::substream(opt.seed, std::uint64_t(tid));
        auto& out = results[tid];
        out.reserve(hi_i - lo_i);
        for (int s = lo_i; s < hi_i; ++s) {
            cplx w = start;
            bool absorbed = false;
            for (int step = 0; step < opt.max_steps; ++step) {
                double dist = conj ? wall_distance(w) : d.boundary.distance(w);
                if (dist < eps) {
                    absorbed = true;
                    break;
                }
                double r = std::min(0.999 * dist, r_cap);
                double th = kTwoPi * rng.next_double();
                w += std::polar(r, th);
            }
            if (!absorbed) {
                ++dropped[tid];
                continue;
            }
            cplx z = from_walk(w);
            Side side = Side::None;
            cplx snapped = d.boundary.nearest_point(z, &side);
            MeasureAtom a;
            a.z = snapped;
            a.weight = 1.0;  // normalized later
            if (side != Side::None) {
                // decide the side from the approach position
                const BoundaryPiece* minus_piece = nullptr;
                double bestd = 1e300;
                for (const auto& p : d.boundary.pieces) {
                    if (p.side() != Side::Minus) continue;
                    double dd = p.distance(z);
                    if (dd < bestd) {
                        bestd = dd;
                        minus_piece = &p;
                    }
                }
                if (minus_piece) {
                    double u = minus_piece->nearest_param(z);
                    Side sd = slit_side_of(d, *minus_piece, z, snapped, u);
                    a.tag = (sd == Side::Minus) ? AccessTag::BiMinus : AccessTag::BiPlus;
                    a.param = d.boundary_param(snapped, sd);
                } else {
                    a.tag = AccessTag::Unknown;
                    a.param = d.boundary_param(snapped);
                }
            } else {
                a.tag = AccessTag::Uni;
                a.param = d.boundary_param(snapped);
            }
            out.push_back(a);
        }
    };

    {
        std::vector<std::thread> pool;
        int chunk = (n_samples + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = t * chunk, hi = std::min(n_samples, (t + 1) * chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, t, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    DiscreteMeasure mu;
    mu.boundary = d;
    for (int t = 0; t < threads; ++t) {
        mu.n_dropped += dropped[t];
        for (auto& a : results[t]) mu.atoms.push_back(a);
    }
    if (mu.atoms.empty()) throw NumericError("walk_on_spheres: all walkers exceeded the budget");
    double wgt = 1.0 / double(mu.atoms.size());
    for (auto& a : mu.atoms) a.weight = wgt;
    mu.warning = (mu.n_dropped * 1000 > n_samples);
    mu.sort_by_param();
    return mu;
}

MeasureDecomposition decompose(const DiscreteMeasure& mu, const BoundaryCorrespondence& corr,
                               cplx s) {
    bool any_tagged = false;
    for (const auto& smp : corr.samples)
        if (smp.tag != AccessTag::Unknown) any_tagged = true;
    if (!any_tagged) throw PreconditionError("decompose: untagged correspondence");

    RadialLimit origin = radial_limit(corr.source, Angle::from_turns(0.0));
    if (!origin.converged || std::abs(origin.value - s) > 64.0 * corr.match_tol)
        throw PreconditionError("decompose: marked point does not match g(1)");

    MeasureDecomposition dec;
    dec.marked = s;
    dec.alpha.boundary = mu.boundary;
    dec.beta_minus.boundary = mu.boundary;
    dec.beta_plus.boundary = mu.boundary;
    for (const auto& a : mu.atoms) {
        switch (a.tag) {
            case AccessTag::BiMinus: dec.beta_minus.atoms.push_back(a); break;
            case AccessTag::BiPlus: dec.beta_plus.atoms.push_back(a); break;
            default: dec.alpha.atoms.push_back(a); break;
        }
    }
    return dec;
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const BoundaryMap& phi) {
    DiscreteMeasure out;
    out.boundary = phi.target;
    out.n_nonconvergent = mu.n_nonconvergent;
    out.n_dropped = mu.n_dropped;
    out.warning = mu.warning;
    out.atoms.reserve(mu.atoms.size());
    for (const auto& a : mu.atoms) {
        auto [z, tag] = phi.apply(a.z, a.tag);
        MeasureAtom b = a;
        b.z = z;
        b.tag = tag;
        Side side = Side::None;
        if (tag == AccessTag::BiMinus) side = Side::Minus;
        if (tag == AccessTag::BiPlus) side = Side::Plus;
        b.param = phi.target.boundary_param(z, side);
        out.atoms.push_back(b);
    }
    out.sort_by_param();
    return out;
}

double measure_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    double l1 = mu.boundary.boundary.total_length(), l2 = nu.boundary.boundary.total_length();
    if (mu.boundary.kind != nu.boundary.kind &&
        !(l1 > 0 && std::fabs(l1 - l2) < 1e-6 * l1))
        throw PreconditionError("measure_distance: measures live on different boundaries");

    struct Ev {
        double param;
        double w1, w2;
    };
    std::vector<Ev> ev;
    ev.reserve(mu.atoms.size() + nu.atoms.size());
    for (const auto& a : mu.atoms) ev.push_back({a.param, a.weight, 0.0});
    for (const auto& a : nu.atoms) ev.push_back({a.param, 0.0, a.weight});
    std::sort(ev.begin(), ev.end(), [](const Ev& a, const Ev& b) { return a.param < b.param; });
    double f1 = 0, f2 = 0, best = 0;
    std::size_t i = 0;
    while (i < ev.size()) {
        double p = ev[i].param;
        while (i < ev.size() && ev[i].param <= p + 1e-15) {
            f1 += ev[i].w1;
            f2 += ev[i].w2;
            ++i;
        }
        best = std::max(best, std::fabs(f1 - f2));
    }
    return best;
}

double poisson_extend(const std::vector<double>& f, cplx z) {
    if (std::abs(z) >= 1.0) throw PreconditionError("poisson_extend: |z| >= 1");
    const std::size_t N = f.size();
    double acc = 0;
    double w = 1.0 - std::norm(z);
    for (std::size_t j = 0; j < N; ++j) {
        cplx e = std::polar(1.0, kTwoPi * double(j) / N);
        acc += w / std::norm(e - z) * f[j];
    }
    return acc / double(N);
}

cplx poisson_extend(const std::vector<cplx>& f, cplx z) {
    if (std::abs(z) >= 1.0) throw PreconditionError("poisson_extend: |z| >= 1");
    const std::size_t N = f.size();
    cplx acc = 0;
    double w = 1.0 - std::norm(z);
    for (std::size_t j = 0; j < N; ++j) {
        cplx e = std::polar(1.0, kTwoPi * double(j) / N);
        acc += w / std::norm(e - z) * f[j];
    }
    return acc / double(N);
}

StaticFitnessReport static_fitness_check(const RiemannMap& g, const RiemannMap& g_tilde,
                                         const BoundaryMap& phi, int n, double measure_tol,
                                         double dev_tol) {
    if (!g.target.marked_point || !g_tilde.target.marked_point)
        throw PreconditionError("static_fitness_check: marked points required");

    DiscreteMeasure omega = harmonic_measure(g, n);
    DiscreteMeasure omega_t = harmonic_measure(g_tilde, n);
    BoundaryCorrespondence corr = boundary_correspondence(g, n);
    BoundaryCorrespondence corr_t = boundary_correspondence(g_tilde, n);

    MeasureDecomposition dec = decompose(omega, corr, *g.target.marked_point);
    MeasureDecomposition dec_t = decompose(omega_t, corr_t, *g_tilde.target.marked_point);

    StaticFitnessReport rep;
    rep.total_dist = measure_distance(pushforward(omega, phi), omega_t);
    rep.alpha_dist = measure_distance(pushforward(dec.alpha, phi), dec_t.alpha);
    rep.beta_minus_dist = measure_distance(pushforward(dec.beta_minus, phi), dec_t.beta_minus);
    rep.beta_plus_dist = measure_distance(pushforward(dec.beta_plus, phi), dec_t.beta_plus);
    rep.total_ok = rep.total_dist < measure_tol;
    rep.alpha_ok = rep.alpha_dist < measure_tol;
    rep.beta_minus_ok = rep.beta_minus_dist < measure_tol;
    rep.beta_plus_ok = rep.beta_plus_dist < measure_tol;

    // induced circle map deviation, computed independently of the measures
    double dev = 0;
    int checked = 0, failures = 0;
    int m = std::max(16, n / 8);
    for (int j = 0; j < m; ++j) {
        const auto& smp = corr.samples[std::size_t(j) * corr.samples.size() / m];
        if (!smp.converged) continue;
        auto [q, tag] = phi.apply(smp.point, smp.tag);
        try {
            auto hits = invert_boundary(corr_t, q);
            const AngleHit* pick = nullptr;
            for (const auto& h : hits)
                if (h.tag == tag) pick = &h;
            if (!pick) pick = &hits.front();
            dev = std::max(dev, angle_distance(pick->angle, smp.angle));
            ++checked;
        } catch (const NumericError&) {
            ++failures;
        }
    }
    if (checked == 0 || failures * 100 > m)
        throw NumericError("static_fitness_check: induced circle map inversion failed");
    rep.circle_map_dev = dev;

    rep.fit = rep.alpha_ok && rep.beta_minus_ok && rep.beta_plus_ok;
    rep.internally_consistent = (rep.fit == (dev < dev_tol));
    return rep;
}

}  // namespace confdisk
