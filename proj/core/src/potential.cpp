#include "confdisk/potential.hpp"

#include <algorithm>
#include <cmath>

#include "confdisk/motion.hpp"

namespace confdisk {

double energy(const DiscreteMeasure& mu, const Tolerances& tol) {
    const auto& A = mu.atoms;
    if (A.size() < 2) throw PreconditionError("energy: need at least 2 atoms");
    double sep = tol.geom * std::max(1.0, mu.boundary.boundary.diameter());
    double acc = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = i + 1; j < A.size(); ++j) {
            double d = std::abs(A[i].z - A[j].z);
            if (d < sep && A[i].weight > 0 && A[j].weight > 0)
                throw PreconditionError("energy: coincident atoms with positive weights");
            acc -= 2.0 * A[i].weight * A[j].weight * std::log(d);
        }
    }
    return acc;
}

namespace {

std::vector<double> effective_cells(const DiscreteMeasure& mu) {
    const auto& A = mu.atoms;
    std::vector<double> L(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) L[i] = A[i].cell_len;
    // fall back to neighbor spacing in param order (atoms are param-sorted)
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (L[i] > 0) continue;
        double l = 0;
        int cnt = 0;
        if (i > 0) {
            l += std::abs(A[i].z - A[i - 1].z);
            ++cnt;
        }
        if (i + 1 < A.size()) {
            l += std::abs(A[i + 1].z - A[i].z);
            ++cnt;
        }
        L[i] = cnt ? l / cnt : 1e-3;
        if (L[i] <= 0) L[i] = 1e-12;
    }
    return L;
}

}  // namespace

double energy_with_cells(const DiscreteMeasure& mu) {
    const auto& A = mu.atoms;
    if (A.size() < 2) throw PreconditionError("energy_with_cells: need at least 2 atoms");
    std::vector<double> L = effective_cells(mu);
    double acc = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = i + 1; j < A.size(); ++j) {
            double d = std::abs(A[i].z - A[j].z);
            if (d <= 0) d = 0.5 * (L[i] + L[j]);  // merged locations guard
            acc -= 2.0 * A[i].weight * A[j].weight * std::log(d);
        }
        acc += A[i].weight * A[i].weight * (1.5 - std::log(L[i]));
    }
    return acc;
}

std::pair<DiscreteMeasure, EnergyReport> equilibrium_measure(const std::vector<cplx>& support,
                                                             bool closed_loop,
                                                             const EquilibriumOptions& opt) {
    const std::size_t n = support.size();
    if (n < 8) throw PreconditionError("equilibrium_measure: need >= 8 support points");

    // cell sizes from neighbor spacing
    std::vector<double> L(n);
    for (std::size_t i = 0; i < n; ++i) {
        double l = 0;
        int cnt = 0;
        if (i > 0 || closed_loop) {
            l += std::abs(support[i] - support[(i + n - 1) % n]);
            ++cnt;
        }
        if (i + 1 < n || closed_loop) {
            l += std::abs(support[(i + 1) % n] - support[i]);
            ++cnt;
        }
        L[i] = l / std::max(1, cnt);
    }

    std::vector<double> K(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        K[i * n + i] = 1.5 - std::log(L[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = -std::log(std::abs(support[i] - support[j]));
            K[i * n + j] = v;
            K[j * n + i] = v;
        }
    }
    double Lip = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0;
        for (std::size_t j = 0; j < n; ++j) row += std::fabs(K[i * n + j]);
        Lip = std::max(Lip, row);
    }
    const double eta = 1.0 / Lip;

    auto project_simplex = [](std::vector<double>& v) {
        std::vector<double> u = v;
        std::sort(u.begin(), u.end(), std::greater<double>());
        double css = 0, theta = 0;
        std::size_t rho = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            css += u[i];
            if (u[i] * double(i + 1) > css - 1.0) {
                rho = i;
                theta = (css - 1.0) / double(i + 1);
            } else {
                css -= u[i];
            }
        }
        (void)rho;
        for (auto& x : v) x = std::max(x - theta, 0.0);
    };

    std::vector<double> w(n, 1.0 / double(n)), g(n), w_new(n);
    auto quad = [&](const std::vector<double>& x) {
        double acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0;
            for (std::size_t j = 0; j < n; ++j) row += K[i * n + j] * x[j];
            acc += x[i] * row;
        }
        return acc;
    };
    double e_start = quad(w);

    int it = 0;
    bool converged = false;
    for (; it < opt.max_iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0;
            for (std::size_t j = 0; j < n; ++j) row += K[i * n + j] * w[j];
            g[i] = 2.0 * row;
        }
        w_new = w;
        for (std::size_t i = 0; i < n; ++i) w_new[i] -= eta * g[i];
        project_simplex(w_new);
        double pg = 0;
        for (std::size_t i = 0; i < n; ++i) pg += (w_new[i] - w[i]) * (w_new[i] - w[i]);
        pg = std::sqrt(pg) / eta;
        w.swap(w_new);
        if (pg < opt.tolerance) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged)
        throw NumericError("equilibrium_measure: projected gradient did not converge in " +
                           std::to_string(opt.max_iterations) + " iterations");

    DiscreteMeasure mu;
    mu.boundary = PointedDisk{};  // bare support measure; carrier geometry unknown here
    mu.atoms.resize(n);
    double par = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mu.atoms[i] = {support[i], w[i], par, AccessTag::Unknown, L[i]};
        par += L[i];
    }

    EnergyReport rep;
    rep.energy = quad(w);
    rep.minimal = true;
    rep.gap_to_comparison = e_start - rep.energy;
    rep.iterations = it;
    rep.converged = converged;
    return {mu, rep};
}

EnergyReport check_energy_radius(const PointedDisk& d, int n) {
    if (!d.center_at_inf) throw PreconditionError("check_energy_radius: exterior disk required");
    RiemannMap g = riemann_map_for(d, std::max(n, 256));
    DiscreteMeasure omega = harmonic_measure(g, n);
    // radial-limit jitter between the two sides of a slit is ~1e-7, well
    // below any genuine atom spacing
    DiscreteMeasure merged =
        omega.merged_by_location(1e-6 * std::max(1.0, d.boundary.diameter()));
    EnergyReport rep;
    rep.energy = energy_with_cells(merged);
    rep.log_rad = std::log(g.conformal_radius);
    rep.discrepancy = std::fabs(rep.energy - rep.log_rad);
    return rep;
}

ScanTable energy_pushforward_scan(const MotionFamily& motion, const DiscreteMeasure& omega0,
                                  const std::vector<cplx>& t_grid, int n, double tol) {
    bool invert = motion.interior();
    auto energy_of = [&](const DiscreteMeasure& mu) {
        double scale = 0;
        for (const auto& a : mu.atoms) scale = std::max(scale, std::abs(a.z));
        DiscreteMeasure m = mu.merged_by_location(1e-6 * std::max(1.0, scale));
        if (invert)
            for (auto& a : m.atoms) a.z = 1.0 / a.z;
        // matched treatment of both scan measures: cell sizes from neighbor
        // spacing of the (possibly inverted) atoms
        m.sort_by_param();
        for (auto& a : m.atoms) a.cell_len = 0;
        return energy_with_cells(m);
    };

    ScanTable table;
    table.tol = tol;
    for (cplx t : t_grid) {
        DiscreteMeasure pushed = pushforward(omega0, motion.boundary_map_at(t));
        double h = energy_of(pushed);
        RiemannMap gt = motion.map_at(t, n, /*marked_norm=*/false);
        DiscreteMeasure omega_t = harmonic_measure(gt, n);
        double e = energy_of(omega_t);
        table.rows.push_back({t, h, e, h >= e - 1e-6});
    }

    // mean-value residual of h over rings about the origin
    double h0 = 0;
    bool have0 = false;
    for (const auto& r : table.rows)
        if (std::abs(r.t) < 1e-12) {
            h0 = r.h;
            have0 = true;
        }
    if (have0) {
        std::vector<double> radii;
        for (const auto& r : table.rows) {
            double m = std::abs(r.t);
            if (m < 1e-12) continue;
            bool seen = false;
            for (double x : radii)
                if (std::fabs(x - m) < 1e-9) seen = true;
            if (!seen) radii.push_back(m);
        }
        for (double rad : radii) {
            double acc = 0;
            int cnt = 0;
            for (const auto& r : table.rows)
                if (std::fabs(std::abs(r.t) - rad) < 1e-9) {
                    acc += r.h;
                    ++cnt;
                }
            if (cnt >= 8)
                table.max_mean_value_residual =
                    std::max(table.max_mean_value_residual, std::fabs(acc / cnt - h0));
        }
    }
    table.h_harmonic = table.max_mean_value_residual < tol;
    return table;
}

}  // namespace confdisk
