#ifndef CONFDISK_POTENTIAL_HPP
#define CONFDISK_POTENTIAL_HPP

#include <limits>
#include <vector>

#include "confdisk/measure.hpp"

namespace confdisk {

class MotionFamily;

struct EnergyReport {
    double energy = 0;
    double log_rad = std::numeric_limits<double>::quiet_NaN();
    double discrepancy = std::numeric_limits<double>::quiet_NaN();
    bool minimal = false;
    double gap_to_comparison = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = true;
};

// Discrete logarithmic energy, diagonal excluded:
//   E = -sum_{i != j} w_i w_j log |z_i - z_j|.
// Coincident atoms (within tol.geom * diameter) are an error.
double energy(const DiscreteMeasure& mu, const Tolerances& tol = {});

// Energy of the piecewise-uniform density spreading each atom over its cell:
// the U-statistic plus the within-cell self-energy w_i^2 (3/2 - log L_i).
// Atoms without a recorded cell length use neighbor spacing.
double energy_with_cells(const DiscreteMeasure& mu);

struct EquilibriumOptions {
    int max_iterations = 200000;
    double tolerance = 1e-9;  // projected-gradient norm
};

// Minimize the cell-regularized energy over the probability simplex by
// projected gradient descent. Support points in boundary order; closed_loop
// wraps the neighbor spacing.
std::pair<DiscreteMeasure, EnergyReport> equilibrium_measure(const std::vector<cplx>& support,
                                                             bool closed_loop,
                                                             const EquilibriumOptions& opt = {});

// E(omega) vs log rad(U, infinity) for an exterior pointed disk.
EnergyReport check_energy_radius(const PointedDisk& d, int n);

struct ScanRow {
    cplx t;
    double h = 0;        // E((phi_t)_* omega_0)
    double e_omega = 0;  // E(omega_t)
    bool ineq_ok = false;
};

struct ScanTable {
    std::vector<ScanRow> rows;
    double max_mean_value_residual = 0;  // of h over the grid rings
    bool h_harmonic = false;
    double tol = 0;
};

// h(t) = E((phi_t)_* omega_0) against E(omega_t) over a t grid. Interior
// families are conjugated through z -> 1/z so the equilibrium comparison is
// taken from infinity, matching the energy-radius identity.
ScanTable energy_pushforward_scan(const MotionFamily& motion, const DiscreteMeasure& omega0,
                                  const std::vector<cplx>& t_grid, int n, double tol = 1e-2);

}  // namespace confdisk

#endif
