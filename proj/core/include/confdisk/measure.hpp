#ifndef CONFDISK_MEASURE_HPP
#define CONFDISK_MEASURE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "confdisk/confmap.hpp"
#include "confdisk/geom.hpp"

namespace confdisk {

struct MeasureAtom {
    cplx z{};
    double weight = 0;
    double param = 0;             // along the canonical boundary traversal
    AccessTag tag = AccessTag::Unknown;
    double cell_len = 0;          // boundary arclength the atom represents (0 if unknown)
};

// Weighted boundary point masses with a cumulative table along the canonical
// parameterization (marked point origin, slits minus-side first).
struct DiscreteMeasure {
    std::vector<MeasureAtom> atoms;  // sorted by param
    PointedDisk boundary;
    int n_nonconvergent = 0;
    int n_dropped = 0;
    bool warning = false;

    double total_weight() const;
    std::vector<double> cumulative() const;
    // Mass of atoms whose landing point lies within tol of the given set test.
    double mass_where(const std::function<bool(const MeasureAtom&)>& pred) const;
    // Location-merged copy (tags discarded); used by energy evaluation.
    DiscreteMeasure merged_by_location(double tol) const;
    void sort_by_param();
};

// Pushforward of normalized Lebesgue measure through the boundary
// correspondence of g: n equal angle cells, atom at each cell midpoint's
// landing point. Non-convergent cells donate their mass to the nearest
// convergent atom.
DiscreteMeasure harmonic_measure(const RiemannMap& g, int n);

struct WosOptions {
    std::uint64_t seed = 0xC0FFEE;
    double r_cap_factor = 10.0;   // times the walking-picture diameter
    double eps_factor = 1e-6;     // absorption distance, times diameter
    int max_steps = 1000000;
    int threads = 1;
};

// Monte-Carlo boundary hitting measure. Center-at-infinity domains walk in
// the bounded picture w = 1/(z - anchor); hits are mapped back and snapped to
// the true boundary.
DiscreteMeasure walk_on_spheres(const PointedDisk& d, int n_samples, const WosOptions& opt = {});

struct MeasureDecomposition {
    DiscreteMeasure alpha;       // uniaccessible part
    DiscreteMeasure beta_minus;  // biaccessible, minus side
    DiscreteMeasure beta_plus;   // biaccessible, plus side
    cplx marked{};
};

// Split by access tag; the marked point s must agree with the
// correspondence's angle-zero landing point.
MeasureDecomposition decompose(const DiscreteMeasure& mu, const BoundaryCorrespondence& corr,
                               cplx s);

// Boundary homeomorphism acting on points with side awareness.
struct BoundaryMap {
    std::function<std::pair<cplx, AccessTag>(cplx, AccessTag)> apply;
    PointedDisk target;
};

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const BoundaryMap& phi);

// Kolmogorov-Smirnov style sup distance between cumulative tables along the
// shared boundary parameterization.
double measure_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Trapezoidal Poisson integral; samples at angles j/N.
double poisson_extend(const std::vector<double>& boundary_samples, cplx z);
cplx poisson_extend(const std::vector<cplx>& boundary_samples, cplx z);

struct StaticFitnessReport {
    bool fit = false;
    bool total_ok = false;
    bool alpha_ok = false;
    bool beta_minus_ok = false;
    bool beta_plus_ok = false;
    double total_dist = 0, alpha_dist = 0, beta_minus_dist = 0, beta_plus_dist = 0;
    double circle_map_dev = 0;     // sup |sigma(a) - a| in turns
    bool internally_consistent = false;
};

// Thm-style static check: the three pushforward identities of the
// decomposition plus the independent induced-circle-map deviation.
StaticFitnessReport static_fitness_check(const RiemannMap& g, const RiemannMap& g_tilde,
                                         const BoundaryMap& phi, int n,
                                         double measure_tol = 0.02, double dev_tol = 5e-3);

}  // namespace confdisk

#endif
