#ifndef CONFDISK_MOTION_HPP
#define CONFDISK_MOTION_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "confdisk/confmap.hpp"
#include "confdisk/measure.hpp"

namespace confdisk {

enum class MotionKind { AffineStretch, Joukowski, TrivialChain, SlitGrow, Rescaled };

// Polynomial in the disk parameter t.
struct PolyCoeffs {
    std::vector<cplx> c;  // sum c[k] t^k
    cplx eval(cplx t) const {
        cplx acc = 0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
        return acc;
    }
};

// Conformal-chain template whose primitive coefficients are polynomials in t.
struct TrivialPrim {
    enum class Type { Scale, Quad, ZhukC };
    Type type;
    PolyCoeffs coeff;
};

// A holomorphic motion of a disk boundary over the parameter disk, together
// with the per-t pointed disks and Riemann maps the harness needs.
class MotionFamily {
  public:
    static MotionFamily affine_stretch();                  // z + t conj(z) on T
    static MotionFamily joukowski();                       // z + t/z on T
    static MotionFamily trivial_interior();                // z + 0.3 t z^2 on D
    static MotionFamily trivial_exterior();                // (1+0.4t)(z + 0.2 t^2 / z)
    static MotionFamily trivial_chain(std::vector<TrivialPrim> prims, bool interior);
    static MotionFamily slit_grow(PolyCoeffs tip = PolyCoeffs{{2.0, 1.0}});

    MotionKind kind() const { return kind_; }
    std::string name() const;
    bool interior() const { return interior_; }

    PointedDisk base_disk() const { return disk_at(0.0); }
    PointedDisk disk_at(cplx t) const;
    cplx marked0() const;

    // Motion of a base boundary point; |t| < 1 required.
    cplx eval(cplx z, cplx t) const;
    std::pair<cplx, AccessTag> eval_tagged(cplx z, AccessTag tag, cplx t) const;
    BoundaryMap boundary_map_at(cplx t) const;

    // Marked-point-normalized Riemann map of U_t (tracked marked point
    // s_t = phi_t(s_0)). marked_norm=false skips the marked rotation; the
    // intrinsic rotation does not depend on it.
    RiemannMap map_at(cplx t, int n, bool marked_norm = true) const;

    // Rescaling data (kind Rescaled)
    std::shared_ptr<const MotionFamily> inner;
    std::vector<double> ring_u;  // log rad samples on |t| = ring_R
    double ring_R = 0;
    cplx rescale_factor(cplx t) const;  // e^{f(0) - f(t)}

  private:
    MotionKind kind_{};
    bool interior_ = true;
    std::vector<TrivialPrim> prims_;
    PolyCoeffs tip_;
    friend MotionFamily rescale_to_constant_radius(const MotionFamily&, const std::vector<cplx>&,
                                                   int, double);
};

cplx eval_motion(const MotionFamily& M, cplx z, cplx t);

// Finite-difference |d f / d conj(t)| on the 4-point stencil t0 +- s, t0 +- is.
double holomorphy_residual(const std::function<cplx(cplx)>& f, cplx t0, double step);

struct CircleMapSample {
    struct Pair {
        Angle a;
        Angle sigma;
        bool converged = false;
    };
    std::vector<Pair> pairs;
    bool monotone = false;
    double sup_dev = 0;  // sup |sigma(a) - a| over convergent pairs, in turns
};

CircleMapSample induced_circle_map(const MotionFamily& M, cplx t, const RiemannMap& g0,
                                   const RiemannMap& gt, int n);

cplx intrinsic_rotation(const RiemannMap& g, double theta_turns, cplx z);

struct HarmonicityReport {
    struct Entry {
        cplx center;
        double radius;
        double residual;
    };
    std::vector<Entry> entries;
    double max_residual = 0;
    bool harmonic = false;
    double tol = 0;
};

HarmonicityReport harmonicity_scan(const std::function<double(cplx)>& u,
                                   const std::vector<cplx>& centers,
                                   const std::vector<double>& radii, int n_circle,
                                   double tol = 1e-2);

enum class Verdict { Pass, Fail, Indeterminate };
std::string verdict_name(Verdict v);

struct FitnessTolerances {
    double iii = 5e-3;  // turns
    double iv = 1e-5;
    double v = 1e-2;    // KS
    double vi = 1e-2;
};

struct FitnessRow {
    cplx t;
    double dev_iii = 0, dev_iv = 0, dev_v = 0, dev_vi = 0;
    Verdict v_iii{}, v_iv{}, v_v{}, v_vi{};
    bool consistent = false;   // determinate verdicts agree
    bool complete = false;     // all four verdicts determinate
    std::string note;
};

struct FitnessReport {
    std::vector<FitnessRow> rows;  // grid points with t != 0
    FitnessTolerances tols;
    double log_rad0 = 0;
    bool all_consistent = false;   // over complete rows
};

// 3 rings (0.25, 0.5, 0.75) x 16 angles, origin first.
std::vector<cplx> default_t_grid();

FitnessReport fitness_report(const MotionFamily& M, const std::vector<cplx>& t_samples, int n,
                             const FitnessTolerances& tols = {}, int threads = 1);

// Composes the motion with dilations cancelling log rad, valid when log rad
// is harmonic on the grid. Fails with PreconditionError otherwise.
MotionFamily rescale_to_constant_radius(const MotionFamily& M, const std::vector<cplx>& grid,
                                        int n, double tol = 1e-2);

}  // namespace confdisk

#endif
