#ifndef CONFDISK_CONFMAP_HPP
#define CONFDISK_CONFMAP_HPP

#include <optional>
#include <vector>

#include "confdisk/geom.hpp"
#include "confdisk/types.hpp"

namespace confdisk {

// Primitive conformal building block. Each knows its forward map, inverse,
// and derivative; branch data is stored explicitly so evaluation is
// deterministic.
struct Primitive {
    enum class Kind {
        Mobius,      // (a z + b) / (c z + d)
        Power,       // z^alpha, principal branch
        Zhuk,        // z + 1/z
        ZhukInvExt,  // inverse branch of Zhuk with |result| >= 1
        FamilyQuad,  // z + a z^2
        FamilyZhukC, // z + a / z  (inverse: root of larger modulus)
        ZipInit,     // i sqrt((z - b)/(z - a)); a, b are the first two samples
        ZipStage,    // sqrt((m/d)^2 + 1), m = z/(1 - z/b); params b (via binv), d
        ZipClose,    // +-(z/(1 - z/p))^2; params p (via pinv), flag
    };
    Kind kind{};
    cplx a{}, b{};
    double d = 0;      // ZipStage scale
    double pinv = 0;   // ZipClose: 1/p (0 when p = infinity)
    double binv = 0;   // ZipStage: 1/b (0 when b = infinity)
    double alpha = 1;  // Power exponent
    bool flag = false; // ZipClose: second-quadrant variant

    static Primitive mobius(cplx a, cplx b, cplx c, cplx d);
    static Primitive affine(cplx a, cplx b);
    static Primitive rotation(double turns);
    static Primitive reciprocal();
    static Primitive power(double alpha);
    static Primitive zhuk();
    static Primitive zhuk_inv_ext();
    static Primitive family_quad(cplx a);
    static Primitive family_zhuk_c(cplx a);
    static Primitive zip_init(cplx z0, cplx z1);
    static Primitive zip_stage(double b, double d);
    static Primitive zip_close(double p, bool q2);

    cplx c_{}, d_{};  // Mobius denominators

    cplx eval(cplx z, const cplx* hint = nullptr) const;
    cplx eval_inverse(cplx w, const cplx* hint = nullptr) const;
    cplx derivative(cplx z) const;  // at finite z, finite image
};

struct ChainEntry {
    Primitive prim;
    bool inverted = false;
};

// Dual value for chart-aware differentiation through a chain. `inf` marks the
// point at infinity; `deriv` is taken in the local chart (w = 1/z near inf).
struct DualPoint {
    cplx value{};
    bool inf = false;
    cplx deriv{1.0, 0.0};
};

// Branch hints keyed by chain position, used for continuous evaluation along
// radial paths through two-valued inverses.
using EvalHints = std::vector<std::optional<cplx>>;

class ConformalMap {
  public:
    std::vector<ChainEntry> chain;

    cplx eval(cplx z) const;
    cplx eval(cplx z, EvalHints& hints) const;
    cplx eval_inverse(cplx w) const;
    DualPoint eval_dual(DualPoint p) const;
    cplx derivative(cplx z) const;  // finite-to-finite chain rule

    EvalHints make_hints() const { return EvalHints(chain.size()); }
    static ConformalMap identity();
    static ConformalMap compose(const ConformalMap& first, const ConformalMap& then);
    void prepend(const Primitive& p, bool inverted = false);
    void append(const Primitive& p, bool inverted = false);
};

enum class Model { Disk, Exterior };

enum class AccessTag : std::uint8_t { Unknown = 0, Uni = 1, BiMinus = 2, BiPlus = 3 };

std::string access_tag_name(AccessTag t);

// Normalized conformal isomorphism from the model domain onto a pointed disk.
struct RiemannMap {
    Model model = Model::Disk;
    ConformalMap map;  // from the model coordinate (D or Delta)
    PointedDisk target;
    double conformal_radius = 0;
    double boundary_slack = 1e-9;  // matching tolerance scale for landing points

    // Exterior maps built through the bounded conjugation w = 1/(z - anchor)
    // record the chain slice of the bounded map D -> 1/(U - anchor); the
    // conformal radius is read off that slice.
    bool conjugated = false;
    cplx anchor{};
    std::size_t inner_begin = 0, inner_end = 0;

    cplx base_point_image() const;   // should equal target center
    cplx eval(cplx zeta) const { return map.eval(zeta); }
    cplx eval_inverse(cplx z) const { return map.eval_inverse(z); }
};

double conformal_radius(const RiemannMap& g);

// Radial limit of g at a single angle: r_k = 1 - 2^{-k}, k <= 40, convergence
// declared when three successive values agree within 1e-7.
struct RadialLimit {
    cplx value{};
    bool converged = false;
};
RadialLimit radial_limit(const RiemannMap& g, Angle a);

struct CorrSample {
    Angle angle;
    cplx point{};
    bool converged = false;
    AccessTag tag = AccessTag::Unknown;
    double param = 0;  // boundary_param of the landing point
};

struct BoundaryCorrespondence {
    std::vector<CorrSample> samples;  // strictly increasing in turns
    RiemannMap source;                // value copy; maps are immutable
    double match_tol = 0;             // landing-point matching tolerance
};

BoundaryCorrespondence boundary_correspondence(const RiemannMap& g, int n, double offset = 0.0);

struct AngleHit {
    Angle angle;
    AccessTag tag = AccessTag::Unknown;
};

std::vector<AngleHit> invert_boundary(const BoundaryCorrespondence& c, cplx p);

enum class Normalization { DerivativePositive, MarkedPoint };

RiemannMap normalize(RiemannMap g, Normalization how, std::optional<cplx> marked = {});

// Riemann map for a builtin-family pointed disk: closed-form chain when the
// family has one, geodesic zipper otherwise. n is the zipper sample budget.
RiemannMap riemann_map_for(const PointedDisk& d, int n = 512);

}  // namespace confdisk

#endif
