#ifndef CONFDISK_GEOM_HPP
#define CONFDISK_GEOM_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confdisk/types.hpp"

namespace confdisk {

// Point on the unit circle, measured in turns. exp(2*pi*i*turns).
class Angle {
  public:
    Angle() = default;
    static Angle from_turns(double t);
    static Angle from_point(cplx z);  // z != 0
    double turns() const { return turns_; }
    cplx point() const;
    bool approx_equal(Angle other, const Tolerances& tol = {}) const;

  private:
    double turns_ = 0.0;  // reduced into [0,1)
};

// Distance around the circle in turns, in [0, 0.5].
double angle_distance(Angle a, Angle b);

// Oriented arc from start counterclockwise to end.
struct ArcInterval {
    Angle start;
    Angle end;
    bool closed = true;
    bool full_circle = false;
};

double arc_length(const ArcInterval& I);
bool arc_contains(const ArcInterval& I, Angle a, const Tolerances& tol = {});
// True iff going counterclockwise from a one meets b before c.
bool cyclic_order(Angle a, Angle b, Angle c, const Tolerances& tol = {});

// Side marker for boundary pieces traversed twice (slits).
enum class Side : std::uint8_t { None = 0, Minus = 1, Plus = 2 };

std::string side_name(Side s);

// One primitive boundary piece. A slit contributes two pieces with the same
// geometry and opposite side markers, in traversal order.
class BoundaryPiece {
  public:
    enum class Kind { CircularArc, Segment, Parametric };

    static BoundaryPiece circular_arc(cplx center, double radius, double ang0, double ang1,
                                      Side side = Side::None);
    static BoundaryPiece segment(cplx a, cplx b, Side side = Side::None);
    // z(u) = sum_k coeff[k] * exp(2*pi*i*(k + k_min)*u), u in [0,1)
    static BoundaryPiece parametric(std::vector<cplx> coeffs, int k_min, Side side = Side::None);

    Kind kind() const { return kind_; }
    Side side() const { return side_; }
    double length() const { return length_; }
    cplx point(double u) const;    // u in [0,1], arclength-ish parameter
    cplx tangent(double u) const;  // unnormalized dz/du
    double distance(cplx z) const;
    double nearest_param(cplx z) const;
    BoundaryPiece scaled(cplx factor) const;  // image under z -> factor * z

  private:
    Kind kind_{};
    Side side_{};
    cplx a_{}, b_{};               // segment endpoints / arc center+unused
    double radius_ = 0, ang0_ = 0, ang1_ = 0;
    std::vector<cplx> coeffs_;
    int k_min_ = 0;
    double length_ = 0;
    int n_samples_ = 256;
    void compute_length();
};

// Closed boundary chain in traversal order (domain on the left).
struct BoundaryCurve {
    std::vector<BoundaryPiece> pieces;
    double total_length() const;
    double diameter() const;
    double distance(cplx z) const;
    // Nearest boundary point; side reports the piece's marker.
    cplx nearest_point(cplx z, Side* side = nullptr) const;
    bool has_slit() const;
};

// Ordered boundary sample for map construction (prime-end order).
struct BoundarySample {
    cplx z;
    Side side = Side::None;
    bool on_slit = false;
};

// Domain kinds with builtin closed-form structure.
enum class DiskKind {
    UnitDisk,
    DiskExterior,
    SegmentExterior,
    JoukowskiExterior,
    EllipseInterior,
    RadialSlitExterior,
    ArcSlitExterior,
    TiltedSlitExterior,
    EllipseExterior,
    RotatedSlitExterior,
    SpikedSegmentExterior,
    Polygon,
    Sampled,
};

std::string disk_kind_name(DiskKind k);

// A pointed disk: boundary + center (possibly infinity) + optional marked
// boundary point. Immutable after construction.
struct PointedDisk {
    BoundaryCurve boundary;
    cplx center{};               // ignored when center_at_inf
    bool center_at_inf = false;
    std::optional<cplx> marked_point;
    DiskKind kind = DiskKind::Sampled;
    std::vector<cplx> params;    // kind-specific parameters
    std::function<bool(cplx)> inside_fn;

    bool inside(cplx z) const { return inside_fn ? inside_fn(z) : false; }
    // Anchor in the complement, used to conjugate center-at-infinity domains
    // to a bounded picture via z -> 1/(z - anchor).
    cplx complement_anchor() const;
    // Arclength along the boundary traversal from the parameterization origin
    // (the marked point when present), slits minus-side first.
    double boundary_param(cplx z, Side side = Side::None) const;
    // Ordered samples for the zipper; slit sides offset into the domain by
    // keyhole_delta * diameter.
    std::vector<BoundarySample> sample_boundary(int n, double keyhole_delta = 1e-4) const;
};

double boundary_distance(const PointedDisk& d, cplx z);

// Builtin families ------------------------------------------------------

PointedDisk make_unit_disk(cplx center = 0.0);
PointedDisk make_disk_exterior();
PointedDisk make_segment_exterior();                 // complement of [-2,2]
PointedDisk make_joukowski_exterior(cplx t);         // exterior of z + t/z image
PointedDisk make_ellipse_interior(cplx t);           // image of D under z + t*conj(z)
PointedDisk make_radial_slit_exterior(double p);     // Delta minus [1, p], p > 1
PointedDisk make_arc_slit_exterior(double delta, double eps);
PointedDisk make_tilted_slit_exterior(cplx p);       // Delta minus segment [1, p]
PointedDisk make_ellipse_exterior(double a, double b);  // exterior of x^2/a^2+y^2/b^2=1
PointedDisk make_polygon(const std::vector<cplx>& vertices, cplx center);
// Exterior of the unit disk with a radial slit attached at angle `at` (turns):
// Delta minus { r*e^{2 pi i at} : 1 <= r <= q }.
PointedDisk make_rotated_slit_exterior(double q, double at);
// Complement of [-2,2] union a vertical spike [0, i s].
PointedDisk make_spiked_segment_exterior(double s);
// Image of a pointed disk under z -> factor * z.
PointedDisk scale_disk(const PointedDisk& d, cplx factor);

}  // namespace confdisk

#endif
