#ifndef CONFDISK_ZHUKOVSKII_HPP
#define CONFDISK_ZHUKOVSKII_HPP

#include "confdisk/confmap.hpp"
#include "confdisk/measure.hpp"

namespace confdisk {

// Z(zeta) = zeta + 1/zeta; degree-2 cover with critical values +-2.
cplx zhukovskii(cplx zeta);

// Branch of Z^{-1} with |result| >= 1, continuous on the closure of the
// slit-sphere from the Delta side. Points strictly inside (-2,2) have both
// preimages on the unit circle and are rejected.
cplx zhukovskii_inverse_exterior(cplx w);

// U together with its Zhukovskii preimage V and the lifted Riemann map
// h = Z^{-1} o g with h(1) = 1.
struct LiftData {
    PointedDisk base;        // U, center infinity, +-2 on the boundary
    RiemannMap base_map;     // g with g(1) = 2
    PointedDisk preimage;    // V, sampled boundary
    RiemannMap lifted_map;   // h = Z^{-1} o g
};

LiftData zhukovskii_preimage(const PointedDisk& U, const RiemannMap& g);

// Lift of a boundary homeomorphism phi: dU -> dU~ fixing +-2 to
// psi: dV -> dV~ fixing +-1 with Z o psi = phi o Z.
BoundaryMap zhukovskii_lift(const BoundaryMap& phi, const LiftData& lift,
                            const LiftData& lift_tilde, int n = 512);

enum class LiftClass { SplitsToTwoUni, LiftsToOneBi };

// Classification of a biaccessible ray pair: splits iff the pair separates
// sep_a from sep_b (crossing parity of a test path between them).
LiftClass classify_lifted_access(Angle a_minus, Angle a_plus, const RiemannMap& g,
                                 cplx sep_a = cplx(-2.0, 0.0), cplx sep_b = cplx(2.0, 0.0));

}  // namespace confdisk

#endif
