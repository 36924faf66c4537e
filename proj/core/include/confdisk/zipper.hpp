#ifndef CONFDISK_ZIPPER_HPP
#define CONFDISK_ZIPPER_HPP

#include "confdisk/confmap.hpp"
#include "confdisk/geom.hpp"

namespace confdisk {

// Geodesic zipper: conformal map of the model disk onto the domain bounded by
// the geodesic interpolation of the ordered samples. Center-at-infinity
// domains are conjugated through w = 1/(z - anchor) and mapped from Delta.
// Slit pieces are sampled as a thin keyhole of relative width keyhole_delta.
RiemannMap build_zipper_map(const PointedDisk& d, int n, double keyhole_delta = 1e-4);

// Zipper map from explicit samples in positive cyclic order around a bounded
// domain with an interior center.
RiemannMap build_zipper_map_from_points(const std::vector<cplx>& pts, cplx center);

}  // namespace confdisk

#endif
