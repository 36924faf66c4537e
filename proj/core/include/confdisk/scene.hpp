#ifndef CONFDISK_SCENE_HPP
#define CONFDISK_SCENE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confdisk/geom.hpp"
#include "confdisk/motion.hpp"

namespace confdisk {

struct RunOptions {
    int n = 512;
    std::uint64_t seed = 0xC0FFEEull;
    int threads = 0;  // 0 = hardware concurrency
    double tol = 0;   // 0 = command default
    int wos_samples = 100000;
    std::vector<cplx> t_grid;  // empty = default grid
};

// Parsed scene file: domain + optional motion + run options. Unknown keys
// are rejected; parameter ranges are validated at build time.
struct SceneSpec {
    DiskKind domain_kind = DiskKind::UnitDisk;
    std::vector<cplx> domain_params;
    std::vector<cplx> polygon_points;
    std::optional<cplx> center;  // nullopt = infinity for exterior kinds
    bool center_at_inf = false;
    std::optional<cplx> marked_point;
    std::optional<MotionKind> motion_kind;
    std::vector<cplx> motion_params;  // slit_grow tip polynomial, etc.
    std::string trivial_variant;      // "interior" / "exterior"
    RunOptions options;
    std::string digest;  // FNV-1a of the canonical serialization

    PointedDisk build_disk() const;
    MotionFamily build_motion() const;
    bool has_motion() const { return motion_kind.has_value(); }
};

SceneSpec parse_scene(const std::string& json_text);
SceneSpec load_scene(const std::string& path);
std::string serialize_scene(const SceneSpec& s);  // canonical round-trip form

}  // namespace confdisk

#endif
