#include "confdisk/scene.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace confdisk {

namespace {

using json = nlohmann::ordered_json;

cplx parse_cplx(const json& j, const std::string& where) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw SceneError("expected a number or [re, im] pair at " + where);
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw SceneError("unknown key '" + it.key() + "' in " + where);
    }
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

DiskKind kind_from_name(const std::string& name) {
    if (name == "unit_disk") return DiskKind::UnitDisk;
    if (name == "disk_exterior") return DiskKind::DiskExterior;
    if (name == "segment_exterior") return DiskKind::SegmentExterior;
    if (name == "joukowski_exterior") return DiskKind::JoukowskiExterior;
    if (name == "ellipse_interior") return DiskKind::EllipseInterior;
    if (name == "radial_slit_exterior") return DiskKind::RadialSlitExterior;
    if (name == "arc_slit_exterior") return DiskKind::ArcSlitExterior;
    if (name == "polygon") return DiskKind::Polygon;
    throw SceneError("unknown domain kind: " + name);
}

}  // namespace

SceneSpec parse_scene(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw SceneError(std::string("scene JSON parse error: ") + e.what());
    }
    reject_unknown(j, {"domain", "center", "marked_point", "motion", "options"}, "scene");
    if (!j.contains("domain")) throw SceneError("scene: missing 'domain'");

    SceneSpec s;
    const json& dom = j["domain"];
    reject_unknown(dom, {"kind", "t", "p_tilde", "delta", "epsilon", "points"}, "domain");
    if (!dom.contains("kind")) throw SceneError("domain: missing 'kind'");
    s.domain_kind = kind_from_name(dom["kind"].get<std::string>());

    switch (s.domain_kind) {
        case DiskKind::JoukowskiExterior:
        case DiskKind::EllipseInterior: {
            if (!dom.contains("t")) throw SceneError("domain: missing 't'");
            cplx t = parse_cplx(dom["t"], "domain.t");
            if (std::abs(t) >= 1.0) throw SceneError("domain: |t| must be < 1");
            s.domain_params = {t};
            break;
        }
        case DiskKind::RadialSlitExterior: {
            if (!dom.contains("p_tilde")) throw SceneError("domain: missing 'p_tilde'");
            double p = dom["p_tilde"].get<double>();
            if (!(p > 1.0)) throw SceneError("domain: p_tilde must be > 1");
            s.domain_params = {p};
            break;
        }
        case DiskKind::ArcSlitExterior: {
            if (!dom.contains("delta") || !dom.contains("epsilon"))
                throw SceneError("domain: arc_slit_exterior needs 'delta' and 'epsilon'");
            double de = dom["delta"].get<double>(), ep = dom["epsilon"].get<double>();
            if (!(de > 0 && de < 0.5) || !(ep > 0))
                throw SceneError("domain: need 0 < delta < 1/2 and epsilon > 0");
            s.domain_params = {de, ep};
            break;
        }
        case DiskKind::Polygon: {
            if (!dom.contains("points")) throw SceneError("domain: polygon needs 'points'");
            for (const auto& p : dom["points"])
                s.polygon_points.push_back(parse_cplx(p, "domain.points"));
            if (s.polygon_points.size() < 3) throw SceneError("domain: polygon needs >= 3 points");
            break;
        }
        default: break;
    }

    // center
    bool default_inf = (s.domain_kind != DiskKind::UnitDisk &&
                        s.domain_kind != DiskKind::EllipseInterior &&
                        s.domain_kind != DiskKind::Polygon);
    if (j.contains("center")) {
        if (j["center"].is_string() && j["center"].get<std::string>() == "inf")
            s.center_at_inf = true;
        else {
            s.center = parse_cplx(j["center"], "center");
            s.center_at_inf = false;
        }
    } else {
        s.center_at_inf = default_inf;
    }
    if (s.center_at_inf != default_inf)
        throw SceneError("center placement does not match the domain kind");

    if (j.contains("marked_point")) s.marked_point = parse_cplx(j["marked_point"], "marked_point");

    if (j.contains("motion")) {
        const json& mo = j["motion"];
        reject_unknown(mo, {"kind", "variant", "tip_coeffs"}, "motion");
        if (!mo.contains("kind")) throw SceneError("motion: missing 'kind'");
        std::string mk = mo["kind"].get<std::string>();
        if (mk == "affine_stretch")
            s.motion_kind = MotionKind::AffineStretch;
        else if (mk == "joukowski")
            s.motion_kind = MotionKind::Joukowski;
        else if (mk == "trivial_chain") {
            s.motion_kind = MotionKind::TrivialChain;
            s.trivial_variant = mo.value("variant", std::string("interior"));
            if (s.trivial_variant != "interior" && s.trivial_variant != "exterior")
                throw SceneError("motion: trivial_chain variant must be interior or exterior");
        } else if (mk == "slit_grow") {
            s.motion_kind = MotionKind::SlitGrow;
            if (mo.contains("tip_coeffs"))
                for (const auto& c : mo["tip_coeffs"])
                    s.motion_params.push_back(parse_cplx(c, "motion.tip_coeffs"));
            if (s.motion_params.empty()) s.motion_params = {cplx(2, 0), cplx(1, 0)};
        } else {
            throw SceneError("unknown motion kind: " + mk);
        }
    }

    if (j.contains("options")) {
        const json& op = j["options"];
        reject_unknown(op, {"n", "seed", "threads", "tol", "wos_samples", "t_grid"}, "options");
        if (op.contains("n")) s.options.n = op["n"].get<int>();
        if (op.contains("seed")) s.options.seed = op["seed"].get<std::uint64_t>();
        if (op.contains("threads")) s.options.threads = op["threads"].get<int>();
        if (op.contains("tol")) s.options.tol = op["tol"].get<double>();
        if (op.contains("wos_samples")) s.options.wos_samples = op["wos_samples"].get<int>();
        if (op.contains("t_grid")) {
            for (const auto& t : op["t_grid"]) {
                cplx tt = parse_cplx(t, "options.t_grid");
                if (std::abs(tt) >= 1.0) throw SceneError("options: t_grid entries must be in the unit disk");
                s.options.t_grid.push_back(tt);
            }
        }
        if (s.options.n < 8) throw SceneError("options: n must be >= 8");
    }

    char digest[20];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(fnv1a(serialize_scene(s))));
    s.digest = digest;
    return s;
}

SceneSpec load_scene(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SceneError("cannot open scene file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scene(ss.str());
}

std::string serialize_scene(const SceneSpec& s) {
    json j;
    json dom;
    dom["kind"] = disk_kind_name(s.domain_kind);
    auto put_cplx = [](cplx z) { return json::array({z.real(), z.imag()}); };
    switch (s.domain_kind) {
        case DiskKind::JoukowskiExterior:
        case DiskKind::EllipseInterior: dom["t"] = put_cplx(s.domain_params.at(0)); break;
        case DiskKind::RadialSlitExterior: dom["p_tilde"] = s.domain_params.at(0).real(); break;
        case DiskKind::ArcSlitExterior:
            dom["delta"] = s.domain_params.at(0).real();
            dom["epsilon"] = s.domain_params.at(1).real();
            break;
        case DiskKind::Polygon: {
            json pts = json::array();
            for (cplx p : s.polygon_points) pts.push_back(put_cplx(p));
            dom["points"] = pts;
            break;
        }
        default: break;
    }
    j["domain"] = dom;
    if (s.center_at_inf)
        j["center"] = "inf";
    else if (s.center)
        j["center"] = put_cplx(*s.center);
    if (s.marked_point) j["marked_point"] = put_cplx(*s.marked_point);
    if (s.motion_kind) {
        json mo;
        switch (*s.motion_kind) {
            case MotionKind::AffineStretch: mo["kind"] = "affine_stretch"; break;
            case MotionKind::Joukowski: mo["kind"] = "joukowski"; break;
            case MotionKind::TrivialChain:
                mo["kind"] = "trivial_chain";
                mo["variant"] = s.trivial_variant;
                break;
            case MotionKind::SlitGrow: {
                mo["kind"] = "slit_grow";
                json tc = json::array();
                for (cplx c : s.motion_params) tc.push_back(put_cplx(c));
                mo["tip_coeffs"] = tc;
                break;
            }
            default: break;
        }
        j["motion"] = mo;
    }
    json op;
    op["n"] = s.options.n;
    op["seed"] = s.options.seed;
    op["threads"] = s.options.threads;
    op["tol"] = s.options.tol;
    op["wos_samples"] = s.options.wos_samples;
    if (!s.options.t_grid.empty()) {
        json tg = json::array();
        for (cplx t : s.options.t_grid) tg.push_back(put_cplx(t));
        op["t_grid"] = tg;
    }
    j["options"] = op;
    return j.dump();
}

PointedDisk SceneSpec::build_disk() const {
    switch (domain_kind) {
        case DiskKind::UnitDisk: {
            PointedDisk d = make_unit_disk(center.value_or(cplx(0, 0)));
            if (marked_point) d.marked_point = marked_point;
            return d;
        }
        case DiskKind::DiskExterior: {
            PointedDisk d = make_disk_exterior();
            if (marked_point) d.marked_point = marked_point;
            return d;
        }
        case DiskKind::SegmentExterior: return make_segment_exterior();
        case DiskKind::JoukowskiExterior: return make_joukowski_exterior(domain_params.at(0));
        case DiskKind::EllipseInterior: return make_ellipse_interior(domain_params.at(0));
        case DiskKind::RadialSlitExterior:
            return make_radial_slit_exterior(domain_params.at(0).real());
        case DiskKind::ArcSlitExterior:
            return make_arc_slit_exterior(domain_params.at(0).real(), domain_params.at(1).real());
        case DiskKind::Polygon: return make_polygon(polygon_points, center.value_or(cplx(0, 0)));
        default: throw SceneError("build_disk: unsupported kind");
    }
}

MotionFamily SceneSpec::build_motion() const {
    if (!motion_kind) throw SceneError("scene has no motion");
    switch (*motion_kind) {
        case MotionKind::AffineStretch: return MotionFamily::affine_stretch();
        case MotionKind::Joukowski: return MotionFamily::joukowski();
        case MotionKind::TrivialChain:
            return trivial_variant == "exterior" ? MotionFamily::trivial_exterior()
                                                 : MotionFamily::trivial_interior();
        case MotionKind::SlitGrow: {
            PolyCoeffs tip;
            tip.c = motion_params;
            return MotionFamily::slit_grow(tip);
        }
        default: throw SceneError("build_motion: unsupported kind");
    }
}

}  // namespace confdisk
