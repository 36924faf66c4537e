#include <chrono>
#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "confdisk/io.hpp"
#include "confdisk/motion.hpp"
#include "confdisk/potential.hpp"
#include "confdisk/scene.hpp"
#include "confdisk/zhukovskii.hpp"

using namespace confdisk;
using json = nlohmann::ordered_json;

namespace {

struct CliArgs {
    std::string scene_path;
    std::string out_path;
    std::string format = "json";
    std::string t_flag;
    int n = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    double tol = 0;
    bool no_timing = false;
};

cplx parse_t(const std::string& s) {
    double re = 0, im = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf", &re, &im) < 1)
        throw CLI::ValidationError("--t expects re,im");
    return {re, im};
}

json envelope(const std::string& command, const SceneSpec& scene, const CliArgs& args,
              json results, std::vector<std::string> warnings, double seconds) {
    json env;
    env["command"] = command;
    env["scene"] = scene.digest;
    json op;
    op["n"] = scene.options.n;
    op["seed"] = scene.options.seed;
    op["threads"] = scene.options.threads;
    op["tol"] = scene.options.tol;
    env["options"] = op;
    env["results"] = std::move(results);
    env["warnings"] = warnings;
    if (!args.no_timing) env["timing"] = seconds;
    return env;
}

void merge_flags(SceneSpec& scene, const CliArgs& args) {
    if (args.n > 0) scene.options.n = args.n;
    if (args.seed_set) scene.options.seed = args.seed;
    if (args.threads > 0) scene.options.threads = args.threads;
    if (args.tol > 0) scene.options.tol = args.tol;
    if (scene.options.threads <= 0)
        scene.options.threads = int(std::max(1u, std::thread::hardware_concurrency()));
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json chain_json(const ConformalMap& m) {
    json arr = json::array();
    for (const auto& e : m.chain) {
        json p;
        switch (e.prim.kind) {
            case Primitive::Kind::Mobius:
                p["type"] = "mobius";
                p["coeffs"] = json::array({complex_json(e.prim.a), complex_json(e.prim.b),
                                           complex_json(e.prim.c_), complex_json(e.prim.d_)});
                break;
            case Primitive::Kind::Power:
                p["type"] = "power";
                p["alpha"] = e.prim.alpha;
                break;
            case Primitive::Kind::Zhuk: p["type"] = "zhukovskii"; break;
            case Primitive::Kind::ZhukInvExt: p["type"] = "zhukovskii_inverse_exterior"; break;
            case Primitive::Kind::FamilyQuad:
                p["type"] = "family_quad";
                p["a"] = complex_json(e.prim.a);
                break;
            case Primitive::Kind::FamilyZhukC:
                p["type"] = "family_zhuk_c";
                p["a"] = complex_json(e.prim.a);
                break;
            case Primitive::Kind::ZipInit:
                p["type"] = "zip_init";
                p["coeffs"] = json::array({complex_json(e.prim.a), complex_json(e.prim.b)});
                break;
            case Primitive::Kind::ZipStage:
                p["type"] = "zip_stage";
                p["coeffs"] = json::array({e.prim.binv, e.prim.d});
                break;
            case Primitive::Kind::ZipClose:
                p["type"] = "zip_close";
                p["coeffs"] = json::array({e.prim.pinv, e.prim.flag ? 1.0 : 0.0});
                break;
        }
        if (e.inverted) p["inverted"] = true;
        arr.push_back(p);
    }
    return arr;
}

RiemannMap scene_map(const SceneSpec& scene, cplx t) {
    if (scene.has_motion()) {
        MotionFamily m = scene.build_motion();
        return m.map_at(t, scene.options.n);
    }
    return riemann_map_for(scene.build_disk(), scene.options.n);
}

json energy_report_json(const EnergyReport& r) {
    json out;
    out["energy"] = r.energy;
    if (std::isfinite(r.log_rad))
        out["log_rad"] = r.log_rad;
    else
        out["log_rad"] = nullptr;
    if (std::isfinite(r.discrepancy))
        out["discrepancy"] = r.discrepancy;
    else
        out["discrepancy"] = nullptr;
    out["iterations"] = r.iterations;
    out["converged"] = r.converged;
    return out;
}

std::vector<cplx> equal_arclength_support(const PointedDisk& d, int n) {
    // geometric support: slits contribute once (plus side skipped)
    std::vector<const BoundaryPiece*> pieces;
    double total = 0;
    for (const auto& p : d.boundary.pieces) {
        if (p.side() == Side::Plus) continue;
        pieces.push_back(&p);
        total += p.length();
    }
    std::vector<cplx> pts;
    pts.reserve(n);
    for (int j = 0; j < n; ++j) {
        double s = total * (j + 0.5) / n;
        for (const auto* p : pieces) {
            if (s <= p->length() || p == pieces.back()) {
                pts.push_back(p->point(std::min(1.0, s / p->length())));
                break;
            }
            s -= p->length();
        }
    }
    return pts;
}

int run_command(const std::string& cmd, const CliArgs& args) {
    auto t_start = std::chrono::steady_clock::now();
    SceneSpec scene = load_scene(args.scene_path);
    CliArgs a = args;
    merge_flags(scene, a);
    cplx t = a.t_flag.empty() ? cplx(0, 0) : parse_t(a.t_flag);

    json results;
    std::vector<std::string> warnings;
    std::string csv;

    if (cmd == "radius") {
        RiemannMap g = scene_map(scene, t);
        results["rad"] = g.conformal_radius;
        results["log_rad"] = std::log(g.conformal_radius);
    } else if (cmd == "map") {
        RiemannMap g = scene_map(scene, t);
        results["model"] = g.model == Model::Disk ? "disk" : "exterior";
        results["rad"] = g.conformal_radius;
        results["chain"] = chain_json(g.map);
    } else if (cmd == "hmeasure") {
        RiemannMap g = scene_map(scene, t);
        DiscreteMeasure mu = harmonic_measure(g, scene.options.n);
        results["atoms"] = mu.atoms.size();
        results["total_weight"] = mu.total_weight();
        results["nonconvergent_cells"] = mu.n_nonconvergent;
        if (mu.warning) warnings.push_back("more than 1% non-convergent cells");
        csv = measure_csv(mu);
    } else if (cmd == "decompose") {
        RiemannMap g = scene_map(scene, t);
        DiscreteMeasure mu = harmonic_measure(g, scene.options.n);
        BoundaryCorrespondence corr = boundary_correspondence(g, scene.options.n);
        cplx s = g.target.marked_point.value_or(radial_limit(g, Angle::from_turns(0)).value);
        MeasureDecomposition dec = decompose(mu, corr, s);
        results["alpha_mass"] = dec.alpha.total_weight();
        results["beta_minus_mass"] = dec.beta_minus.total_weight();
        results["beta_plus_mass"] = dec.beta_plus.total_weight();
        csv = measure_csv(mu);
    } else if (cmd == "energy") {
        PointedDisk d = scene.has_motion() ? scene.build_motion().disk_at(t) : scene.build_disk();
        EnergyReport rep = check_energy_radius(d, scene.options.n);
        results = energy_report_json(rep);
    } else if (cmd == "equilibrium") {
        PointedDisk d = scene.has_motion() ? scene.build_motion().disk_at(t) : scene.build_disk();
        auto pts = equal_arclength_support(d, scene.options.n);
        bool closed = !d.boundary.has_slit() && d.kind != DiskKind::SegmentExterior;
        EquilibriumOptions opt;
        if (scene.options.tol > 0) opt.tolerance = scene.options.tol;
        auto [mu, rep] = equilibrium_measure(pts, closed, opt);
        results = energy_report_json(rep);
        csv = measure_csv(mu);
    } else if (cmd == "wos") {
        PointedDisk d = scene.has_motion() ? scene.build_motion().disk_at(t) : scene.build_disk();
        WosOptions opt;
        opt.seed = scene.options.seed;
        opt.threads = scene.options.threads;
        DiscreteMeasure mu = walk_on_spheres(d, scene.options.wos_samples, opt);
        results["atoms"] = mu.atoms.size();
        results["dropped_walkers"] = mu.n_dropped;
        if (mu.warning) warnings.push_back("more than 0.1% of walkers exceeded the step budget");
        csv = measure_csv(mu);
    } else if (cmd == "zhukovskii") {
        PointedDisk d = scene.has_motion() ? scene.build_motion().disk_at(t) : scene.build_disk();
        RiemannMap g = riemann_map_for(d, scene.options.n);
        LiftData lift = zhukovskii_preimage(d, g);
        results["rad_base"] = lift.base_map.conformal_radius;
        results["rad_preimage"] = lift.lifted_map.conformal_radius;
        double resid = 0;
        for (int k = 0; k < 64; ++k) {
            cplx zeta = std::polar(1.5 + 0.1 * (k % 5), kTwoPi * k / 64.0);
            cplx lhs = zhukovskii(lift.lifted_map.eval(zeta));
            cplx rhs = lift.base_map.eval(zeta);
            resid = std::max(resid, std::abs(lhs - rhs));
        }
        results["cover_residual"] = resid;
    } else if (cmd == "fitness") {
        MotionFamily m = scene.build_motion();
        std::vector<cplx> grid =
            scene.options.t_grid.empty() ? default_t_grid() : scene.options.t_grid;
        FitnessTolerances tols;
        FitnessReport rep =
            fitness_report(m, grid, scene.options.n, tols, scene.options.threads);
        results["motion"] = m.name();
        results["rows"] = rep.rows.size();
        results["all_consistent"] = rep.all_consistent;
        int pass_all = 0, fail_all = 0, complete = 0;
        for (const auto& r : rep.rows) {
            if (!r.complete) continue;
            ++complete;
            bool allp = r.v_iii == Verdict::Pass && r.v_iv == Verdict::Pass &&
                        r.v_v == Verdict::Pass && r.v_vi == Verdict::Pass;
            bool allf = r.v_iii == Verdict::Fail && r.v_iv == Verdict::Fail &&
                        r.v_v == Verdict::Fail && r.v_vi == Verdict::Fail;
            pass_all += allp;
            fail_all += allf;
        }
        results["complete_rows"] = complete;
        results["all_pass_rows"] = pass_all;
        results["all_fail_rows"] = fail_all;
        csv = fitness_csv(rep);
    } else if (cmd == "harmonicity") {
        MotionFamily m = scene.build_motion();
        std::vector<cplx> grid =
            scene.options.t_grid.empty() ? default_t_grid() : scene.options.t_grid;
        std::vector<double> radii;
        for (cplx tt : grid) {
            double r = std::abs(tt);
            if (r < 1e-12) continue;
            bool seen = false;
            for (double x : radii)
                if (std::fabs(x - r) < 1e-9) seen = true;
            if (!seen) radii.push_back(r);
        }
        auto u = [&](cplx tt) { return std::log(m.map_at(tt, scene.options.n, false).conformal_radius); };
        double tol = scene.options.tol > 0 ? scene.options.tol : 1e-2;
        HarmonicityReport rep = harmonicity_scan(u, {cplx(0, 0)}, radii, 16, tol);
        results["max_residual"] = rep.max_residual;
        results["harmonic"] = rep.harmonic;
        csv = harmonicity_csv(rep);
    } else if (cmd == "motion-scan") {
        MotionFamily m = scene.build_motion();
        std::vector<cplx> grid =
            scene.options.t_grid.empty() ? default_t_grid() : scene.options.t_grid;
        RiemannMap g0 = m.map_at(0.0, scene.options.n);
        DiscreteMeasure omega0 = harmonic_measure(g0, scene.options.n);
        ScanTable table = energy_pushforward_scan(m, omega0, grid, scene.options.n);
        results["rows"] = table.rows.size();
        results["max_mean_value_residual"] = table.max_mean_value_residual;
        results["h_harmonic"] = table.h_harmonic;
        bool all_ineq = true;
        for (const auto& r : table.rows) all_ineq = all_ineq && r.ineq_ok;
        results["all_inequalities_hold"] = all_ineq;
        csv = scan_csv(table);
    } else {
        throw CLI::ValidationError("unknown command " + cmd);
    }

    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    json env = envelope(cmd, scene, a, results, warnings, seconds);

    if (a.format == "csv" && !csv.empty()) {
        if (!a.out_path.empty())
            write_file(a.out_path, csv);
        else
            std::cout << csv;
    } else {
        std::string text = env.dump(2) + "\n";
        if (!a.out_path.empty()) {
            write_file(a.out_path, text);
            if (!csv.empty()) write_file(a.out_path + ".csv", csv);
        } else {
            std::cout << text;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"confdisk: Riemann maps, harmonic and equilibrium measures, and the "
                 "holomorphic-motion fitness harness for pointed disks"};
    app.require_subcommand(1);

    CliArgs args;
    std::vector<std::string> names = {"radius",      "map",    "hmeasure",    "decompose",
                                      "energy",      "equilibrium", "wos",    "zhukovskii",
                                      "fitness",     "harmonicity", "motion-scan"};
    std::vector<CLI::App*> subs;
    for (const auto& nm : names) {
        CLI::App* sub = app.add_subcommand(nm);
        sub->add_option("--scene", args.scene_path, "scene JSON file")->required();
        sub->add_option("--t", args.t_flag, "parameter t as re,im");
        sub->add_option("--n", args.n, "resolution");
        sub->add_option("--seed", args.seed, "64-bit seed")->each([&](const std::string&) {
            args.seed_set = true;
        });
        sub->add_option("--threads", args.threads, "worker threads");
        sub->add_option("--tol", args.tol, "tolerance override");
        sub->add_option("--out", args.out_path, "output path");
        sub->add_option("--format", args.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--no-timing", args.no_timing, "omit the timing field");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return run_command(names[i], args);
        std::cerr << "no command given\n";
        return 1;
    } catch (const SceneError& e) {
        std::cerr << "scene error: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
