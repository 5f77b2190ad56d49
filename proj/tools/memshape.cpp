// Command-line front end: derive curvature coefficients, build Cauchy strips,
// march patches, explore the cylindrical family, verify stored patches.

#include <CLI11.hpp>

#include <cstdio>
#include <future>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "memshape/memshape.hpp"

using namespace memshape;

namespace {

struct PhiChoice {
    std::string name = "willmore";
    MaterialParams mp;

    ScalarExpr expr() const {
        if (name == "willmore") return phi_willmore();
        if (name == "helfrich") return phi_helfrich();
        throw invariant_error("unknown curvature potential: " + name);
    }
    json to_json() const {
        json j = materials_to_json(mp);
        j["phi"] = name;
        return j;
    }
};

void add_phi_options(CLI::App* cmd, PhiChoice& phi) {
    cmd->add_option("--phi", phi.name, "curvature potential: willmore or helfrich")
        ->check(CLI::IsMember({"willmore", "helfrich"}));
    cmd->add_option("--k", phi.mp.k, "bending modulus");
    cmd->add_option("--kbar", phi.mp.kbar, "saddle-splay modulus");
    cmd->add_option("--c0", phi.mp.c0, "spontaneous curvature");
    cmd->add_option("--pressure", phi.mp.pressure, "osmotic pressure");
    cmd->add_option("--lambda", phi.mp.lambda, "surface tension");
}

json expr_tree(const ScalarExpr& e) {
    json terms = json::array();
    for (const auto& t : e.terms()) {
        json powers = json::object();
        for (int s = 0; s < kNumSyms; ++s)
            if (t.pw[s] != 0) powers[sym_name(s)] = static_cast<int>(t.pw[s]);
        terms.push_back(json{{"coeff", t.coef}, {"powers", powers}});
    }
    return json{{"text", e.text()}, {"terms", terms}};
}

FourierComponent fourier_component(const json& j) {
    FourierComponent c;
    c.a0 = j.value("a0", 0.0);
    if (j.contains("an")) c.an = j.at("an").get<std::vector<double>>();
    if (j.contains("bn")) c.bn = j.at("bn").get<std::vector<double>>();
    return c;
}

ParamCurve curve_from_spec(const json& spec) try {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "circle") return make_circle(spec.value("radius", 1.0));
    if (kind == "ellipse") return make_ellipse(spec.value("ax", 2.0), spec.value("by", 1.0));
    if (kind == "helix")
        return make_helix(spec.value("radius", 1.0), spec.value("pitch", 0.25),
                          spec.value("turns", 2.0));
    if (kind == "fourier") {
        std::array<FourierComponent, 3> comps;
        comps[0] = fourier_component(spec.at("x"));
        comps[1] = fourier_component(spec.at("y"));
        comps[2] = fourier_component(spec.at("z"));
        return make_fourier(comps);
    }
    throw invariant_error("curve spec: unknown kind '" + kind + "'");
} catch (const json::exception& e) {
    throw invariant_error(std::string("curve spec: ") + e.what());
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out_path, j);
}

struct StripArgs {
    std::string curve_path;
    std::string h_expr = "0.5";
    std::string hw_expr = "0";
    StripOptions opt;

    CauchyStrip build(const PhiChoice& phi) const {
        json spec = read_json_file(curve_path);
        ArclengthCurve curve(curve_from_spec(spec));
        return build_integral_curve(curve, parse_datum(h_expr), parse_datum(hw_expr), phi.expr(),
                                    phi.mp, opt);
    }
    json to_json() const {
        return json{{"curve", curve_path}, {"h", h_expr},   {"hw", hw_expr},
                    {"x0", opt.x0},        {"a0", opt.a0},  {"n", opt.n},
                    {"span", opt.span}};
    }
};

void add_strip_options(CLI::App* cmd, StripArgs& sa) {
    cmd->set_help_flag("--help", "print help");  // frees -h for the datum option below
    cmd->add_option("--curve", sa.curve_path, "curve spec JSON file")->required();
    cmd->add_option("--h", sa.h_expr, "mean-curvature datum h(x, kappa)");
    cmd->add_option("--hw", sa.hw_expr, "normal derivative datum hW(x, kappa)");
    cmd->add_option("--x0", sa.opt.x0, "arclength of the first node");
    cmd->add_option("--a0", sa.opt.a0, "initial normal angle");
    cmd->add_option("--n", sa.opt.n, "node count")->check(CLI::PositiveNumber);
    cmd->add_option("--span", sa.opt.span, "arclength span (open curves)");
}

json residual_report(const CauchyStrip& strip, const PhiChoice& phi) {
    auto gr = verify_integral_curve(strip.nodes, strip.dx, strip.closed, phi.expr(), phi.mp);
    json gens = json::object();
    for (int g = 0; g < 10; ++g)
        gens[generator_name(g)] = json{{"max", gr.max_abs[g]}, {"arg_node", gr.argmax[g]}};
    return json{{"closed", strip.closed},
                {"margin", strip.margin},
                {"dx", strip.dx},
                {"nodes", strip.nodes.size()},
                {"generators", gens},
                {"worst", gr.worst()}};
}

void write_strip_csv(const std::string& path, const CauchyStrip& strip) {
    std::vector<std::string> header = {"x", "s"};
    for (int v = 0; v < 10; ++v) header.push_back(sym_name(v));
    header.insert(header.end(), {"Px", "Py", "Pz"});
    for (int c = 1; c <= 3; ++c)
        for (int r2 = 1; r2 <= 3; ++r2)
            header.push_back("A" + std::to_string(r2) + std::to_string(c));
    std::vector<std::vector<double>> rows;
    rows.reserve(strip.nodes.size());
    for (std::size_t i = 0; i < strip.nodes.size(); ++i) {
        const auto& f = strip.nodes[i];
        std::vector<double> row = {strip.xs[i], strip.s_vals[i]};
        for (double v : f.fiber()) row.push_back(v);
        row.insert(row.end(), {f.P.x, f.P.y, f.P.z});
        for (int c = 0; c < 3; ++c)
            for (int r2 = 0; r2 < 3; ++r2) row.push_back(f.A(r2, c));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

json topology_json(const TopologyProbe& tp) {
    std::string label;
    if (tp.strictly_convex)
        label = "strictly convex simple";
    else if (tp.crossings == 0)
        label = "nonconvex simple";
    else
        label = "self-intersecting";
    return json{{"classification", label},
                {"strictly_convex", tp.strictly_convex},
                {"inflections", tp.inflections},
                {"crossings", tp.crossings},
                {"crossings_reliable", tp.crossings_reliable},
                {"turning_number", tp.turning_number},
                {"closure_gap", tp.closure_gap}};
}

json family_json(const FamilyConstants& fc) {
    return json{{"sigma", fc.sigma},
                {"rho", fc.rho},
                {"w0", fc.w0},
                {"w2", fc.w2},
                {"g", fc.g},
                {"m", fc.m},
                {"omega", fc.omega},
                {"kappa_max", fc.kappa_at_0},
                {"kappa_min", fc.kappa_at_half},
                {"quartic_discriminant", quartic_structure(fc.w2, fc.w0).discriminant},
                {"materials", materials_to_json(fc.materials)},
                {"eps", fc.eps}};
}

int run(int argc, char** argv) {
    CLI::App app{"membrane shape equation toolkit"};
    app.require_subcommand(1);

    // ---- derive-coeffs
    auto* derive = app.add_subcommand("derive-coeffs", "derive the torsion coefficients");
    PhiChoice derive_phi;
    std::string derive_out;
    add_phi_options(derive, derive_phi);
    derive->add_option("--out", derive_out, "output JSON path (default stdout)");
    derive->callback([&] {
        auto cc = curvature_coefficients(derive_phi.expr());
        json config = derive_phi.to_json();
        config["subcommand"] = "derive-coeffs";
        json out = {{"provenance", provenance(config)},
                    {"phi", derive_phi.name},
                    {"B1", expr_tree(cc.B1)},
                    {"B2", expr_tree(cc.B2)},
                    {"D1", expr_tree(cc.D1)},
                    {"D2", expr_tree(cc.D2)}};
        emit(out, derive_out);
    });

    // ---- cauchy
    auto* cauchy = app.add_subcommand("cauchy", "geometric Cauchy data along a curve");
    cauchy->require_subcommand(1);

    auto* build = cauchy->add_subcommand("build", "lift a curve to an integral strip");
    PhiChoice build_phi;
    StripArgs build_strip;
    std::string build_csv, build_report;
    add_phi_options(build, build_phi);
    add_strip_options(build, build_strip);
    build->add_option("--out-csv", build_csv, "strip nodes CSV path");
    build->add_option("--out-report", build_report, "residual report JSON path (default stdout)");
    build->callback([&] {
        auto strip = build_strip.build(build_phi);
        if (!build_csv.empty()) write_strip_csv(build_csv, strip);
        json config = build_phi.to_json();
        config["subcommand"] = "cauchy build";
        config["strip"] = build_strip.to_json();
        json report = residual_report(strip, build_phi);
        report["provenance"] = provenance(config);
        emit(report, build_report);
    });

    auto* march = cauchy->add_subcommand("march", "march a strip to a surface patch");
    PhiChoice march_phi;
    StripArgs march_strip;
    MarchOptions march_opt;
    std::string march_out = "patch.json", march_obj, march_scheme = "rk4";
    add_phi_options(march, march_phi);
    add_strip_options(march, march_strip);
    march->add_option("--steps", march_opt.rows, "number of rows to march")
        ->check(CLI::PositiveNumber);
    march->add_option("--dy", march_opt.dy, "row spacing")->check(CLI::PositiveNumber);
    march->add_option("--scheme", march_scheme, "integration scheme (rk4)");
    march->add_option("--umbilic-tol", march_opt.umbilic_tol, "stop when a - c falls below this");
    march->add_option("--out", march_out, "patch JSON path");
    march->add_option("--obj", march_obj, "also export the patch as OBJ");
    march->callback([&] {
        if (march_scheme != "rk4")
            throw invariant_error("unsupported scheme: " + march_scheme);
        auto strip = march_strip.build(march_phi);
        auto mr = march_patch(strip, march_phi.expr(), march_phi.mp, march_opt);
        json config = march_phi.to_json();
        config["subcommand"] = "cauchy march";
        config["strip"] = march_strip.to_json();
        config["steps"] = march_opt.rows;
        config["dy"] = march_opt.dy;
        write_json_file(march_out, patch_to_json(mr.patch, config));
        if (!march_obj.empty()) write_obj(march_obj, patch_to_mesh(mr.patch), true);
        json summary = {{"completed", mr.completed},
                        {"rows_completed", mr.rows_completed},
                        {"halt_reason", mr.halt_reason},
                        {"patch", march_out}};
        std::cout << summary.dump(2) << "\n";
    });

    // ---- cylinder
    auto* cyl = app.add_subcommand("cylinder", "the closed cylindrical solution family");
    cyl->require_subcommand(1);

    auto* solve = cyl->add_subcommand("solve", "solve the closure condition");
    int solve_upsilon = 5;
    double solve_rho = 0.0;
    std::string solve_grid, solve_prefix;
    int solve_nout = 4096, solve_jobs = 0;
    solve->add_option("--upsilon", solve_upsilon, "curvature periods per turn")
        ->check(CLI::Range(2, 64));
    solve->add_option("--rho", solve_rho, "family parameter in [0, 1)");
    solve->add_option("--rho-grid", solve_grid, "sweep rho over lo:hi:n");
    solve->add_option("--n-out", solve_nout, "directrix sample count");
    solve->add_option("--jobs", solve_jobs, "sweep worker count (default: hardware)");
    solve->add_option("--out", solve_prefix, "output prefix (.json/.csv/.svg)");
    solve->callback([&] {
        json config = {{"subcommand", "cylinder solve"},
                       {"upsilon", solve_upsilon},
                       {"rho", solve_rho},
                       {"rho_grid", solve_grid}};
        if (!solve_grid.empty()) {
            double lo, hi;
            int cnt;
            if (std::sscanf(solve_grid.c_str(), "%lf:%lf:%d", &lo, &hi, &cnt) != 3 || cnt < 2)
                throw invariant_error("--rho-grid wants lo:hi:n");
            std::vector<json> rows(cnt);
            int workers = solve_jobs > 0
                              ? solve_jobs
                              : std::max(1u, std::thread::hardware_concurrency());
            std::atomic<int> next{0};
            auto worker = [&] {
                for (int i = next++; i < cnt; i = next++) {
                    double rho = lo + (hi - lo) * i / (cnt - 1);
                    auto fc = family_constants(solve_phi(solve_upsilon, rho), rho);
                    auto tp = probe_topology(fc, solve_upsilon, solve_nout);
                    json row = family_json(fc);
                    row["Lambda"] = closure_index(fc);
                    row["topology"] = topology_json(tp);
                    rows[i] = std::move(row);
                }
            };
            std::vector<std::thread> pool;
            for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
            worker();
            for (auto& t : pool) t.join();
            json out = {{"provenance", provenance(config)},
                        {"upsilon", solve_upsilon},
                        {"sweep", json(rows)}};
            emit(out, solve_prefix.empty() ? "" : solve_prefix + ".json");
            return;
        }
        auto fc = family_constants(solve_phi(solve_upsilon, solve_rho), solve_rho);
        auto sc = synthesize_curve(fc, solve_upsilon, solve_nout);
        auto tp = probe_topology(fc, solve_upsilon, solve_nout);
        json out = family_json(fc);
        out["provenance"] = provenance(config);
        out["upsilon"] = solve_upsilon;
        out["Lambda"] = closure_index(fc);
        out["directrix_length"] = sc.length;
        out["topology"] = topology_json(tp);
        if (!solve_prefix.empty()) {
            std::vector<std::vector<double>> rows;
            rows.reserve(sc.poly.pts.size());
            for (std::size_t i = 0; i < sc.poly.pts.size(); ++i)
                rows.push_back({sc.s[i], sc.theta[i], sc.kappa[i], sc.poly.pts[i].x,
                                sc.poly.pts[i].y});
            write_csv(solve_prefix + ".csv", {"s", "theta", "kappa", "x", "y"}, rows);
            auto rep = self_intersections(sc.poly);
            std::vector<Vec2> marks;
            for (const auto& hit : rep.points) marks.push_back(hit.p);
            write_svg(solve_prefix + ".svg", sc.poly, marks);
            out["csv"] = solve_prefix + ".csv";
            out["svg"] = solve_prefix + ".svg";
        }
        emit(out, solve_prefix.empty() ? "" : solve_prefix + ".json");
    });

    auto* sep = cyl->add_subcommand("separatrices", "locate the regime-separating parameters");
    int sep_upsilon = 5;
    int sep_nout = 16384;
    std::string sep_out;
    sep->add_option("--upsilon", sep_upsilon, "curvature periods per turn")
        ->check(CLI::Range(2, 64));
    sep->add_option("--n-out", sep_nout, "directrix sample count for crossing probes");
    sep->add_option("--out", sep_out, "output JSON path (default stdout)");
    sep->callback([&] {
        json config = {{"subcommand", "cylinder separatrices"}, {"upsilon", sep_upsilon}};
        double rho_cv = separating_rho_convexity(sep_upsilon);
        double rho_x1 = separating_rho_crossings(sep_upsilon, 1, rho_cv, 0.95, 1e-5, sep_nout);
        double rho_x2 =
            separating_rho_crossings(sep_upsilon, 2 * sep_upsilon + 1, rho_x1, 0.95, 1e-5, sep_nout);
        json out = {{"provenance", provenance(config)},
                    {"upsilon", sep_upsilon},
                    {"rho_convexity", rho_cv},
                    {"rho_first_crossings", rho_x1},
                    {"rho_second_crossings", rho_x2}};
        emit(out, sep_out);
    });

    auto* mesh = cyl->add_subcommand("mesh", "extrude a family member to an OBJ mesh");
    int mesh_upsilon = 5, mesh_levels = 16, mesh_nx = 512;
    double mesh_rho = 0.0, mesh_height = 1.0;
    std::string mesh_out = "cylinder.obj";
    mesh->add_option("--upsilon", mesh_upsilon, "curvature periods per turn")
        ->check(CLI::Range(2, 64));
    mesh->add_option("--rho", mesh_rho, "family parameter in [0, 1)");
    mesh->add_option("--height", mesh_height, "extrusion height")->check(CLI::PositiveNumber);
    mesh->add_option("--levels", mesh_levels, "rows along the ruling")->check(CLI::Range(8, 4096));
    mesh->add_option("--nx", mesh_nx, "samples along the directrix");
    mesh->add_option("--out", mesh_out, "OBJ output path");
    mesh->callback([&] {
        auto fc = family_constants(solve_phi(mesh_upsilon, mesh_rho), mesh_rho);
        auto patch = extrude_cylinder(fc, mesh_upsilon, mesh_nx, mesh_height, mesh_levels);
        write_obj(mesh_out, patch_to_mesh(patch), true);
        auto pv = validate_patch(patch, phi_helfrich(), patch_materials(fc));
        json out = {{"obj", mesh_out},
                    {"vertices", patch.nx * patch.ny},
                    {"pde_residual", pv.pde_worst()},
                    {"shape_residual", pv.shape_fd_max}};
        std::cout << out.dump(2) << "\n";
    });

    // ---- verify
    auto* verify = app.add_subcommand("verify", "validate a stored patch");
    PhiChoice verify_phi;
    std::string verify_patch, verify_out;
    add_phi_options(verify, verify_phi);
    verify->add_option("--patch", verify_patch, "patch JSON path")->required();
    verify->add_option("--out", verify_out, "output JSON path (default stdout)");
    verify->callback([&] {
        auto patch = patch_from_json(read_json_file(verify_patch));
        auto pv = validate_patch(patch, verify_phi.expr(), verify_phi.mp);
        auto eb = helfrich_energy(patch, verify_phi.mp);
        json config = verify_phi.to_json();
        config["subcommand"] = "verify";
        config["patch"] = verify_patch;
        json out = {{"provenance", provenance(config)},
                    {"gauss", pv.gauss_max},
                    {"codazzi_a", pv.codazzi_a_max},
                    {"codazzi_c", pv.codazzi_c_max},
                    {"second_order", pv.second_order_max},
                    {"mixed_a", pv.mixed_a_max},
                    {"mixed_c", pv.mixed_c_max},
                    {"shape_fd", pv.shape_fd_max},
                    {"shape_state", pv.shape_state_max},
                    {"frame_defect", pv.frame_defect_max},
                    {"margin_min", pv.margin_min},
                    {"xi1_min", pv.xi1_min},
                    {"pde_worst", pv.pde_worst()},
                    {"energy",
                     {{"bending", eb.bending},
                      {"gaussian", eb.gaussian},
                      {"tension", eb.tension},
                      {"area", eb.area},
                      {"total", eb.total}}}};
        emit(out, verify_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
