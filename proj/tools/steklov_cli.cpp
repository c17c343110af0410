// Command-line laboratory for planar Steklov spectra: finite-element solves
// on parametrized domains, closed-form reference spectra, eigenvalue bound
// verdicts, nodal curve extraction, and convergence sweeps.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "steklov/analysis.hpp"
#include "steklov/analytic.hpp"
#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/io.hpp"
#include "steklov/mesh.hpp"

namespace {

using namespace steklov;

struct CommonOptions {
    std::string domain = "disk";
    double radius = 1.0;
    double a = 2.0;
    double b = 1.0;
    double r0 = 0.5;
    double eps = 0.0;
    double c_target = 0.0;
    double L = 0.5;
    int n_waves = 0;
    int k = 6;
    int nr = 64;
    int na = 256;
    double grading = 0.0;
    double weight_inner = 1.0;
    double weight_outer = 1.0;
    std::string out_dir = ".";
    bool dump_mesh = false;
    bool dump_matrices = false;
};

void add_domain_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--domain", o.domain, "disk | ellipse | annulus | osc-annulus | rect")
        ->check(CLI::IsMember({"disk", "ellipse", "annulus", "osc-annulus", "rect"}));
    cmd->add_option("--radius", o.radius, "disk radius");
    cmd->add_option("-a,--a", o.a, "ellipse/rect x half-axis");
    cmd->add_option("-b,--b", o.b, "ellipse y half-axis");
    cmd->add_option("--r0", o.r0, "annulus inner radius");
    cmd->add_option("--eps", o.eps, "oscillation amplitude");
    cmd->add_option("--n-waves", o.n_waves, "oscillation wave count (even)");
    cmd->add_option("--c-target", o.c_target,
                    "pick the wave count so the inner boundary length matches"
                    " c_target * 2 pi r0");
    cmd->add_option("--L", o.L, "rect y half-height");
    cmd->add_option("--k", o.k, "number of eigenvalues");
    cmd->add_option("--nr", o.nr, "radial resolution");
    cmd->add_option("--na", o.na, "angular resolution (divisible by 4)");
    cmd->add_option("--grading", o.grading, "radial grading toward the inner boundary");
    cmd->add_option("--weight-inner", o.weight_inner, "weight on the inner boundary");
    cmd->add_option("--weight-outer", o.weight_outer, "weight on the outer boundary");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_flag("--dump-mesh", o.dump_mesh, "write mesh.txt");
    cmd->add_flag("--dump-matrices", o.dump_matrices, "write K.txt, M.txt (and S.txt)");
}

geometry::DomainSpec make_domain(CommonOptions& o) {
    if (o.domain == "disk") return geometry::Disk{o.radius};
    if (o.domain == "ellipse") return geometry::Ellipse{o.a, o.b};
    if (o.domain == "annulus") return geometry::Annulus{o.r0};
    if (o.domain == "osc-annulus") {
        int waves = o.n_waves;
        if (waves == 0 && o.c_target > 0.0) {
            waves = geometry::oscillating_inner_boundary(o.r0, o.c_target, o.eps).n_waves;
            o.n_waves = waves;
        }
        return geometry::OscAnnulus{o.r0, o.eps, waves};
    }
    if (o.domain == "rect") {
        return geometry::ProfilePair{geometry::constant_profile(o.a, o.L),
                                     geometry::constant_profile(o.L, o.a), o.a, o.L};
    }
    throw std::invalid_argument("unknown domain " + o.domain);
}

std::string config_comment(const CommonOptions& o, const std::string& command) {
    std::ostringstream os;
    os << "# config: command=" << command << " domain=" << o.domain << " radius=" << o.radius
       << " a=" << o.a << " b=" << o.b << " r0=" << o.r0 << " eps=" << o.eps
       << " n_waves=" << o.n_waves << " L=" << o.L << " k=" << o.k << " nr=" << o.nr
       << " na=" << o.na << " grading=" << o.grading << " weight_inner=" << o.weight_inner
       << " weight_outer=" << o.weight_outer << "\n";
    return os.str();
}

struct SolveOutput {
    Mesh mesh;
    fem::SteklovSolution sol;
};

SolveOutput run_solve(CommonOptions& o) {
    const geometry::DomainSpec spec = make_domain(o);
    geometry::validate(spec);
    const BoundaryWeight w{o.weight_outer, o.weight_inner};
    validate(w);
    SolveOutput out;
    out.mesh = build_mesh(spec, Resolution{o.nr, o.na, o.grading});
    if (o.k < 1 || o.k > out.mesh.n_boundary()) {
        throw std::invalid_argument("k must lie in [1, boundary vertex count]");
    }
    out.sol = fem::steklov_solve(out.mesh, w, o.k);
    return out;
}

void dump_optional(const CommonOptions& o, const Mesh& mesh) {
    namespace fs = std::filesystem;
    const fs::path dir(o.out_dir);
    if (o.dump_mesh) io::write_text_atomic(dir / "mesh.txt", io::mesh_text(mesh));
    if (o.dump_matrices) {
        const auto K = fem::assemble_stiffness(mesh);
        const auto M = fem::assemble_boundary_mass(mesh, {o.weight_outer, o.weight_inner});
        io::write_text_atomic(dir / "K.txt", io::matrix_text(K));
        io::write_text_atomic(dir / "M.txt", io::matrix_text(M));
        if (mesh.n_boundary() <= 4096) {
            io::write_text_atomic(dir / "S.txt", io::matrix_text(fem::schur_reduce(K, mesh)));
        }
    }
}

int cmd_spectrum(CommonOptions& o) {
    auto [mesh, sol] = run_solve(o);
    const auto classes = analysis::classify_solution(sol);

    std::ostringstream csv;
    csv << config_comment(o, "spectrum");
    csv << "index,eigenvalue,symmetry,nodal_domains\n";
    for (int i = 0; i < sol.eigenvalues.size(); ++i) {
        const int domains = analysis::count_nodal_domains(mesh, sol.eigenvectors.col(i));
        csv << i << "," << io::format_sci(sol.eigenvalues(i)) << ","
            << analysis::to_string(classes[static_cast<std::size_t>(i)].cls) << "," << domains
            << "\n";
        std::printf("sigma_%d = %s  [%s, %d nodal domains]\n", i,
                    io::format_sci(sol.eigenvalues(i)).c_str(),
                    analysis::to_string(classes[static_cast<std::size_t>(i)].cls).c_str(), domains);
    }
    io::write_text_atomic(std::filesystem::path(o.out_dir) / "spectrum.csv", csv.str());
    dump_optional(o, mesh);
    return 0;
}

int cmd_closed_form_annulus(CommonOptions& o, double c) {
    const auto cf = analytic::annulus_spectrum(o.r0, c, 0, o.k);
    const auto flat = cf.values(o.k);
    std::ostringstream csv;
    csv << config_comment(o, "closed-form annulus") << "index,value,l,branch,multiplicity\n";
    int idx = 0;
    for (const auto& m : cf.modes) {
        for (int rep = 0; rep < m.multiplicity && idx < o.k; ++rep, ++idx) {
            csv << idx << "," << io::format_sci(m.value) << "," << m.l << ","
                << (m.branch == analytic::Branch::minus ? "minus" : "plus") << ","
                << m.multiplicity << "\n";
        }
    }
    for (std::size_t i = 0; i < flat.size(); ++i) {
        std::printf("sigma_%zu = %s\n", i, io::format_sci(flat[i]).c_str());
    }
    io::write_text_atomic(std::filesystem::path(o.out_dir) / "closedform.csv", csv.str());
    return 0;
}

int cmd_closed_form_cylinder(CommonOptions& o, double T) {
    const auto vals = analytic::cylinder_spectrum(T, o.k);
    std::ostringstream csv;
    csv << config_comment(o, "closed-form cylinder") << "index,value\n";
    for (std::size_t i = 0; i < vals.size(); ++i) {
        csv << i << "," << io::format_sci(vals[i]) << "\n";
        std::printf("sigma_%zu = %s\n", i, io::format_sci(vals[i]).c_str());
    }
    io::write_text_atomic(std::filesystem::path(o.out_dir) / "closedform.csv", csv.str());
    return 0;
}

int cmd_closed_form_segment(CommonOptions& o, double L) {
    const auto vals = analytic::segment_spectrum(L);
    std::ostringstream csv;
    csv << config_comment(o, "closed-form segment") << "index,value\n";
    for (std::size_t i = 0; i < vals.size(); ++i) {
        csv << i << "," << io::format_sci(vals[i]) << "\n";
        std::printf("sigma_%zu = %s\n", i, io::format_sci(vals[i]).c_str());
    }
    io::write_text_atomic(std::filesystem::path(o.out_dir) / "closedform.csv", csv.str());
    return 0;
}

int cmd_roots() {
    const double t_star = analytic::find_T_star();
    const double r_star = analytic::find_R_star();
    std::printf("T* = %s\n", io::format_sci(t_star).c_str());
    std::printf("R* = %s\n", io::format_sci(r_star).c_str());
    std::printf("|R* - exp(-2 T*)| = %s\n",
                io::format_sci(std::abs(r_star - std::exp(-2.0 * t_star))).c_str());
    return 0;
}

int cmd_bounds(CommonOptions& o, double tol) {
    auto [mesh, sol] = run_solve(o);
    const geometry::DomainSpec spec = make_domain(o);
    const auto report = analysis::check_bounds(spec, sol, tol);

    std::ostringstream csv;
    csv << config_comment(o, "bounds");
    csv << "name,relation,lhs,rhs,applicable,holds,strict,note\n";
    for (const auto& c : report.checks) {
        csv << c.name << "," << c.relation << "," << io::format_sci(c.lhs) << ","
            << io::format_sci(c.rhs) << "," << (c.applicable ? 1 : 0) << "," << (c.holds ? 1 : 0)
            << "," << (c.strict ? 1 : 0) << "," << c.note << "\n";
        if (!c.applicable) {
            std::printf("%s : SKIP (%s)\n", c.name.c_str(), c.note.c_str());
        } else {
            std::printf("%s %s %s %s : %s%s%s\n", io::format_sci(c.lhs).c_str(),
                        c.relation.c_str(), io::format_sci(c.rhs).c_str(), c.name.c_str(),
                        c.holds ? "PASS" : "FAIL", c.note.empty() ? "" : " ",
                        c.note.c_str());
        }
    }
    io::write_text_atomic(std::filesystem::path(o.out_dir) / "bounds.csv", csv.str());
    dump_optional(o, mesh);
    return report.all_hold() ? 0 : 4;
}

int cmd_nodal(CommonOptions& o, int mode) {
    auto [mesh, sol] = run_solve(o);
    if (mode < 0 || mode >= sol.eigenvalues.size()) {
        throw std::invalid_argument("nodal: mode index out of range");
    }
    const auto curves = analysis::extract_nodal_set(mesh, sol.eigenvectors.col(mode));
    io::write_text_atomic(std::filesystem::path(o.out_dir) / "nodal_curves.txt",
                          io::nodal_curves_text(curves));

    bool all_closed = !curves.empty();
    int contacts = 0;
    const analysis::NodalCurve* main = nullptr;
    for (const auto& c : curves) {
        all_closed = all_closed && c.closed;
        contacts += c.boundary_contacts;
        if (!main || c.length > main->length) main = &c;
    }
    if (!main) {
        std::printf("no nodal set\n");
    } else if (all_closed) {
        if (o.domain == "annulus" || o.domain == "osc-annulus") {
            std::printf("closed winding=%d mean_r=%s target=sqrt(r0)=%s\n", main->winding,
                        io::format_sci(main->mean_radius).c_str(),
                        io::format_sci(std::sqrt(o.r0)).c_str());
        } else {
            std::printf("closed winding=%d mean_r=%s\n", main->winding,
                        io::format_sci(main->mean_radius).c_str());
        }
    } else {
        std::printf("open touches_boundary=%d\n", contacts);
    }
    return 0;
}

int cmd_sweep(CommonOptions& o, const std::string& family, std::vector<double>& eps_list,
              std::vector<double>& aspects) {
    std::ostringstream csv;
    csv << config_comment(o, "sweep " + family);
    if (family == "oscillation") {
        if (eps_list.empty()) throw std::invalid_argument("sweep oscillation: need --eps-list");
        const auto rows = analysis::oscillation_convergence_study(
            o.r0, eps_list, Resolution{o.nr, o.na, o.grading}, o.k);
        csv << "eps,n_waves,n_angular,sigma1,target,rel_error,nodal_closed,winding,"
               "boundary_contacts,mean_radius,radius_stddev\n";
        for (const auto& r : rows) {
            csv << io::format_sci(r.eps) << "," << r.n_waves << "," << r.n_angular << ","
                << io::format_sci(r.sigma1) << "," << io::format_sci(r.target) << ","
                << io::format_sci(r.rel_error) << "," << (r.nodal_closed ? 1 : 0) << ","
                << r.winding << "," << r.boundary_contacts << ","
                << io::format_sci(r.mean_radius) << "," << io::format_sci(r.radius_stddev)
                << "\n";
            std::printf("eps=%g sigma1=%s target=%s rel_error=%s nodal=%s\n", r.eps,
                        io::format_sci(r.sigma1).c_str(), io::format_sci(r.target).c_str(),
                        io::format_sci(r.rel_error).c_str(),
                        r.nodal_closed ? "closed" : "open");
        }
    } else if (family == "ellipse") {
        if (aspects.empty()) throw std::invalid_argument("sweep ellipse: need --aspects");
        const auto rows = analysis::ellipse_family_sweep(aspects, o.b,
                                                         Resolution{o.nr, o.na, o.grading}, o.k);
        csv << "a,b,sigma1,sigma2,rel_gap,class1,nodal_domains1\n";
        for (const auto& r : rows) {
            csv << io::format_sci(r.a) << "," << io::format_sci(r.b) << ","
                << io::format_sci(r.sigma1) << "," << io::format_sci(r.sigma2) << ","
                << io::format_sci(r.rel_gap) << "," << analysis::to_string(r.class1) << ","
                << r.nodal_domains1 << "\n";
            std::printf("a=%g sigma1=%s gap=%s class=%s\n", r.a,
                        io::format_sci(r.sigma1).c_str(), io::format_sci(r.rel_gap).c_str(),
                        analysis::to_string(r.class1).c_str());
        }
    } else {
        throw std::invalid_argument("sweep: unknown family " + family);
    }
    io::write_text_atomic(std::filesystem::path(o.out_dir) / "sweep.csv", csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planar Steklov eigenvalue laboratory"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file; flags take precedence");

    CommonOptions opt;
    double cf_c = 2.0;
    double cf_T = 1.0;
    double cf_L = 1.0;
    double bounds_tol = 0.01;
    int nodal_mode = 1;
    std::string sweep_family = "oscillation";
    std::vector<double> eps_list;
    std::vector<double> aspects;

    auto* spectrum = app.add_subcommand("spectrum", "solve and write spectrum.csv");
    add_domain_flags(spectrum, opt);

    auto* closed = app.add_subcommand("closed-form", "closed-form reference spectra");
    closed->require_subcommand(1);
    auto* cf_annulus = closed->add_subcommand("annulus", "weighted annulus closed forms");
    cf_annulus->add_option("--r0", opt.r0, "inner radius");
    cf_annulus->add_option("--c", cf_c, "inner weight");
    cf_annulus->add_option("--k", opt.k, "count");
    cf_annulus->add_option("--out", opt.out_dir, "output directory");
    auto* cf_cyl = closed->add_subcommand("cylinder", "flat cylinder spectrum");
    cf_cyl->add_option("--T", cf_T, "half-height");
    cf_cyl->add_option("--k", opt.k, "count");
    cf_cyl->add_option("--out", opt.out_dir, "output directory");
    auto* cf_seg = closed->add_subcommand("segment", "segment spectrum");
    cf_seg->add_option("--L", cf_L, "half-length");
    cf_seg->add_option("--out", opt.out_dir, "output directory");

    auto* roots = app.add_subcommand("roots", "critical radius R* and height T*");
    (void)roots;

    auto* bounds = app.add_subcommand("bounds", "bound verdicts; exit 4 on any failure");
    add_domain_flags(bounds, opt);
    bounds->add_option("--tol", bounds_tol, "discretization tolerance for verdicts");

    auto* nodal = app.add_subcommand("nodal", "nodal curves of one eigenfunction");
    add_domain_flags(nodal, opt);
    nodal->add_option("--mode", nodal_mode, "eigenfunction index (default 1)");

    auto* sweep = app.add_subcommand("sweep", "oscillation or ellipse family sweeps");
    add_domain_flags(sweep, opt);
    sweep->add_option("--family", sweep_family, "oscillation | ellipse")
        ->check(CLI::IsMember({"oscillation", "ellipse"}));
    sweep->add_option("--eps-list", eps_list, "amplitudes")->delimiter(',');
    sweep->add_option("--aspects", aspects, "aspect ratios a/b")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(opt);
        if (cf_annulus->parsed()) return cmd_closed_form_annulus(opt, cf_c);
        if (cf_cyl->parsed()) return cmd_closed_form_cylinder(opt, cf_T);
        if (cf_seg->parsed()) return cmd_closed_form_segment(opt, cf_L);
        if (roots->parsed()) return cmd_roots();
        if (bounds->parsed()) return cmd_bounds(opt, bounds_tol);
        if (nodal->parsed()) return cmd_nodal(opt, nodal_mode);
        if (sweep->parsed()) return cmd_sweep(opt, sweep_family, eps_list, aspects);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
