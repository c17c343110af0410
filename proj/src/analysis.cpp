#include "steklov/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "steklov/analytic.hpp"
#include "steklov/numerics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace steklov::analysis {

namespace {

constexpr double kPi = 3.14159265358979323846;

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Deterministic tie-break for exactly-zero vertex values.
Eigen::VectorXd effective_values(const Eigen::VectorXd& u) {
    const double umax = u.lpNorm<Eigen::Infinity>();
    Eigen::VectorXd v = u;
    if (umax == 0.0) return v;
    for (int i = 0; i < v.size(); ++i) {
        if (v(i) == 0.0) v(i) = 1e-13 * umax;
    }
    return v;
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(b)] = a;
    }
};

double reflection_residual(const Eigen::VectorXd& u, const std::vector<int>& map, double sign) {
    double acc = 0.0;
    for (int i = 0; i < u.size(); ++i) {
        const double d = u(i) - sign * u(map[static_cast<std::size_t>(i)]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::array<double, 4> residuals_for(const Mesh& mesh, const Eigen::VectorXd& u) {
    const double norm = u.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("classify_symmetry: zero vector");
    const double rx_even = reflection_residual(u, mesh.reflect_x, 1.0) / norm;
    const double rx_odd = reflection_residual(u, mesh.reflect_x, -1.0) / norm;
    const double ry_even = reflection_residual(u, mesh.reflect_y, 1.0) / norm;
    const double ry_odd = reflection_residual(u, mesh.reflect_y, -1.0) / norm;
    // Order EE, OE, EO, OO; first letter x-parity, second y-parity.
    return {std::max(rx_even, ry_even), std::max(rx_odd, ry_even), std::max(rx_even, ry_odd),
            std::max(rx_odd, ry_odd)};
}

SymmetryClass classify_from_residuals(const std::array<double, 4>& res, double threshold) {
    int matches = 0;
    int which = -1;
    for (int i = 0; i < 4; ++i) {
        if (res[static_cast<std::size_t>(i)] < threshold) {
            ++matches;
            which = i;
        }
    }
    SymmetryClass out;
    out.residuals = res;
    if (matches == 1) {
        out.cls = static_cast<SymClass>(which);
    } else {
        out.cls = SymClass::mixed;
    }
    return out;
}

double best_residual(const Mesh& mesh, const Eigen::VectorXd& u) {
    const auto r = residuals_for(mesh, u);
    return *std::min_element(r.begin(), r.end());
}

}  // namespace

double rayleigh_quotient(const Mesh& mesh, const BoundaryWeight& w, const Eigen::VectorXd& u) {
    if (u.size() != mesh.n_vertices()) {
        throw std::invalid_argument("rayleigh_quotient: nodal vector size mismatch");
    }
    const auto K = fem::assemble_stiffness(mesh);
    const auto M = fem::assemble_boundary_mass(mesh, w);
    const double den = u.dot(M * u);
    const double scale = u.squaredNorm();
    if (!(den > 1e-14 * std::max(scale, 1e-300))) {
        throw std::invalid_argument("rayleigh_quotient: zero boundary norm");
    }
    return u.dot(K * u) / den;
}

std::vector<NodalCurve> extract_nodal_set(const Mesh& mesh, const Eigen::VectorXd& u) {
    if (u.size() != mesh.n_vertices()) {
        throw std::invalid_argument("extract_nodal_set: nodal vector size mismatch");
    }
    const Eigen::VectorXd v = effective_values(u);
    const bool has_pos = (v.array() > 0.0).any();
    const bool has_neg = (v.array() < 0.0).any();
    if (!has_pos || !has_neg) return {};

    // Crossing point per sign-changing edge.
    std::map<EdgeKey, Eigen::Vector2d> crossing;
    struct Segment {
        EdgeKey e0, e1;
    };
    std::vector<Segment> segments;
    auto cross_point = [&](int a, int b) {
        const EdgeKey k = edge_key(a, b);
        auto it = crossing.find(k);
        if (it != crossing.end()) return k;
        const double va = v(k.first);
        const double vb = v(k.second);
        const double t = va / (va - vb);
        const Eigen::Vector2d p = mesh.vertices[static_cast<std::size_t>(k.first)] +
                                  t * (mesh.vertices[static_cast<std::size_t>(k.second)] -
                                       mesh.vertices[static_cast<std::size_t>(k.first)]);
        crossing.emplace(k, p);
        return k;
    };

    for (const auto& tri : mesh.triangles) {
        std::vector<EdgeKey> keys;
        for (int e = 0; e < 3; ++e) {
            const int a = tri[static_cast<std::size_t>(e)];
            const int b = tri[static_cast<std::size_t>((e + 1) % 3)];
            if ((v(a) > 0.0) != (v(b) > 0.0)) keys.push_back(cross_point(a, b));
        }
        if (keys.size() == 2) segments.push_back({keys[0], keys[1]});
    }

    // Chain segments through shared edge crossings.
    std::map<EdgeKey, std::vector<int>> incident;
    for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
        incident[segments[static_cast<std::size_t>(s)].e0].push_back(s);
        incident[segments[static_cast<std::size_t>(s)].e1].push_back(s);
    }
    std::set<EdgeKey> boundary_keys;
    for (const auto& e : mesh.boundary_edges) boundary_keys.insert(edge_key(e.a, e.b));

    std::vector<char> used(segments.size(), 0);
    std::vector<NodalCurve> curves;

    auto walk = [&](int s0, EdgeKey from) {
        // Walk away from `from`, returning the chain of edge keys visited.
        std::vector<EdgeKey> chain;
        int s = s0;
        EdgeKey prev = from;
        while (true) {
            used[static_cast<std::size_t>(s)] = 1;
            const auto& seg = segments[static_cast<std::size_t>(s)];
            const EdgeKey next = (seg.e0 == prev) ? seg.e1 : seg.e0;
            chain.push_back(next);
            const auto& inc = incident[next];
            int cont = -1;
            for (int cand : inc) {
                if (!used[static_cast<std::size_t>(cand)]) cont = cand;
            }
            if (cont < 0) return chain;
            prev = next;
            s = cont;
        }
    };

    for (int s0 = 0; s0 < static_cast<int>(segments.size()); ++s0) {
        if (used[static_cast<std::size_t>(s0)]) continue;
        const EdgeKey start = segments[static_cast<std::size_t>(s0)].e0;
        auto forward = walk(s0, start);
        std::vector<EdgeKey> keys;
        keys.push_back(start);
        keys.insert(keys.end(), forward.begin(), forward.end());
        const bool closed = keys.size() >= 3 && keys.front() == keys.back();
        if (!closed) {
            // Extend backwards from the start when it has an unused continuation.
            std::vector<EdgeKey> backward;
            for (int cand : incident[start]) {
                if (!used[static_cast<std::size_t>(cand)]) {
                    backward = walk(cand, start);
                    break;
                }
            }
            std::reverse(backward.begin(), backward.end());
            backward.insert(backward.end(), keys.begin(), keys.end());
            keys = std::move(backward);
        }

        NodalCurve c;
        c.closed = closed;
        c.points.reserve(keys.size());
        for (const auto& k : keys) c.points.push_back(crossing.at(k));
        if (!closed) {
            c.boundary_contacts = static_cast<int>(boundary_keys.count(keys.front())) +
                                  static_cast<int>(boundary_keys.count(keys.back()));
            c.touches_boundary = c.boundary_contacts > 0;
        }

        double len = 0.0;
        double mean = 0.0;
        for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
            const double w = (c.points[i + 1] - c.points[i]).norm();
            const double r = 0.5 * (c.points[i + 1] + c.points[i]).norm();
            len += w;
            mean += w * r;
        }
        c.length = len;
        if (len > 0.0) {
            mean /= len;
            double var = 0.0;
            for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
                const double w = (c.points[i + 1] - c.points[i]).norm();
                const double r = 0.5 * (c.points[i + 1] + c.points[i]).norm();
                var += w * (r - mean) * (r - mean);
            }
            c.mean_radius = mean;
            c.radius_stddev = std::sqrt(var / len);
        }
        if (closed) {
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
                const auto& p = c.points[i];
                const auto& q = c.points[i + 1];
                total += std::atan2(p.x() * q.y() - p.y() * q.x(), p.dot(q));
            }
            c.winding = static_cast<int>(std::lround(total / (2.0 * kPi)));
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

int count_nodal_domains(const Mesh& mesh, const Eigen::VectorXd& u) {
    if (u.size() != mesh.n_vertices()) {
        throw std::invalid_argument("count_nodal_domains: nodal vector size mismatch");
    }
    const Eigen::VectorXd v = effective_values(u);
    const int nt = static_cast<int>(mesh.triangles.size());
    std::vector<char> sign(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
        int pos = 0;
        for (int i = 0; i < 3; ++i) {
            if (v(tri[static_cast<std::size_t>(i)]) > 0.0) ++pos;
        }
        sign[static_cast<std::size_t>(t)] = pos >= 2 ? 1 : 0;
    }
    std::map<EdgeKey, int> first_owner;
    DisjointSets ds(nt);
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
        for (int e = 0; e < 3; ++e) {
            const EdgeKey k = edge_key(tri[static_cast<std::size_t>(e)],
                                       tri[static_cast<std::size_t>((e + 1) % 3)]);
            auto [it, inserted] = first_owner.emplace(k, t);
            if (!inserted && sign[static_cast<std::size_t>(it->second)] ==
                                 sign[static_cast<std::size_t>(t)]) {
                ds.unite(it->second, t);
            }
        }
    }
    std::set<int> roots;
    for (int t = 0; t < nt; ++t) roots.insert(ds.find(t));
    return static_cast<int>(roots.size());
}

std::string to_string(SymClass c) {
    switch (c) {
        case SymClass::EE: return "EE";
        case SymClass::OE: return "OE";
        case SymClass::EO: return "EO";
        case SymClass::OO: return "OO";
        default: return "MIXED";
    }
}

SymmetryClass classify_symmetry(const Mesh& mesh, const Eigen::VectorXd& u, double threshold) {
    if (mesh.reflect_x.size() != static_cast<std::size_t>(mesh.n_vertices()) ||
        mesh.reflect_y.size() != static_cast<std::size_t>(mesh.n_vertices())) {
        throw std::invalid_argument("classify_symmetry: mesh carries no symmetry maps");
    }
    if (u.size() != mesh.n_vertices()) {
        throw std::invalid_argument("classify_symmetry: nodal vector size mismatch");
    }
    return classify_from_residuals(residuals_for(mesh, u), threshold);
}

std::vector<SymmetryClass> classify_solution(const fem::SteklovSolution& sol,
                                             double pairing_threshold, double class_threshold) {
    const Mesh& mesh = *sol.mesh;
    const int k = static_cast<int>(sol.eigenvalues.size());
    Eigen::MatrixXd vecs = sol.eigenvectors;

    // Cluster near-degenerate eigenvalues.
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= k; ++i) {
        const bool split =
            i == k || std::abs(sol.eigenvalues(i) - sol.eigenvalues(i - 1)) >
                          pairing_threshold * std::max({std::abs(sol.eigenvalues(i)),
                                                        std::abs(sol.eigenvalues(i - 1)), 1e-12});
        if (split) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }

    for (const auto& [lo, hi] : clusters) {
        // Rotate pairs inside the cluster toward pure reflection classes.
        for (int a = lo; a < hi; ++a) {
            for (int b = a + 1; b < hi; ++b) {
                const Eigen::VectorXd ua = vecs.col(a);
                const Eigen::VectorXd ub = vecs.col(b);
                auto objective = [&](double phi) {
                    const Eigen::VectorXd v1 = std::cos(phi) * ua + std::sin(phi) * ub;
                    const Eigen::VectorXd v2 = -std::sin(phi) * ua + std::cos(phi) * ub;
                    return best_residual(mesh, v1) + best_residual(mesh, v2);
                };
                double best_phi = 0.0;
                double best_val = objective(0.0);
                const int grid = 48;
                for (int g = 1; g < grid; ++g) {
                    const double phi = kPi * g / grid;
                    const double val = objective(phi);
                    if (val < best_val) {
                        best_val = val;
                        best_phi = phi;
                    }
                }
                const double lo_phi = best_phi - kPi / grid;
                const double hi_phi = best_phi + kPi / grid;
                best_phi = numerics::golden_max(
                    [&](double phi) { return -objective(phi); }, lo_phi, hi_phi, 1e-10);
                if (objective(best_phi) < objective(0.0) - 1e-12) {
                    vecs.col(a) = std::cos(best_phi) * ua + std::sin(best_phi) * ub;
                    vecs.col(b) = -std::sin(best_phi) * ua + std::cos(best_phi) * ub;
                }
            }
        }
    }

    std::vector<SymmetryClass> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        out.push_back(classify_from_residuals(residuals_for(mesh, vecs.col(i)), class_threshold));
    }
    return out;
}

bool BoundReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const BoundCheck& c) { return !c.applicable || c.holds; });
}

BoundReport check_bounds(const geometry::DomainSpec& spec, const fem::SteklovSolution& sol,
                         double tolerance) {
    if (sol.eigenvalues.size() < 2) {
        throw std::invalid_argument("check_bounds: need at least two eigenvalues");
    }
    const Mesh& mesh = *sol.mesh;
    BoundReport rep;
    rep.domain = geometry::describe(spec);
    rep.sigma1 = sol.eigenvalues(1);
    rep.sigma2 = sol.eigenvalues.size() > 2 ? sol.eigenvalues(2) : 0.0;
    rep.tolerance = tolerance;

    const bool simply_connected = !mesh.has_inner_component();

    // Profile representations, when the domain has them. The slicing bounds
    // only control the whole boundary integral when the respective profile
    // closes the boundary (vanishes at its endpoints): flat-ended profiles
    // leave side walls the slices never reach, and the bound can genuinely
    // fail there, so those rows are reported but marked inapplicable.
    std::optional<double> sup_f;
    std::optional<double> sup_g;
    bool closes_f = false;
    bool closes_g = false;
    auto closes = [](const geometry::Profile& p, double sup) {
        return p.value(p.halfspan * (1.0 - 1e-9)) < 0.01 * sup;
    };
    if (const auto* d = std::get_if<geometry::Disk>(&spec)) {
        sup_f = d->radius;
        sup_g = d->radius;
        closes_f = closes_g = true;
    } else if (const auto* e = std::get_if<geometry::Ellipse>(&spec)) {
        sup_f = geometry::profile_sup(geometry::ellipse_profile(e->a, e->b));
        sup_g = geometry::profile_sup(geometry::ellipse_profile(e->b, e->a));
        closes_f = closes_g = true;
    } else if (const auto* p = std::get_if<geometry::ProfilePair>(&spec)) {
        sup_f = geometry::profile_sup(p->f);
        sup_g = geometry::profile_sup(p->g);
        closes_f = closes(p->f, *sup_f);
        closes_g = closes(p->g, *sup_g);
    }

    if (sup_f && sup_g) {
        BoundCheck c;
        c.name = "sigma1_profile_lower";
        c.relation = ">=";
        c.lhs = rep.sigma1;
        c.rhs = std::min(1.0 / *sup_f, 1.0 / *sup_g);
        c.applicable = closes_f && closes_g;
        c.holds = c.lhs >= c.rhs * (1.0 - tolerance);
        c.strict = c.lhs > c.rhs * (1.0 + tolerance);
        if (!c.applicable) c.note = "profile does not close the boundary";
        rep.checks.push_back(c);

        const auto classes = classify_solution(sol);
        for (int i = 1; i < static_cast<int>(classes.size()); ++i) {
            const SymClass cls = classes[static_cast<std::size_t>(i)].cls;
            if (cls != SymClass::EO && cls != SymClass::OE && cls != SymClass::OO) continue;
            BoundCheck pc;
            pc.lhs = sol.eigenvalues(i);
            pc.relation = ">=";
            if (cls == SymClass::EO || cls == SymClass::OO) {
                // Odd in y: sliced against the thickness profile f.
                pc.name = "odd_y_lower_" + std::to_string(i);
                pc.rhs = 1.0 / *sup_f;
                pc.applicable = closes_f;
            } else {
                pc.name = "odd_x_lower_" + std::to_string(i);
                pc.rhs = 1.0 / *sup_g;
                pc.applicable = closes_g;
            }
            pc.holds = pc.lhs >= pc.rhs * (1.0 - tolerance);
            pc.strict = pc.lhs > pc.rhs * (1.0 + tolerance);
            pc.note = to_string(cls);
            if (!pc.applicable) pc.note += " profile does not close the boundary";
            rep.checks.push_back(pc);
        }
    } else {
        BoundCheck c;
        c.name = "sigma1_profile_lower";
        c.relation = ">=";
        c.applicable = false;
        c.note = "no profile representation";
        rep.checks.push_back(c);
    }

    {
        BoundCheck c;
        c.name = "weinstock_upper";
        c.relation = "<=";
        if (simply_connected) {
            c.lhs = rep.sigma1;
            c.rhs = 2.0 * kPi / boundary_length(mesh);
            c.holds = c.lhs <= c.rhs * (1.0 + tolerance);
            c.strict = c.lhs < c.rhs * (1.0 - tolerance);
            if (!c.strict && c.holds) c.note = "EQUALITY(tol)";
        } else {
            c.applicable = false;
            c.note = "not simply connected";
        }
        rep.checks.push_back(c);
    }

    {
        // Coordinate test function in the variational quotient.
        BoundCheck c;
        c.name = "rayleigh_x_upper";
        c.relation = "<=";
        Eigen::VectorXd x(mesh.n_vertices());
        for (int i = 0; i < mesh.n_vertices(); ++i) x(i) = mesh.vertices[static_cast<std::size_t>(i)].x();
        c.lhs = rep.sigma1;
        c.rhs = rayleigh_quotient(mesh, sol.weight, x);
        c.holds = c.lhs <= c.rhs * (1.0 + 1e-12);
        c.strict = c.lhs < c.rhs * (1.0 - tolerance);
        rep.checks.push_back(c);
    }
    return rep;
}

double spectral_gap(const fem::SteklovSolution& sol) {
    if (sol.eigenvalues.size() < 3) {
        throw std::invalid_argument("spectral_gap: need at least three eigenvalues");
    }
    return (sol.eigenvalues(2) - sol.eigenvalues(1)) / sol.eigenvalues(1);
}

int sweep_parallelism(int entries) {
    int cap = 0;
    if (const char* env = std::getenv("STEKLOV_THREADS")) {
        cap = std::atoi(env);
        if (cap < 0) cap = 0;
    }
    if (cap == 0) {
        int omp_threads = 1;
#ifdef _OPENMP
        omp_threads = omp_get_max_threads();
#endif
        const int hw = static_cast<int>(std::thread::hardware_concurrency());
        cap = std::max(1, hw / std::max(1, omp_threads));
    }
    return std::max(1, std::min(cap, entries));
}

namespace {

OscillationRow oscillation_entry(double r0, double eps, const Resolution& res, int k,
                                 const fem::SolveOptions& opts) {
    OscillationRow row;
    row.eps = eps;

    Mesh mesh;
    if (eps == 0.0) {
        Resolution r = res;
        if (r.grading == 0.0) r.grading = suggested_grading(r0, r.radial, r.angular);
        mesh = build_mesh(geometry::Annulus{r0}, r);
        row.n_waves = 0;
        row.n_angular = res.angular;
        row.target = analytic::annulus_spectrum(r0, 1.0, 1, 2).values(2)[1];
    } else {
        const auto choice = geometry::oscillating_inner_boundary(r0, 1.0 / r0, eps);
        row.n_waves = choice.n_waves;
        int na = std::max(res.angular, 16 * choice.n_waves);
        na = ((na + 3) / 4) * 4;
        row.n_angular = na;
        Resolution r = res;
        r.angular = na;
        if (r.grading == 0.0) r.grading = suggested_grading(r0 - eps, r.radial, na);
        mesh = build_mesh(geometry::OscAnnulus{r0, eps, choice.n_waves}, r);
        row.target = analytic::annulus_spectrum(r0, 1.0 / r0, 1, 2).values(2)[1];
    }

    const auto sol = fem::steklov_solve(mesh, BoundaryWeight{1.0, 1.0}, k, opts);
    row.sigma1 = sol.eigenvalues(1);
    row.rel_error = std::abs(row.sigma1 - row.target) / row.target;

    const auto curves = extract_nodal_set(mesh, sol.eigenvectors.col(1));
    const NodalCurve* main = nullptr;
    for (const auto& c : curves) {
        if (!main || c.length > main->length) main = &c;
    }
    if (main) {
        row.nodal_closed = main->closed;
        row.winding = main->winding;
        row.mean_radius = main->mean_radius;
        row.radius_stddev = main->radius_stddev;
        int contacts = 0;
        for (const auto& c : curves) contacts += c.boundary_contacts;
        row.boundary_contacts = contacts;
    }
    return row;
}

}  // namespace

std::vector<OscillationRow> oscillation_convergence_study(double r0,
                                                          const std::vector<double>& eps_list,
                                                          const Resolution& res, int k,
                                                          const fem::SolveOptions& opts) {
    const int n = static_cast<int>(eps_list.size());
    std::vector<OscillationRow> rows(static_cast<std::size_t>(n));
    const int par = sweep_parallelism(n);
    if (par <= 1) {
        for (int i = 0; i < n; ++i) {
            rows[static_cast<std::size_t>(i)] =
                oscillation_entry(r0, eps_list[static_cast<std::size_t>(i)], res, k, opts);
        }
        return rows;
    }
    std::vector<std::future<OscillationRow>> futures;
    futures.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        futures.push_back(std::async(std::launch::async, [&, i] {
            return oscillation_entry(r0, eps_list[static_cast<std::size_t>(i)], res, k, opts);
        }));
    }
    for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = futures[static_cast<std::size_t>(i)].get();
    return rows;
}

std::vector<EllipseRow> ellipse_family_sweep(const std::vector<double>& aspects, double b,
                                             const Resolution& res, int k,
                                             const fem::SolveOptions& opts) {
    std::vector<EllipseRow> rows;
    rows.reserve(aspects.size());
    for (const double aspect : aspects) {
        EllipseRow row;
        row.a = aspect * b;
        row.b = b;
        const Mesh mesh = build_mesh(geometry::Ellipse{row.a, row.b}, res);
        const auto sol = fem::steklov_solve(mesh, BoundaryWeight{}, std::max(k, 3), opts);
        row.sigma1 = sol.eigenvalues(1);
        row.sigma2 = sol.eigenvalues(2);
        row.rel_gap = spectral_gap(sol);
        row.class1 = classify_solution(sol)[1].cls;
        row.nodal_domains1 = count_nodal_domains(mesh, sol.eigenvectors.col(1));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace steklov::analysis
