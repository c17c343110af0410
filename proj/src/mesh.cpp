#include "steklov/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "steklov/numerics.hpp"

namespace steklov {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Unit directions at angles 2 pi j / na, built by mirroring the first
// quadrant so reflected entries match bitwise. Requires na % 4 == 0.
std::vector<Eigen::Vector2d> unit_directions(int na) {
    std::vector<Eigen::Vector2d> u(static_cast<std::size_t>(na));
    const int q = na / 4;
    for (int j = 0; j <= q; ++j) {
        const double th = 2.0 * kPi * j / na;
        u[static_cast<std::size_t>(j)] = {std::cos(th), std::sin(th)};
    }
    u[0] = {1.0, 0.0};
    u[static_cast<std::size_t>(q)] = {0.0, 1.0};
    for (int j = 0; j < q; ++j) {
        u[static_cast<std::size_t>(na / 2 - j)] = {-u[static_cast<std::size_t>(j)].x(),
                                                   u[static_cast<std::size_t>(j)].y()};
    }
    for (int j = 1; j < na / 2; ++j) {
        u[static_cast<std::size_t>(na - j)] = {u[static_cast<std::size_t>(j)].x(),
                                               -u[static_cast<std::size_t>(j)].y()};
    }
    return u;
}

// Radial layer fractions s_0 = 0 < ... < s_n = 1, exponentially clustered
// toward 0 when grading > 0.
std::vector<double> layer_fractions(int n, double grading) {
    std::vector<double> s(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        s[static_cast<std::size_t>(i)] =
            grading > 0.0 ? std::expm1(grading * t) / std::expm1(grading) : t;
    }
    s[0] = 0.0;
    s[static_cast<std::size_t>(n)] = 1.0;
    return s;
}

void check_polar_resolution(const Resolution& res) {
    if (res.radial < 4 || res.angular < 4) {
        throw std::invalid_argument("build_mesh: resolutions must be at least 4");
    }
    if (res.angular % 4 != 0) {
        throw std::invalid_argument("build_mesh: n_angular must be divisible by 4");
    }
}

void add_band_quads(Mesh& mesh, int ring_lo_base, int ring_hi_base, int na) {
    for (int j = 0; j < na; ++j) {
        const int jn = (j + 1) % na;
        const int a = ring_lo_base + j;
        const int b = ring_hi_base + j;
        const int c = ring_hi_base + jn;
        const int d = ring_lo_base + jn;
        if (j % 2 == 0) {
            mesh.triangles.push_back({a, b, c});
            mesh.triangles.push_back({a, c, d});
        } else {
            mesh.triangles.push_back({a, b, d});
            mesh.triangles.push_back({b, c, d});
        }
    }
}

void finalize_bookkeeping(Mesh& mesh) {
    mesh.on_boundary.assign(static_cast<std::size_t>(mesh.n_vertices()), 0);
    for (const auto& e : mesh.boundary_edges) {
        mesh.on_boundary[static_cast<std::size_t>(e.a)] = 1;
        mesh.on_boundary[static_cast<std::size_t>(e.b)] = 1;
    }
    mesh.boundary_index.assign(static_cast<std::size_t>(mesh.n_vertices()), -1);
    for (int s = 0; s < mesh.n_boundary(); ++s) {
        mesh.boundary_index[static_cast<std::size_t>(mesh.boundary_vertices[static_cast<std::size_t>(s)])] = s;
    }
}

// Polar-family mesh: rings of na vertices at per-angle radii given by
// radius_of(j, s) for layer fraction s; optional center fan.
struct PolarSpec {
    int nr = 0;
    int na = 0;
    bool center_fan = false;            // disk-like: innermost ring collapses to a point
    bool inner_boundary = false;        // annulus-like: first ring is a boundary cycle
    Eigen::Vector2d axis_scale{1.0, 1.0};
};

Mesh build_polar(const PolarSpec& ps, const std::vector<double>& inner_radius,
                 const std::vector<double>& layers) {
    Mesh mesh;
    const int na = ps.na;
    const int nr = ps.nr;
    const auto dirs = unit_directions(na);

    const int n_rings = ps.center_fan ? nr : nr + 1;
    const int base0 = ps.center_fan ? 1 : 0;
    mesh.vertices.reserve(static_cast<std::size_t>(base0 + n_rings * na));
    if (ps.center_fan) mesh.vertices.push_back({0.0, 0.0});

    for (int i = 0; i < n_rings; ++i) {
        const double s = layers[static_cast<std::size_t>(ps.center_fan ? i + 1 : i)];
        for (int j = 0; j < na; ++j) {
            const double rho = inner_radius[static_cast<std::size_t>(j)];
            const double r = rho + (1.0 - rho) * s;
            const auto& u = dirs[static_cast<std::size_t>(j)];
            mesh.vertices.push_back(
                {ps.axis_scale.x() * (r * u.x()), ps.axis_scale.y() * (r * u.y())});
        }
    }

    auto ring_base = [&](int i) { return base0 + i * na; };

    if (ps.center_fan) {
        for (int j = 0; j < na; ++j) {
            mesh.triangles.push_back({0, ring_base(0) + j, ring_base(0) + (j + 1) % na});
        }
    }
    for (int i = 0; i + 1 < n_rings; ++i) {
        add_band_quads(mesh, ring_base(i), ring_base(i + 1), na);
    }

    const int outer = ring_base(n_rings - 1);
    for (int j = 0; j < na; ++j) {
        mesh.boundary_edges.push_back({outer + j, outer + (j + 1) % na, BoundaryComponent::outer});
        mesh.boundary_vertices.push_back(outer + j);
    }
    if (ps.inner_boundary) {
        const int inner = ring_base(0);
        for (int j = 0; j < na; ++j) {
            mesh.boundary_edges.push_back(
                {inner + j, inner + (j + 1) % na, BoundaryComponent::inner});
        }
        for (int j = 0; j < na; ++j) mesh.boundary_vertices.push_back(inner + j);
    }

    // Reflection maps: ring-preserving angular index maps.
    const int nv = mesh.n_vertices();
    mesh.reflect_x.resize(static_cast<std::size_t>(nv));
    mesh.reflect_y.resize(static_cast<std::size_t>(nv));
    if (ps.center_fan) {
        mesh.reflect_x[0] = 0;
        mesh.reflect_y[0] = 0;
    }
    for (int i = 0; i < n_rings; ++i) {
        for (int j = 0; j < na; ++j) {
            const int v = ring_base(i) + j;
            mesh.reflect_x[static_cast<std::size_t>(v)] = ring_base(i) + ((na / 2 - j) % na + na) % na;
            mesh.reflect_y[static_cast<std::size_t>(v)] = ring_base(i) + (na - j) % na;
        }
    }

    finalize_bookkeeping(mesh);
    return mesh;
}

Mesh build_profile_pair(const geometry::ProfilePair& pp, const Resolution& res) {
    const int nx = res.angular;
    const int ny = res.radial;
    if (nx < 4 || ny < 4) throw std::invalid_argument("build_mesh: resolutions must be at least 4");
    if (nx % 2 != 0 || ny % 2 != 0) {
        throw std::invalid_argument("build_mesh: profile grid sizes must be even");
    }

    // Mirrored abscissas and the per-column half-thickness.
    std::vector<double> xs(static_cast<std::size_t>(nx) + 1);
    std::vector<double> half(static_cast<std::size_t>(nx) + 1);
    for (int i = nx / 2; i <= nx; ++i) {
        xs[static_cast<std::size_t>(i)] = pp.a * (2.0 * i - nx) / nx;
        half[static_cast<std::size_t>(i)] = pp.f.value(xs[static_cast<std::size_t>(i)]);
    }
    xs[static_cast<std::size_t>(nx / 2)] = 0.0;
    for (int i = 0; i < nx / 2; ++i) {
        xs[static_cast<std::size_t>(i)] = -xs[static_cast<std::size_t>(nx - i)];
        half[static_cast<std::size_t>(i)] = half[static_cast<std::size_t>(nx - i)];
    }
    for (int i = 0; i <= nx; ++i) {
        if (!(half[static_cast<std::size_t>(i)] > 1e-12)) {
            throw std::invalid_argument("build_mesh: profile degenerates to zero thickness");
        }
    }
    std::vector<double> ts(static_cast<std::size_t>(ny) + 1);
    for (int j = ny / 2; j <= ny; ++j) ts[static_cast<std::size_t>(j)] = (2.0 * j - ny) / ny;
    ts[static_cast<std::size_t>(ny / 2)] = 0.0;
    for (int j = 0; j < ny / 2; ++j) ts[static_cast<std::size_t>(j)] = -ts[static_cast<std::size_t>(ny - j)];

    Mesh mesh;
    auto idx = [&](int i, int j) { return i * (ny + 1) + j; };
    mesh.vertices.resize(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j <= ny; ++j) {
            mesh.vertices[static_cast<std::size_t>(idx(i, j))] = {
                xs[static_cast<std::size_t>(i)],
                half[static_cast<std::size_t>(i)] * ts[static_cast<std::size_t>(j)]};
        }
    }
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const int a = idx(i, j);
            const int b = idx(i + 1, j);
            const int c = idx(i + 1, j + 1);
            const int d = idx(i, j + 1);
            if ((i + j) % 2 == 0) {
                mesh.triangles.push_back({a, b, c});
                mesh.triangles.push_back({a, c, d});
            } else {
                mesh.triangles.push_back({a, b, d});
                mesh.triangles.push_back({b, c, d});
            }
        }
    }

    // One outer cycle, counterclockwise from the bottom-left corner.
    auto push_edge = [&](int va, int vb) {
        mesh.boundary_edges.push_back({va, vb, BoundaryComponent::outer});
        mesh.boundary_vertices.push_back(va);
    };
    for (int i = 0; i < nx; ++i) push_edge(idx(i, 0), idx(i + 1, 0));
    for (int j = 0; j < ny; ++j) push_edge(idx(nx, j), idx(nx, j + 1));
    for (int i = nx; i > 0; --i) push_edge(idx(i, ny), idx(i - 1, ny));
    for (int j = ny; j > 0; --j) push_edge(idx(0, j), idx(0, j - 1));

    mesh.reflect_x.resize(mesh.vertices.size());
    mesh.reflect_y.resize(mesh.vertices.size());
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j <= ny; ++j) {
            mesh.reflect_x[static_cast<std::size_t>(idx(i, j))] = idx(nx - i, j);
            mesh.reflect_y[static_cast<std::size_t>(idx(i, j))] = idx(i, ny - j);
        }
    }
    finalize_bookkeeping(mesh);
    return mesh;
}

}  // namespace

bool Mesh::has_inner_component() const {
    return std::any_of(boundary_edges.begin(), boundary_edges.end(), [](const BoundaryEdge& e) {
        return e.component == BoundaryComponent::inner;
    });
}

double Mesh::triangle_area(int t) const {
    const auto& tri = triangles[static_cast<std::size_t>(t)];
    const auto& p0 = vertices[static_cast<std::size_t>(tri[0])];
    const auto& p1 = vertices[static_cast<std::size_t>(tri[1])];
    const auto& p2 = vertices[static_cast<std::size_t>(tri[2])];
    return 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y()));
}

double Mesh::total_area() const {
    double a = 0.0;
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) a += triangle_area(t);
    return a;
}

void validate(const BoundaryWeight& w) {
    if (!(w.outer >= 1.0) || !(w.inner >= 1.0)) {
        throw std::invalid_argument("boundary weight must be >= 1 on every component");
    }
}

Mesh build_mesh(const geometry::DomainSpec& spec, const Resolution& res) {
    geometry::validate(spec);

    if (const auto* d = std::get_if<geometry::Disk>(&spec)) {
        check_polar_resolution(res);
        PolarSpec ps{res.radial, res.angular, true, false, {d->radius, d->radius}};
        std::vector<double> rho(static_cast<std::size_t>(res.angular), 0.0);
        return build_polar(ps, rho, layer_fractions(res.radial, 0.0));
    }
    if (const auto* e = std::get_if<geometry::Ellipse>(&spec)) {
        check_polar_resolution(res);
        PolarSpec ps{res.radial, res.angular, true, false, {e->a, e->b}};
        std::vector<double> rho(static_cast<std::size_t>(res.angular), 0.0);
        return build_polar(ps, rho, layer_fractions(res.radial, 0.0));
    }
    if (const auto* a = std::get_if<geometry::Annulus>(&spec)) {
        check_polar_resolution(res);
        PolarSpec ps{res.radial, res.angular, false, true, {1.0, 1.0}};
        std::vector<double> rho(static_cast<std::size_t>(res.angular), a->r0);
        return build_polar(ps, rho, layer_fractions(res.radial, res.grading));
    }
    if (const auto* o = std::get_if<geometry::OscAnnulus>(&spec)) {
        int na = std::max(res.angular, 16 * o->n_waves);
        na = ((na + 3) / 4) * 4;
        Resolution eff = res;
        eff.angular = na;
        check_polar_resolution(eff);
        PolarSpec ps{res.radial, na, false, true, {1.0, 1.0}};
        // First-quadrant inner radii, mirrored to the other quadrants; the
        // even wave count makes the curve symmetric under both reflections.
        std::vector<double> rho(static_cast<std::size_t>(na));
        const int q = na / 4;
        for (int j = 0; j <= q; ++j) {
            const double th = 2.0 * kPi * j / na;
            rho[static_cast<std::size_t>(j)] = o->r0 + o->eps * std::cos(o->n_waves * th);
        }
        for (int j = 0; j < q; ++j) rho[static_cast<std::size_t>(na / 2 - j)] = rho[static_cast<std::size_t>(j)];
        for (int j = 1; j < na / 2; ++j) rho[static_cast<std::size_t>(na - j)] = rho[static_cast<std::size_t>(j)];
        return build_polar(ps, rho, layer_fractions(res.radial, res.grading));
    }
    const auto& pp = std::get<geometry::ProfilePair>(spec);
    return build_profile_pair(pp, res);
}

double boundary_length(const Mesh& mesh, std::optional<BoundaryComponent> component) {
    double len = 0.0;
    for (const auto& e : mesh.boundary_edges) {
        if (component && e.component != *component) continue;
        len += (mesh.vertices[static_cast<std::size_t>(e.b)] -
                mesh.vertices[static_cast<std::size_t>(e.a)])
                   .norm();
    }
    return len;
}

double suggested_grading(double r0, int n_radial, int n_angular) {
    const double width = 1.0 - r0;
    const double target = 2.0 * kPi * r0 / n_angular;  // inner angular spacing
    const double uniform = width / n_radial;
    if (target >= uniform) return 0.0;
    // First layer width is width * expm1(g/nr) / expm1(g); solve for g.
    return numerics::bisect(
        [&](double g) {
            return width * std::expm1(g / n_radial) / std::expm1(g) - target;
        },
        1e-8, 50.0, 1e-10);
}

void validate_mesh(const Mesh& mesh) {
    const int nv = mesh.n_vertices();
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
        if (!(mesh.triangle_area(t) > 0.0)) {
            throw std::runtime_error("mesh: non-positive triangle area at index " + std::to_string(t));
        }
    }

    // Boundary edges per component chain into one closed cycle each.
    for (int comp = 0; comp < 2; ++comp) {
        std::map<int, int> next;
        for (const auto& e : mesh.boundary_edges) {
            if (static_cast<int>(e.component) != comp) continue;
            if (!next.emplace(e.a, e.b).second) {
                throw std::runtime_error("mesh: boundary vertex repeated inside a component");
            }
        }
        if (next.empty()) continue;
        const int start = next.begin()->first;
        int cur = start;
        std::size_t steps = 0;
        do {
            auto it = next.find(cur);
            if (it == next.end()) throw std::runtime_error("mesh: boundary cycle broken");
            cur = it->second;
            ++steps;
        } while (cur != start && steps <= next.size());
        if (cur != start || steps != next.size()) {
            throw std::runtime_error("mesh: boundary component is not a single closed cycle");
        }
    }

    if (static_cast<int>(mesh.reflect_x.size()) != nv ||
        static_cast<int>(mesh.reflect_y.size()) != nv) {
        throw std::runtime_error("mesh: missing symmetry maps");
    }
    std::set<std::array<int, 3>> tri_set;
    for (auto t : mesh.triangles) {
        std::sort(t.begin(), t.end());
        tri_set.insert(t);
    }
    for (const auto* map : {&mesh.reflect_x, &mesh.reflect_y}) {
        const bool is_x = map == &mesh.reflect_x;
        for (int v = 0; v < nv; ++v) {
            const int w = (*map)[static_cast<std::size_t>(v)];
            if ((*map)[static_cast<std::size_t>(w)] != v) {
                throw std::runtime_error("mesh: symmetry map is not an involution");
            }
            const Eigen::Vector2d expect =
                is_x ? Eigen::Vector2d(-mesh.vertices[static_cast<std::size_t>(v)].x(),
                                       mesh.vertices[static_cast<std::size_t>(v)].y())
                     : Eigen::Vector2d(mesh.vertices[static_cast<std::size_t>(v)].x(),
                                       -mesh.vertices[static_cast<std::size_t>(v)].y());
            if ((mesh.vertices[static_cast<std::size_t>(w)] - expect).lpNorm<Eigen::Infinity>() > 1e-14) {
                throw std::runtime_error("mesh: symmetry map does not match coordinates");
            }
        }
        for (auto t : mesh.triangles) {
            std::array<int, 3> img{(*map)[static_cast<std::size_t>(t[0])],
                                   (*map)[static_cast<std::size_t>(t[1])],
                                   (*map)[static_cast<std::size_t>(t[2])]};
            std::sort(img.begin(), img.end());
            if (!tri_set.count(img)) {
                throw std::runtime_error("mesh: symmetry map does not preserve the triangle set");
            }
        }
    }

    for (const auto& e : mesh.boundary_edges) {
        if (!mesh.on_boundary[static_cast<std::size_t>(e.a)] ||
            !mesh.on_boundary[static_cast<std::size_t>(e.b)]) {
            throw std::runtime_error("mesh: boundary edge vertex not flagged");
        }
    }
    for (int s = 0; s < mesh.n_boundary(); ++s) {
        const int v = mesh.boundary_vertices[static_cast<std::size_t>(s)];
        if (mesh.boundary_index[static_cast<std::size_t>(v)] != s) {
            throw std::runtime_error("mesh: boundary index map inconsistent");
        }
    }
}

}  // namespace steklov
