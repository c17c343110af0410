#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

enum class BoundaryComponent : int { outer = 0, inner = 1 };

struct BoundaryEdge {
    int a = -1;  // oriented along the component cycle
    int b = -1;
    BoundaryComponent component = BoundaryComponent::outer;
};

/// Conforming triangulation with labeled boundary cycles and exact
/// reflection-symmetry vertex maps. Structured constructions mirror the
/// first-quadrant coordinates, so the symmetry permutations match vertex
/// coordinates bitwise.
struct Mesh {
    std::vector<Eigen::Vector2d> vertices;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<int> reflect_x;  // vertex permutation for (x, y) -> (-x, y)
    std::vector<int> reflect_y;  // vertex permutation for (x, y) -> (x, -y)
    std::vector<std::uint8_t> on_boundary;
    std::vector<int> boundary_vertices;  // cycle-ordered, outer cycle first
    std::vector<int> boundary_index;     // vertex -> slot in boundary_vertices, else -1

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_boundary() const { return static_cast<int>(boundary_vertices.size()); }
    int n_interior() const { return n_vertices() - n_boundary(); }
    bool has_inner_component() const;
    double triangle_area(int t) const;
    double total_area() const;
};

/// Weight of the weighted Steklov boundary condition, one value per
/// boundary component, both >= 1.
struct BoundaryWeight {
    double outer = 1.0;
    double inner = 1.0;

    double on(BoundaryComponent c) const {
        return c == BoundaryComponent::outer ? outer : inner;
    }
};

void validate(const BoundaryWeight& w);

struct Resolution {
    int radial = 64;    // rings (rows for profile-pair domains)
    int angular = 256;  // divisible by 4 (columns for profile-pair domains)
    double grading = 0.0;  // > 0 clusters radial layers toward the inner boundary
};

/// Structured mapped mesh of the domain. Disk: polar rings with a center fan;
/// ellipse: the disk mesh scaled by (a, b); annulus: polar grid between r0 and
/// 1; oscillating annulus: polar grid between rho(theta) and 1 with
/// n_angular >= 16 n_waves (raised automatically); profile pair: tensor grid
/// in x with y scaled by f(x).
Mesh build_mesh(const geometry::DomainSpec& spec, const Resolution& res);

/// Sum of boundary edge lengths, optionally restricted to one component.
double boundary_length(const Mesh& mesh, std::optional<BoundaryComponent> component = {});

/// Grading strength making the first radial layer of an annular mesh
/// comparable to the inner angular spacing; 0 when uniform already is.
double suggested_grading(double r0, int n_radial, int n_angular);

/// Throws std::runtime_error describing the first violated mesh invariant.
void validate_mesh(const Mesh& mesh);

}  // namespace steklov
