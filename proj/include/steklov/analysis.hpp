#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/mesh.hpp"

namespace steklov::analysis {

/// (u^T K u) / (u_b^T M u_b) with matrices assembled on demand.
double rayleigh_quotient(const Mesh& mesh, const BoundaryWeight& w, const Eigen::VectorXd& u);

/// Zero-level polyline of a nodal vector.
struct NodalCurve {
    std::vector<Eigen::Vector2d> points;  // closed curves repeat the first point last
    bool closed = false;
    bool touches_boundary = false;
    int boundary_contacts = 0;
    int winding = 0;  // signed winding around the origin; meaningful when closed
    double mean_radius = 0.0;    // arclength-weighted
    double radius_stddev = 0.0;
    double length = 0.0;
};

/// Marching-triangles extraction: linear interpolation along sign-changing
/// edges, segments chained through shared edge crossings into maximal
/// polylines. Vertices that are exactly zero are shifted by +1e-13 |u|_inf
/// before sign evaluation.
std::vector<NodalCurve> extract_nodal_set(const Mesh& mesh, const Eigen::VectorXd& u);

/// Connected components of same-sign triangles (sign by vertex majority).
int count_nodal_domains(const Mesh& mesh, const Eigen::VectorXd& u);

enum class SymClass { EE, OE, EO, OO, mixed };

std::string to_string(SymClass c);

struct SymmetryClass {
    SymClass cls = SymClass::mixed;
    // Relative reflection residuals in the order EE, OE, EO, OO.
    std::array<double, 4> residuals{};
};

/// Classifies one nodal vector against the mesh reflection maps; the first
/// letter refers to x-parity, the second to y-parity (OE = odd in x, even in
/// y). Relative residual threshold 1e-6; mixed when none or several match.
SymmetryClass classify_symmetry(const Mesh& mesh, const Eigen::VectorXd& u,
                                double threshold = 1e-6);

/// Classifies every eigenvector of a solution. Eigenvalues within 1e-3
/// relative are treated as possible pairs and rotated inside their 2D
/// eigenspace to minimize the residuals before classification.
std::vector<SymmetryClass> classify_solution(const fem::SteklovSolution& sol,
                                             double pairing_threshold = 1e-3,
                                             double class_threshold = 1e-6);

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation;  // ">=" or "<="
    bool applicable = true;
    bool holds = false;
    bool strict = false;  // holds with margin beyond the discretization tolerance
    std::string note;
};

struct BoundReport {
    std::string domain;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double tolerance = 0.0;
    std::vector<BoundCheck> checks;

    bool all_hold() const;
};

/// Evaluates every applicable eigenvalue inequality for the domain: the
/// profile lower bound on sigma_1, per-eigenpair parity bounds (odd-in-y
/// pairs against 1/sup f, odd-in-x against 1/sup g), the Weinstock upper
/// bound for simply connected domains, and the coordinate Rayleigh quotient
/// upper bound.
BoundReport check_bounds(const geometry::DomainSpec& spec, const fem::SteklovSolution& sol,
                         double tolerance = 0.01);

/// Relative gap (sigma2 - sigma1) / sigma1 between the first two positive
/// eigenvalues; needs at least three computed eigenvalues.
double spectral_gap(const fem::SteklovSolution& sol);

struct OscillationRow {
    double eps = 0.0;
    int n_waves = 0;
    int n_angular = 0;
    double sigma1 = 0.0;
    double target = 0.0;
    double rel_error = 0.0;
    bool nodal_closed = false;
    int winding = 0;
    int boundary_contacts = 0;
    double mean_radius = 0.0;
    double radius_stddev = 0.0;
};

/// For each amplitude: build the oscillating annulus tuned to inner weight
/// 1/r0, solve the plain Steklov problem, compare sigma_1 to the smallest
/// positive closed-form eigenvalue of the weighted annulus, and record the
/// nodal curve of u_1. eps = 0 rows solve the plain annulus against the
/// unweighted closed form. Entries may run concurrently (STEKLOV_THREADS).
std::vector<OscillationRow> oscillation_convergence_study(double r0,
                                                          const std::vector<double>& eps_list,
                                                          const Resolution& res, int k = 4,
                                                          const fem::SolveOptions& opts = {});

struct EllipseRow {
    double a = 0.0;
    double b = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double rel_gap = 0.0;
    SymClass class1 = SymClass::mixed;
    int nodal_domains1 = 0;
};

/// Aspect-ratio family sweep on ellipses with fixed b.
std::vector<EllipseRow> ellipse_family_sweep(const std::vector<double>& aspects, double b,
                                             const Resolution& res, int k = 4,
                                             const fem::SolveOptions& opts = {});

/// Sweep concurrency cap from STEKLOV_THREADS (0 or unset = auto).
int sweep_parallelism(int entries);

}  // namespace steklov::analysis
