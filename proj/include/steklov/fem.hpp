#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "steklov/kernels.hpp"
#include "steklov/mesh.hpp"

namespace steklov::fem {

using kernels::Exec;
using kernels::SpMat;

/// P1 stiffness matrix over all mesh vertices: K_ij = integral of
/// grad(phi_i) . grad(phi_j). Symmetric positive semidefinite with the
/// constants in its kernel.
SpMat assemble_stiffness(const Mesh& mesh, Exec exec = Exec::parallel);

/// Weighted boundary mass over all mesh vertices: per boundary edge of
/// length h and weight w the 2x2 block w h [[1/3, 1/6], [1/6, 1/3]].
SpMat assemble_boundary_mass(const Mesh& mesh, const BoundaryWeight& w);

/// Boundary mass restricted to the cycle-ordered boundary vertex numbering.
SpMat boundary_mass_cycle_ordered(const Mesh& mesh, const BoundaryWeight& w);

/// Discrete Dirichlet-to-Neumann matrix on the cycle-ordered boundary
/// vertices: S = K_bb - K_bi K_ii^{-1} K_ib, interior solves by sparse
/// Cholesky with fill-reducing ordering.
Eigen::MatrixXd schur_reduce(const SpMat& K, const Mesh& mesh, Exec exec = Exec::parallel);

struct EigenPairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // M-orthonormal columns
};

/// k smallest eigenpairs of S u = sigma M u for symmetric PSD S and PD M:
/// M = L L^T by Cholesky, dense symmetric eigensolve of L^{-1} S L^{-T}
/// (tridiagonalization based), back-transformed.
EigenPairs solve_generalized(const Eigen::MatrixXd& S, const SpMat& M, int k,
                             Exec exec = Exec::parallel);
EigenPairs solve_generalized(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M, int k,
                             Exec exec = Exec::parallel);

/// Harmonic extension of boundary data: solves K_ii u_i = -K_ib u_b and
/// returns the full nodal vector. u_b is indexed like mesh.boundary_vertices.
Eigen::VectorXd recover_interior(const SpMat& K, const Mesh& mesh, const Eigen::VectorXd& u_b);

struct SteklovSolution {
    Eigen::VectorXd eigenvalues;  // ascending, first entry ~ 0
    Eigen::MatrixXd eigenvectors;  // n_vertices x k full nodal vectors, traces M-orthonormal
    const Mesh* mesh = nullptr;
    BoundaryWeight weight;
};

struct SolveOptions {
    Exec exec = Exec::parallel;
    /// Boundary sizes up to this use the dense Dirichlet-to-Neumann route;
    /// larger problems fall back to shift-inverted subspace iteration on the
    /// sparse pencil (same contract, chosen for large oscillating meshes).
    int dense_cutoff = 3000;
    int max_iterations = 400;
    double tolerance = 1e-10;
};

/// Full weighted Steklov solve on a mesh: k smallest eigenpairs including the
/// zero mode, eigenvectors extended harmonically into the interior.
SteklovSolution steklov_solve(const Mesh& mesh, const BoundaryWeight& w, int k,
                              const SolveOptions& opts = {});

}  // namespace steklov::fem
