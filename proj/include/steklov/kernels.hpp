#pragma once

#include <Eigen/Core>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <array>
#include <vector>

#include "steklov/mesh.hpp"

namespace steklov::kernels {

enum class Exec { serial, parallel };

using SpMat = Eigen::SparseMatrix<double>;
using SparseLLT = Eigen::SimplicialLLT<SpMat, Eigen::Lower>;  // AMD fill-reducing ordering
using BandedLLT = Eigen::SimplicialLLT<SpMat, Eigen::Lower, Eigen::NaturalOrdering<int>>;

/// One 3x3 P1 stiffness block per triangle (row-major), from the exact
/// per-triangle cotangent formulas. Throws on triangles with area < 1e-14,
/// naming the triangle index. Results are identical for both execution
/// policies (each slot is computed independently).
std::vector<std::array<double, 9>> element_stiffness_batch(const Mesh& mesh, Exec exec);

/// Dense Schur complement S = K_bb - K_ib^T K_ii^{-1} K_ib; the interior
/// solves are independent per boundary column and parallelize over column
/// chunks without changing the result.
Eigen::MatrixXd schur_complement(const SparseLLT& interior, const SpMat& K_ib, const SpMat& K_bb,
                                 Exec exec);

/// B <- L^{-1} B for sparse lower-triangular L, independently per column.
void lower_solve_inplace(const SpMat& L, Eigen::MatrixXd& B, Exec exec);

/// B <- L^{-T} B for sparse lower-triangular L, independently per column.
void lower_transpose_solve_inplace(const SpMat& L, Eigen::MatrixXd& B, Exec exec);

/// X = A^{-1} B through a sparse factorization, chunked over columns.
Eigen::MatrixXd factored_solve(const SparseLLT& llt, const Eigen::MatrixXd& B, Exec exec);

}  // namespace steklov::kernels
