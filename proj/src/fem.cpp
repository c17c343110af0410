#include "steklov/fem.hpp"

#include <lapacke.h>

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace steklov::fem {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Blocks {
    SpMat K_ii;
    SpMat K_ib;
    SpMat K_bb;
    std::vector<int> interior;  // vertex ids in interior numbering order
};

// Split K into interior/boundary blocks; boundary columns follow the
// cycle order of mesh.boundary_vertices.
Blocks split_blocks(const SpMat& K, const Mesh& mesh) {
    const int n = mesh.n_vertices();
    const int nb = mesh.n_boundary();
    Blocks bl;
    bl.interior.reserve(static_cast<std::size_t>(n - nb));
    std::vector<int> interior_index(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        if (!mesh.on_boundary[static_cast<std::size_t>(v)]) {
            interior_index[static_cast<std::size_t>(v)] = static_cast<int>(bl.interior.size());
            bl.interior.push_back(v);
        }
    }
    const int ni = static_cast<int>(bl.interior.size());

    std::vector<Eigen::Triplet<double>> t_ii, t_ib, t_bb;
    t_ii.reserve(static_cast<std::size_t>(K.nonZeros()));
    for (int col = 0; col < n; ++col) {
        for (SpMat::InnerIterator it(K, col); it; ++it) {
            const int r = static_cast<int>(it.row());
            const int ri = interior_index[static_cast<std::size_t>(r)];
            const int ci = interior_index[static_cast<std::size_t>(col)];
            const int rb = mesh.boundary_index[static_cast<std::size_t>(r)];
            const int cb = mesh.boundary_index[static_cast<std::size_t>(col)];
            if (ri >= 0 && ci >= 0) {
                t_ii.emplace_back(ri, ci, it.value());
            } else if (ri >= 0 && cb >= 0) {
                t_ib.emplace_back(ri, cb, it.value());
            } else if (rb >= 0 && cb >= 0) {
                t_bb.emplace_back(rb, cb, it.value());
            }
        }
    }
    bl.K_ii.resize(ni, ni);
    bl.K_ii.setFromTriplets(t_ii.begin(), t_ii.end());
    bl.K_ib.resize(ni, nb);
    bl.K_ib.setFromTriplets(t_ib.begin(), t_ib.end());
    bl.K_bb.resize(nb, nb);
    bl.K_bb.setFromTriplets(t_bb.begin(), t_bb.end());
    return bl;
}

// k smallest eigenpairs of a dense symmetric matrix; destroys W.
EigenPairs dense_smallest(Eigen::MatrixXd& W, int k) {
    const lapack_int n = static_cast<lapack_int>(W.rows());
    if (k < 1 || k > n) throw std::invalid_argument("eigensolver: bad pair count");
    Eigen::VectorXd vals(n);
    Eigen::MatrixXd vecs(n, k);
    std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * k));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, W.data(), n, 0.0,
                                           0.0, 1, k, 0.0, &found, vals.data(), vecs.data(), n,
                                           isuppz.data());
    if (info != 0 || found < k) {
        throw std::runtime_error("dense symmetric eigensolver did not converge");
    }
    return {vals.head(k), std::move(vecs)};
}

// Small dense symmetric eigensolve (all pairs, ascending), in place.
void dense_full(Eigen::MatrixXd& T, Eigen::VectorXd& vals) {
    const lapack_int m = static_cast<lapack_int>(T.rows());
    vals.resize(m);
    const lapack_int info =
        LAPACKE_dsyev(LAPACK_COL_MAJOR, 'V', 'L', m, T.data(), m, vals.data());
    if (info != 0) throw std::runtime_error("dense symmetric eigensolver did not converge");
}

void normalize_signs(Eigen::MatrixXd& U) {
    for (int j = 0; j < U.cols(); ++j) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < U.rows(); ++i) {
            const double a = std::abs(U(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (U(arg, j) < 0.0) U.col(j) = -U.col(j);
    }
}

// Shift-inverted subspace iteration on the sparse pencil (K, M): smallest k
// eigenvalues through the largest eigenvalues of (K + alpha M)^{-1} M, with
// Rayleigh-Ritz in the (K + alpha M) inner product. Used when the boundary is
// too large for the dense Dirichlet-to-Neumann route.
EigenPairs subspace_smallest(const SpMat& K, const SpMat& M, int k, const SolveOptions& opts) {
    const int n = static_cast<int>(K.rows());
    const double total_mass = Eigen::VectorXd::Ones(n).dot(M * Eigen::VectorXd::Ones(n));
    if (!(total_mass > 0.0)) throw std::runtime_error("steklov_solve: empty boundary mass");
    const double alpha = 4.0 * kPi / total_mass;

    SpMat A = K + alpha * M;
    kernels::SparseLLT llt(A);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("steklov_solve: factorization of the shifted pencil failed");
    }

    const int m = std::min(n, std::max(2 * k + 8, 16));
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, m);
    std::mt19937_64 rng(0x5335u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) {
            if (M.outerIndexPtr()[i] != M.outerIndexPtr()[i + 1]) X(i, j) = unit(rng);
        }
    }

    Eigen::VectorXd theta;
    Eigen::MatrixXd Y;
    for (int it = 0; it < opts.max_iterations; ++it) {
        Y = kernels::factored_solve(llt, M * X, opts.exec);
        // Orthonormalize in the A inner product.
        Eigen::MatrixXd G = Y.transpose() * (A * Y);
        Eigen::LLT<Eigen::MatrixXd> gl(0.5 * (G + G.transpose()));
        if (gl.info() != Eigen::Success) {
            // Restart directions that collapsed.
            for (int j = 0; j < m; ++j) {
                for (int i = 0; i < n; ++i) {
                    if (M.outerIndexPtr()[i] != M.outerIndexPtr()[i + 1]) X(i, j) = unit(rng);
                }
            }
            continue;
        }
        Eigen::MatrixXd Yt = Y.transpose();
        gl.matrixL().solveInPlace(Yt);
        Y = Yt.transpose();

        Eigen::MatrixXd T = Y.transpose() * (M * Y);
        T = 0.5 * (T + T.transpose());
        dense_full(T, theta);  // ascending; largest theta = smallest sigma
        X = Y * T;

        // Pencil residuals of the k + 1 leading Ritz pairs, scaled by the
        // shifted operator so the zero mode is measured sensibly.
        bool ok = theta(m - 1 - k) > 0.0;
        for (int j = 0; j <= k && ok; ++j) {
            const Eigen::VectorXd v = X.col(m - 1 - j);
            const double th = theta(m - 1 - j);
            const double sigma = 1.0 / th - alpha;
            const Eigen::VectorXd kv = K * v;
            const Eigen::VectorXd mv = M * v;
            const double res = (kv - sigma * mv).norm();
            const double scale = (kv + alpha * mv).norm();
            if (res > opts.tolerance * std::max(scale, 1e-300)) ok = false;
        }
        if (it >= 2 && ok) break;
        if (it + 1 == opts.max_iterations) {
            throw std::runtime_error("steklov_solve: subspace iteration did not converge");
        }
    }

    EigenPairs out;
    out.values.resize(k);
    out.vectors.resize(n, k);
    for (int j = 0; j < k; ++j) {
        const double th = theta(m - 1 - j);
        if (!(th > 0.0)) throw std::runtime_error("steklov_solve: lost a boundary mode");
        out.values(j) = 1.0 / th - alpha;
        out.vectors.col(j) = X.col(m - 1 - j) / std::sqrt(th);  // M-orthonormal
    }
    return out;
}

}  // namespace

SpMat assemble_stiffness(const Mesh& mesh, Exec exec) {
    const auto blocks = kernels::element_stiffness_batch(mesh, exec);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(blocks.size() * 9);
    for (std::size_t t = 0; t < blocks.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                trip.emplace_back(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)],
                                  blocks[t][static_cast<std::size_t>(3 * i + j)]);
            }
        }
    }
    SpMat K(mesh.n_vertices(), mesh.n_vertices());
    K.setFromTriplets(trip.begin(), trip.end());
    return K;
}

SpMat assemble_boundary_mass(const Mesh& mesh, const BoundaryWeight& w) {
    validate(w);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(mesh.boundary_edges.size() * 4);
    for (const auto& e : mesh.boundary_edges) {
        const double h = (mesh.vertices[static_cast<std::size_t>(e.b)] -
                          mesh.vertices[static_cast<std::size_t>(e.a)])
                             .norm();
        const double wh = w.on(e.component) * h;
        trip.emplace_back(e.a, e.a, wh / 3.0);
        trip.emplace_back(e.b, e.b, wh / 3.0);
        trip.emplace_back(e.a, e.b, wh / 6.0);
        trip.emplace_back(e.b, e.a, wh / 6.0);
    }
    SpMat M(mesh.n_vertices(), mesh.n_vertices());
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

SpMat boundary_mass_cycle_ordered(const Mesh& mesh, const BoundaryWeight& w) {
    validate(w);
    const int nb = mesh.n_boundary();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(mesh.boundary_edges.size() * 4);
    for (const auto& e : mesh.boundary_edges) {
        const int a = mesh.boundary_index[static_cast<std::size_t>(e.a)];
        const int b = mesh.boundary_index[static_cast<std::size_t>(e.b)];
        const double h = (mesh.vertices[static_cast<std::size_t>(e.b)] -
                          mesh.vertices[static_cast<std::size_t>(e.a)])
                             .norm();
        const double wh = w.on(e.component) * h;
        trip.emplace_back(a, a, wh / 3.0);
        trip.emplace_back(b, b, wh / 3.0);
        trip.emplace_back(a, b, wh / 6.0);
        trip.emplace_back(b, a, wh / 6.0);
    }
    SpMat M(nb, nb);
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

Eigen::MatrixXd schur_reduce(const SpMat& K, const Mesh& mesh, Exec exec) {
    Blocks bl = split_blocks(K, mesh);
    if (bl.K_ii.rows() == 0) {
        return Eigen::MatrixXd(bl.K_bb);
    }
    kernels::SparseLLT llt(bl.K_ii);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("schur_reduce: interior factorization failed (disconnected or degenerate mesh)");
    }
    return kernels::schur_complement(llt, bl.K_ib, bl.K_bb, exec);
}

EigenPairs solve_generalized(const Eigen::MatrixXd& S, const SpMat& M, int k, Exec exec) {
    const int n = static_cast<int>(S.rows());
    if (M.rows() != n || M.cols() != n) {
        throw std::invalid_argument("solve_generalized: dimension mismatch");
    }
    if (k < 1 || k > n) throw std::invalid_argument("solve_generalized: bad pair count");
    kernels::BandedLLT lltM(M);
    if (lltM.info() != Eigen::Success) {
        throw std::runtime_error("solve_generalized: boundary mass is not positive definite");
    }
    const SpMat L = lltM.matrixL();
    Eigen::MatrixXd W = S;
    kernels::lower_solve_inplace(L, W, exec);
    W.transposeInPlace();
    kernels::lower_solve_inplace(L, W, exec);
    EigenPairs pairs = dense_smallest(W, k);
    kernels::lower_transpose_solve_inplace(L, pairs.vectors, exec);
    return pairs;
}

EigenPairs solve_generalized(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M, int k, Exec exec) {
    return solve_generalized(S, SpMat(M.sparseView()), k, exec);
}

Eigen::VectorXd recover_interior(const SpMat& K, const Mesh& mesh, const Eigen::VectorXd& u_b) {
    if (u_b.size() != mesh.n_boundary()) {
        throw std::invalid_argument("recover_interior: boundary vector size mismatch");
    }
    Blocks bl = split_blocks(K, mesh);
    Eigen::VectorXd full(mesh.n_vertices());
    for (int s = 0; s < mesh.n_boundary(); ++s) {
        full(mesh.boundary_vertices[static_cast<std::size_t>(s)]) = u_b(s);
    }
    if (bl.K_ii.rows() > 0) {
        kernels::SparseLLT llt(bl.K_ii);
        if (llt.info() != Eigen::Success) {
            throw std::runtime_error("recover_interior: interior factorization failed");
        }
        const Eigen::VectorXd u_i = llt.solve(-(bl.K_ib * u_b));
        for (std::size_t i = 0; i < bl.interior.size(); ++i) {
            full(bl.interior[i]) = u_i(static_cast<Eigen::Index>(i));
        }
    }
    return full;
}

SteklovSolution steklov_solve(const Mesh& mesh, const BoundaryWeight& w, int k,
                              const SolveOptions& opts) {
    validate(w);
    const int nb = mesh.n_boundary();
    if (k < 1 || k > nb) {
        throw std::invalid_argument("steklov_solve: need 1 <= k <= boundary vertex count");
    }

    const SpMat K = assemble_stiffness(mesh, opts.exec);
    SteklovSolution sol;
    sol.mesh = &mesh;
    sol.weight = w;

    if (nb > opts.dense_cutoff) {
        const SpMat M = assemble_boundary_mass(mesh, w);
        EigenPairs pairs = subspace_smallest(K, M, k, opts);
        sol.eigenvalues = std::move(pairs.values);
        sol.eigenvectors = std::move(pairs.vectors);
        normalize_signs(sol.eigenvectors);
        return sol;
    }

    Blocks bl = split_blocks(K, mesh);
    Eigen::MatrixXd S;
    kernels::SparseLLT llt;
    const bool has_interior = bl.K_ii.rows() > 0;
    if (has_interior) {
        llt.compute(bl.K_ii);
        if (llt.info() != Eigen::Success) {
            throw std::runtime_error("steklov_solve: interior factorization failed");
        }
        S = kernels::schur_complement(llt, bl.K_ib, bl.K_bb, opts.exec);
    } else {
        S = Eigen::MatrixXd(bl.K_bb);
    }

    const SpMat Mb = boundary_mass_cycle_ordered(mesh, w);
    EigenPairs pairs = solve_generalized(S, Mb, k, opts.exec);

    sol.eigenvalues = std::move(pairs.values);
    sol.eigenvectors.resize(mesh.n_vertices(), k);
    Eigen::MatrixXd interior;
    if (has_interior) {
        interior = kernels::factored_solve(llt, Eigen::MatrixXd(-(bl.K_ib * pairs.vectors)),
                                           opts.exec);
    }
    for (int j = 0; j < k; ++j) {
        for (int s = 0; s < nb; ++s) {
            sol.eigenvectors(mesh.boundary_vertices[static_cast<std::size_t>(s)], j) =
                pairs.vectors(s, j);
        }
        if (has_interior) {
            for (std::size_t i = 0; i < bl.interior.size(); ++i) {
                sol.eigenvectors(bl.interior[i], j) = interior(static_cast<Eigen::Index>(i), j);
            }
        }
    }
    normalize_signs(sol.eigenvectors);
    return sol;
}

}  // namespace steklov::fem
