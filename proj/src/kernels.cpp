#include "steklov/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace steklov::kernels {

namespace {

inline void stiffness_block(const Mesh& mesh, int t, std::array<double, 9>& out, int& bad) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    const auto& p0 = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const auto& p1 = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const auto& p2 = mesh.vertices[static_cast<std::size_t>(tri[2])];
    const double b0 = p1.y() - p2.y();
    const double b1 = p2.y() - p0.y();
    const double b2 = p0.y() - p1.y();
    const double c0 = p2.x() - p1.x();
    const double c1 = p0.x() - p2.x();
    const double c2 = p1.x() - p0.x();
    const double area2 = c2 * b1 - c1 * b2;  // twice the signed area
    if (!(area2 > 2e-14)) {
        bad = t;
        return;
    }
    const double scale = 1.0 / (2.0 * area2);
    const double b[3] = {b0, b1, b2};
    const double c[3] = {c0, c1, c2};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            out[static_cast<std::size_t>(3 * i + j)] = scale * (b[i] * b[j] + c[i] * c[j]);
        }
    }
}

}  // namespace

std::vector<std::array<double, 9>> element_stiffness_batch(const Mesh& mesh, Exec exec) {
    const int nt = static_cast<int>(mesh.triangles.size());
    std::vector<std::array<double, 9>> blocks(static_cast<std::size_t>(nt));
    std::atomic<int> degenerate{-1};
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int t = 0; t < nt; ++t) {
            int bad = -1;
            stiffness_block(mesh, t, blocks[static_cast<std::size_t>(t)], bad);
            if (bad >= 0) degenerate.store(bad);
        }
    } else {
        for (int t = 0; t < nt; ++t) {
            int bad = -1;
            stiffness_block(mesh, t, blocks[static_cast<std::size_t>(t)], bad);
            if (bad >= 0) degenerate.store(bad);
        }
    }
    if (degenerate.load() >= 0) {
        throw std::runtime_error("assemble_stiffness: degenerate triangle at index " +
                                 std::to_string(degenerate.load()));
    }
    return blocks;
}

Eigen::MatrixXd schur_complement(const SparseLLT& interior, const SpMat& K_ib, const SpMat& K_bb,
                                 Exec exec) {
    const int nb = static_cast<int>(K_bb.cols());
    const int ni = static_cast<int>(K_ib.rows());
    Eigen::MatrixXd S(nb, nb);
    if (ni == 0) {
        S = Eigen::MatrixXd(K_bb);
        return S;
    }
    const int chunk = 16;
    const int n_chunks = (nb + chunk - 1) / chunk;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int c = 0; c < n_chunks; ++c) {
        const int c0 = c * chunk;
        const int m = std::min(chunk, nb - c0);
        const Eigen::MatrixXd rhs = Eigen::MatrixXd(K_ib.middleCols(c0, m));
        const Eigen::MatrixXd x = interior.solve(rhs);
        S.middleCols(c0, m) = Eigen::MatrixXd(K_bb.middleCols(c0, m)) - K_ib.transpose() * x;
    }
    return S;
}

void lower_solve_inplace(const SpMat& L, Eigen::MatrixXd& B, Exec exec) {
    const int n = static_cast<int>(L.cols());
    const int m = static_cast<int>(B.cols());
    const double* lv = L.valuePtr();
    const int* li = L.innerIndexPtr();
    const int* lp = L.outerIndexPtr();
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int j = 0; j < m; ++j) {
        double* x = B.col(j).data();
        for (int c = 0; c < n; ++c) {
            const int p0 = lp[c];
            const int p1 = lp[c + 1];
            const double xc = x[c] / lv[p0];  // diagonal entry comes first
            x[c] = xc;
            for (int p = p0 + 1; p < p1; ++p) x[li[p]] -= lv[p] * xc;
        }
    }
}

void lower_transpose_solve_inplace(const SpMat& L, Eigen::MatrixXd& B, Exec exec) {
    const int n = static_cast<int>(L.cols());
    const int m = static_cast<int>(B.cols());
    const double* lv = L.valuePtr();
    const int* li = L.innerIndexPtr();
    const int* lp = L.outerIndexPtr();
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int j = 0; j < m; ++j) {
        double* x = B.col(j).data();
        for (int c = n - 1; c >= 0; --c) {
            const int p0 = lp[c];
            const int p1 = lp[c + 1];
            double acc = x[c];
            for (int p = p0 + 1; p < p1; ++p) acc -= lv[p] * x[li[p]];
            x[c] = acc / lv[p0];
        }
    }
}

Eigen::MatrixXd factored_solve(const SparseLLT& llt, const Eigen::MatrixXd& B, Exec exec) {
    const int m = static_cast<int>(B.cols());
    Eigen::MatrixXd X(B.rows(), m);
    int chunk = 8;
#ifdef _OPENMP
    if (exec == Exec::parallel) {
        chunk = std::max(1, (m + omp_get_max_threads() - 1) / omp_get_max_threads());
        chunk = std::min(chunk, 8);
    }
#endif
    const int n_chunks = (m + chunk - 1) / chunk;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int c = 0; c < n_chunks; ++c) {
        const int c0 = c * chunk;
        const int w = std::min(chunk, m - c0);
        X.middleCols(c0, w) = llt.solve(B.middleCols(c0, w));
    }
    return X;
}

}  // namespace steklov::kernels
