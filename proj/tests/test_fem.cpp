#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "steklov/analytic.hpp"
#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/mesh.hpp"

using namespace steklov;
using kernels::Exec;
using doctest::Approx;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Unit right triangle, every vertex on the boundary.
Mesh single_triangle() {
    Mesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    m.triangles = {{0, 1, 2}};
    m.boundary_edges = {{0, 1, BoundaryComponent::outer},
                        {1, 2, BoundaryComponent::outer},
                        {2, 0, BoundaryComponent::outer}};
    m.boundary_vertices = {0, 1, 2};
    m.boundary_index = {0, 1, 2};
    m.on_boundary = {1, 1, 1};
    m.reflect_x = {0, 1, 2};
    m.reflect_y = {0, 1, 2};
    return m;
}

// Unit edge as the only boundary of a two-triangle square.
Mesh unit_square() {
    Mesh m;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    m.triangles = {{0, 1, 2}, {0, 2, 3}};
    m.boundary_edges = {{0, 1, BoundaryComponent::outer},
                        {1, 2, BoundaryComponent::outer},
                        {2, 3, BoundaryComponent::outer},
                        {3, 0, BoundaryComponent::outer}};
    m.boundary_vertices = {0, 1, 2, 3};
    m.boundary_index = {0, 1, 2, 3};
    m.on_boundary = {1, 1, 1, 1};
    m.reflect_x = {0, 1, 2, 3};
    m.reflect_y = {0, 1, 2, 3};
    return m;
}

double sigma_err(const fem::SteklovSolution& sol, int i, double expect) {
    return std::abs(sol.eigenvalues(i) - expect) / expect;
}

}  // namespace

TEST_CASE("element stiffness of the unit right triangle") {
    const Mesh m = single_triangle();
    const Eigen::MatrixXd K = Eigen::MatrixXd(fem::assemble_stiffness(m));
    Eigen::MatrixXd expect(3, 3);
    expect << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
    CHECK((K - expect).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("stiffness kernel contains the constants") {
    const Mesh mesh = build_mesh(geometry::Ellipse{2.0, 1.0}, Resolution{12, 64});
    const auto K = fem::assemble_stiffness(mesh);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.n_vertices());
    CHECK((K * ones).lpNorm<Eigen::Infinity>() < 1e-12);
    // Row sums vanish.
    CHECK((K.transpose() * ones).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("stiffness is translation invariant") {
    Mesh mesh = build_mesh(geometry::Disk{1.0}, Resolution{8, 32});
    const Eigen::MatrixXd K1 = Eigen::MatrixXd(fem::assemble_stiffness(mesh));
    for (auto& v : mesh.vertices) v += Eigen::Vector2d(0.37, -1.25);
    const Eigen::MatrixXd K2 = Eigen::MatrixXd(fem::assemble_stiffness(mesh));
    CHECK((K1 - K2).lpNorm<Eigen::Infinity>() < 1e-12 * K1.lpNorm<Eigen::Infinity>() + 1e-12);
}

TEST_CASE("degenerate triangles are rejected with their index") {
    Mesh m = single_triangle();
    m.vertices[2] = {2.0, 0.0};  // collinear
    CHECK_THROWS_WITH_AS((void)fem::assemble_stiffness(m),
                         "assemble_stiffness: degenerate triangle at index 0",
                         std::runtime_error);
}

TEST_CASE("boundary mass blocks") {
    const Mesh m = single_triangle();
    // Only the bottom edge (0,1) has unit length; check its block on a
    // one-edge mesh variant.
    Mesh one = m;
    one.boundary_edges = {{0, 1, BoundaryComponent::outer}};
    const Eigen::MatrixXd M = Eigen::MatrixXd(fem::assemble_boundary_mass(one, {}));
    CHECK(M(0, 0) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(M(1, 1) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(M(0, 1) == Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(M(1, 0) == Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(M(2, 2) == 0.0);
}

TEST_CASE("boundary mass total equals weighted boundary length") {
    const Mesh mesh = build_mesh(geometry::Annulus{0.5}, Resolution{8, 128});
    const BoundaryWeight w{1.0, 3.0};
    const auto M = fem::assemble_boundary_mass(mesh, w);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.n_vertices());
    const double total = ones.dot(M * ones);
    const double expect = boundary_length(mesh, BoundaryComponent::outer) * 1.0 +
                          boundary_length(mesh, BoundaryComponent::inner) * 3.0;
    CHECK(total == Approx(expect).epsilon(1e-12));

    // Fine disk: total mass approaches the circumference.
    const Mesh disk = build_mesh(geometry::Disk{1.0}, Resolution{8, 512});
    const auto Md = fem::assemble_boundary_mass(disk, {});
    const Eigen::VectorXd od = Eigen::VectorXd::Ones(disk.n_vertices());
    CHECK(od.dot(Md * od) == Approx(2.0 * kPi).epsilon(1e-3));
}

TEST_CASE("doubling one component weight doubles its blocks exactly") {
    const Mesh mesh = build_mesh(geometry::Annulus{0.5}, Resolution{4, 32});
    const auto M1 = fem::assemble_boundary_mass(mesh, {1.0, 1.5});
    const auto M2 = fem::assemble_boundary_mass(mesh, {1.0, 3.0});
    for (int v : mesh.boundary_vertices) {
        const bool inner = mesh.vertices[static_cast<std::size_t>(v)].norm() < 0.75;
        for (kernels::SpMat::InnerIterator i1(M1, v), i2(M2, v); i1; ++i1, ++i2) {
            if (inner) {
                CHECK(i2.value() == 2.0 * i1.value());
            } else {
                CHECK(i2.value() == i1.value());
            }
        }
    }
}

TEST_CASE("weights below one are rejected") {
    CHECK_THROWS_AS(validate(BoundaryWeight{0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(BoundaryWeight{1.0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(validate(BoundaryWeight{1.0, 1.0}));
}

TEST_CASE("schur complement without interior vertices is K_bb") {
    const Mesh m = unit_square();
    const auto K = fem::assemble_stiffness(m);
    const Eigen::MatrixXd S = fem::schur_reduce(K, m);
    CHECK((S - Eigen::MatrixXd(K)).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("schur complement: symmetry, kernel, and energy identity") {
    const Mesh mesh = build_mesh(geometry::Annulus{0.4}, Resolution{12, 64});
    const auto K = fem::assemble_stiffness(mesh);
    const Eigen::MatrixXd S = fem::schur_reduce(K, mesh);
    CHECK((S - S.transpose()).lpNorm<Eigen::Infinity>() < 1e-10);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(S.rows());
    CHECK((S * ones).lpNorm<Eigen::Infinity>() < 1e-10);

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd ub(S.rows());
    for (int i = 0; i < ub.size(); ++i) ub(i) = unit(rng);
    const Eigen::VectorXd full = fem::recover_interior(K, mesh, ub);
    const double energy = full.dot(K * full);
    const double schur_energy = ub.dot(S * ub);
    CHECK(schur_energy == Approx(energy).epsilon(1e-10));
}

TEST_CASE("solve_generalized on explicit matrices") {
    Eigen::MatrixXd S = Eigen::Vector3d(0.0, 1.0, 2.0).asDiagonal();
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(3, 3);
    const auto pairs = fem::solve_generalized(S, M, 3);
    CHECK(pairs.values(0) == Approx(0.0).epsilon(1e-14));
    CHECK(pairs.values(1) == Approx(1.0).epsilon(1e-14));
    CHECK(pairs.values(2) == Approx(2.0).epsilon(1e-14));
    for (int j = 0; j < 3; ++j) {
        Eigen::VectorXd v = pairs.vectors.col(j).cwiseAbs();
        CHECK(v.maxCoeff() == Approx(1.0).epsilon(1e-12));
        CHECK(v.sum() == Approx(1.0).epsilon(1e-10));
    }

    // Scaling M scales the eigenvalues inversely.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::MatrixXd A(5, 5);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) A(i, j) = unit(rng);
    }
    Eigen::MatrixXd SS = A * A.transpose();
    const auto base = fem::solve_generalized(SS, Eigen::MatrixXd(Eigen::MatrixXd::Identity(5, 5)), 5);
    const auto quarter =
        fem::solve_generalized(SS, Eigen::MatrixXd(4.0 * Eigen::MatrixXd::Identity(5, 5)), 5);
    for (int j = 0; j < 5; ++j) {
        CHECK(quarter.values(j) == Approx(base.values(j) / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("solve_generalized residuals on a random definite pencil") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int n = 50;
    Eigen::MatrixXd A(n, n), B(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            A(i, j) = unit(rng);
            B(i, j) = unit(rng);
        }
    }
    Eigen::MatrixXd S = A * A.transpose();
    Eigen::MatrixXd M = B * B.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    const int k = 8;
    const auto pairs = fem::solve_generalized(S, M, k);
    for (int j = 0; j < k; ++j) {
        const Eigen::VectorXd u = pairs.vectors.col(j);
        const double res = (S * u - pairs.values(j) * (M * u)).norm() / u.norm();
        CHECK(res < 1e-9);
        for (int i = 0; i <= j; ++i) {
            const double dot = pairs.vectors.col(i).dot(M * u);
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-8);
        }
    }

    // Indefinite M is rejected.
    Eigen::MatrixXd bad = -Eigen::MatrixXd::Identity(n, n);
    CHECK_THROWS_AS((void)fem::solve_generalized(S, bad, 2), std::runtime_error);
}

TEST_CASE("recover_interior: constants, linears, energy minimality") {
    const Mesh mesh = build_mesh(geometry::Disk{1.0}, Resolution{10, 48});
    const auto K = fem::assemble_stiffness(mesh);
    const int nb = mesh.n_boundary();

    const Eigen::VectorXd cb = Eigen::VectorXd::Constant(nb, 3.25);
    const Eigen::VectorXd cfull = fem::recover_interior(K, mesh, cb);
    CHECK((cfull.array() - 3.25).abs().maxCoeff() < 1e-10);

    Eigen::VectorXd xb(nb);
    for (int s = 0; s < nb; ++s) {
        xb(s) = mesh.vertices[static_cast<std::size_t>(mesh.boundary_vertices[static_cast<std::size_t>(s)])].x();
    }
    const Eigen::VectorXd xfull = fem::recover_interior(K, mesh, xb);
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        CHECK(xfull(v) == Approx(mesh.vertices[static_cast<std::size_t>(v)].x()).epsilon(1e-10).scale(1.0));
    }

    // The harmonic extension minimizes the energy among extensions.
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd perturbed = xfull;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        if (!mesh.on_boundary[static_cast<std::size_t>(v)]) perturbed(v) += 0.05 * unit(rng);
    }
    CHECK(xfull.dot(K * xfull) < perturbed.dot(K * perturbed));
}

TEST_CASE("disk spectrum: 0, 1, 1, 2, 2 and solution invariants") {
    const Mesh mesh = build_mesh(geometry::Disk{1.0}, Resolution{32, 128});
    const auto sol = fem::steklov_solve(mesh, {}, 5);
    CHECK(std::abs(sol.eigenvalues(0)) < 1e-8);
    CHECK(sigma_err(sol, 1, 1.0) < 0.01);
    CHECK(sigma_err(sol, 2, 1.0) < 0.01);
    CHECK(sigma_err(sol, 3, 2.0) < 0.02);
    CHECK(sigma_err(sol, 4, 2.0) < 0.02);

    // Zero mode is constant.
    const Eigen::VectorXd u0 = sol.eigenvectors.col(0);
    const double mean = u0.mean();
    CHECK((u0.array() - mean).abs().maxCoeff() < 1e-6 * std::abs(mean));

    // Boundary traces are M-orthonormal.
    const auto M = fem::assemble_boundary_mass(mesh, {});
    for (int i = 0; i < 5; ++i) {
        for (int j = i; j < 5; ++j) {
            const double dot = sol.eigenvectors.col(i).dot(M * sol.eigenvectors.col(j));
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-8);
        }
    }

    // Discrete harmonicity: interior residual of K u vanishes.
    const auto K = fem::assemble_stiffness(mesh);
    for (int j = 0; j < 5; ++j) {
        const Eigen::VectorXd r = K * sol.eigenvectors.col(j);
        double interior_res = 0.0;
        for (int v = 0; v < mesh.n_vertices(); ++v) {
            if (!mesh.on_boundary[static_cast<std::size_t>(v)]) {
                interior_res = std::max(interior_res, std::abs(r(v)));
            }
        }
        CHECK(interior_res < 1e-8 * (1.0 + sol.eigenvalues(j)));
    }

    // Rayleigh quotient consistency.
    for (int j = 1; j < 5; ++j) {
        const Eigen::VectorXd u = sol.eigenvectors.col(j);
        const double quot = u.dot(K * u) / u.dot(M * u);
        CHECK(quot == Approx(sol.eigenvalues(j)).epsilon(1e-9));
    }

    // Min-max sanity against the coordinate traces.
    Eigen::VectorXd x(mesh.n_vertices()), y(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        x(v) = mesh.vertices[static_cast<std::size_t>(v)].x();
        y(v) = mesh.vertices[static_cast<std::size_t>(v)].y();
    }
    CHECK(sol.eigenvalues(1) <= x.dot(K * x) / x.dot(M * x) + 1e-12);
    CHECK(sol.eigenvalues(1) <= y.dot(K * y) / y.dot(M * y) + 1e-12);
}

TEST_CASE("weighted annulus agrees with the closed forms") {
    const double r0 = 0.5;
    const Mesh mesh = build_mesh(geometry::Annulus{r0}, Resolution{64, 256});
    const auto sol = fem::steklov_solve(mesh, {1.0, 1.0 / r0}, 7);
    const auto flat = analytic::annulus_spectrum(r0, 1.0 / r0, 4, 7).values(7);
    for (int i = 1; i < 7; ++i) {
        CHECK(std::abs(sol.eigenvalues(i) - flat[static_cast<std::size_t>(i)]) /
                  flat[static_cast<std::size_t>(i)] <
              0.01);
    }
}

TEST_CASE("unweighted annulus validates the generic-weight quadratic") {
    const double r0 = 0.5;
    const Mesh mesh = build_mesh(geometry::Annulus{r0}, Resolution{48, 192});
    const auto sol = fem::steklov_solve(mesh, {1.0, 1.0}, 5);
    const auto flat = analytic::annulus_spectrum(r0, 1.0, 4, 5).values(5);
    for (int i = 1; i < 5; ++i) {
        CHECK(std::abs(sol.eigenvalues(i) - flat[static_cast<std::size_t>(i)]) /
                  flat[static_cast<std::size_t>(i)] <
              0.01);
    }
}

TEST_CASE("disk eigenvalue convergence is second order") {
    double prev_err = -1.0;
    int level = 0;
    for (const auto& [nr, na] : {std::pair{16, 64}, std::pair{32, 128}, std::pair{64, 256}}) {
        const Mesh mesh = build_mesh(geometry::Disk{1.0}, Resolution{nr, na});
        const auto sol = fem::steklov_solve(mesh, {}, 2);
        const double err = std::abs(sol.eigenvalues(1) - 1.0);
        if (level > 0) CHECK(prev_err / err >= 3.0);
        prev_err = err;
        ++level;
    }
}

TEST_CASE("eigenvalues scale exactly like 1/length") {
    const double t = 3.0;
    const Mesh mesh = build_mesh(geometry::Ellipse{2.0, 1.0}, Resolution{24, 96});
    Mesh scaled = mesh;
    for (auto& v : scaled.vertices) v *= t;
    const auto a = fem::steklov_solve(mesh, {}, 5);
    const auto b = fem::steklov_solve(scaled, {}, 5);
    CHECK(std::abs(b.eigenvalues(0)) < 1e-10);
    for (int i = 1; i < 5; ++i) {
        CHECK(t * b.eigenvalues(i) == Approx(a.eigenvalues(i)).epsilon(1e-12));
    }
}

TEST_CASE("subspace route matches the dense route") {
    const Mesh mesh = build_mesh(geometry::Annulus{0.3}, Resolution{16, 128});
    const auto dense = fem::steklov_solve(mesh, {1.0, 2.0}, 6);
    fem::SolveOptions opts;
    opts.dense_cutoff = 1;  // force the iterative path
    const auto iter = fem::steklov_solve(mesh, {1.0, 2.0}, 6, opts);
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(iter.eigenvalues(i) - dense.eigenvalues(i)) <
              1e-8 * std::max(1.0, dense.eigenvalues(i)));
    }
    // Same invariants on the iterative route.
    const auto K = fem::assemble_stiffness(mesh);
    const auto M = fem::assemble_boundary_mass(mesh, {1.0, 2.0});
    for (int j = 0; j < 6; ++j) {
        const Eigen::VectorXd u = iter.eigenvectors.col(j);
        CHECK(std::abs(u.dot(M * u) - 1.0) < 1e-8);
        const Eigen::VectorXd r = K * u;
        double interior_res = 0.0;
        for (int v = 0; v < mesh.n_vertices(); ++v) {
            if (!mesh.on_boundary[static_cast<std::size_t>(v)]) {
                interior_res = std::max(interior_res, std::abs(r(v)));
            }
        }
        CHECK(interior_res < 1e-9);
    }
}

TEST_CASE("steklov_solve input validation") {
    const Mesh mesh = build_mesh(geometry::Disk{1.0}, Resolution{4, 16});
    CHECK_THROWS_AS((void)fem::steklov_solve(mesh, {}, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)fem::steklov_solve(mesh, {}, mesh.n_boundary() + 1),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)fem::steklov_solve(mesh, {1.0, 0.5}, 2), std::invalid_argument);
}
