// Times the OpenMP kernels against their serial reference on annulus meshes
// of growing angular resolution: element batches, Schur-complement columns,
// the banded triangular transforms, and the end-to-end solve.

#include <omp.h>

#include <cstdio>
#include <string>
#include <vector>

#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/kernels.hpp"
#include "steklov/mesh.hpp"

using namespace steklov;
using kernels::Exec;

namespace {

template <class F>
double time_best_of(int reps, const F& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = omp_get_wtime();
        f();
        best = std::min(best, omp_get_wtime() - t0);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> sizes = {64, 128, 256, 512};
    int nr = 32;
    int k = 6;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--nr" && i + 1 < argc) nr = std::atoi(argv[++i]);
        if (arg == "--sizes" && i + 1 < argc) {
            sizes.clear();
            std::string list = argv[++i];
            std::size_t pos = 0;
            while (pos < list.size()) {
                std::size_t comma = list.find(',', pos);
                if (comma == std::string::npos) comma = list.size();
                sizes.push_back(std::atoi(list.substr(pos, comma - pos).c_str()));
                pos = comma + 1;
            }
        }
    }

    std::printf("threads = %d\n", omp_get_max_threads());
    std::printf("%8s %10s | %9s %9s %6s | %9s %9s %6s | %9s %9s %6s\n", "na", "vertices",
                "asm_ser", "asm_omp", "x", "schur_ser", "schur_omp", "x", "solve_ser",
                "solve_omp", "x");
    for (const int na : sizes) {
        const Mesh mesh = build_mesh(geometry::Annulus{0.5}, Resolution{nr, na});
        const auto K = fem::assemble_stiffness(mesh);
        const BoundaryWeight w{1.0, 2.0};

        const double t_asm_s = time_best_of(3, [&] {
            (void)kernels::element_stiffness_batch(mesh, Exec::serial);
        });
        const double t_asm_p = time_best_of(3, [&] {
            (void)kernels::element_stiffness_batch(mesh, Exec::parallel);
        });

        const double t_schur_s =
            time_best_of(2, [&] { (void)fem::schur_reduce(K, mesh, Exec::serial); });
        const double t_schur_p =
            time_best_of(2, [&] { (void)fem::schur_reduce(K, mesh, Exec::parallel); });

        fem::SolveOptions serial_opts;
        serial_opts.exec = Exec::serial;
        const double t_solve_s =
            time_best_of(1, [&] { (void)fem::steklov_solve(mesh, w, k, serial_opts); });
        const double t_solve_p =
            time_best_of(1, [&] { (void)fem::steklov_solve(mesh, w, k); });

        std::printf("%8d %10d | %9.4f %9.4f %6.2f | %9.4f %9.4f %6.2f | %9.4f %9.4f %6.2f\n",
                    na, mesh.n_vertices(), t_asm_s, t_asm_p, t_asm_s / t_asm_p, t_schur_s,
                    t_schur_p, t_schur_s / t_schur_p, t_solve_s, t_solve_p,
                    t_solve_s / t_solve_p);
    }
    return 0;
}
