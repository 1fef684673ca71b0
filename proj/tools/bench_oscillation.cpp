// Benchmark of the grid-scan kernels: OpenMP parallel vs the serial
// reference, on beta-diagonal matrices over the 2-torus. Also verifies that
// both kernels return identical estimates, which is the point of keeping
// the reference implementation around.

#include <chrono>
#include <cstring>
#include <iostream>

#include "rrzero/oscillation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rrzero;

namespace {

double run_once(const LatticeAlgebraMatrix& m, const DualDescription& dual, const GridSpec& spec,
                Exec exec, OscillationEstimate* out) {
    auto t0 = std::chrono::steady_clock::now();
    OscillationEstimate est = oscillation_sampled(m, dual, spec, exec);
    auto t1 = std::chrono::steady_clock::now();
    if (out) *out = est;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool estimates_equal(const OscillationEstimate& a, const OscillationEstimate& b) {
    if (a.omega_lower != b.omega_lower || a.omega_upper != b.omega_upper) return false;
    if (a.components.size() != b.components.size()) return false;
    for (size_t i = 0; i < a.components.size(); ++i)
        if (a.components[i].max_norm != b.components[i].max_norm ||
            a.components[i].min_norm != b.components[i].min_norm)
            return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int grid = 192;
    int size = 3;
    bool check_only = false;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--grid") && i + 1 < argc)
            grid = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--size") && i + 1 < argc)
            size = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--check-only"))
            check_only = true;
        else {
            std::cerr << "usage: bench_oscillation [--grid N] [--size K] [--check-only]\n";
            return 2;
        }
    }

    FGAbelianGroup z2 = FGAbelianGroup::free_lattice(2);
    std::vector<AbelianElement> entries;
    for (int i = 0; i < size; ++i)
        entries.push_back(z2.element({i + 1, (i * 2 + 1) % 5}, {}));
    LatticeAlgebraMatrix m = beta_diagonal_matrix(z2, entries);
    DualDescription dual(z2);

    GridSpec spec;
    spec.grid_per_axis = grid;
    spec.refine_levels = 1;

#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif

    OscillationEstimate serial_est, parallel_est;
    double serial_ms = run_once(m, dual, spec, Exec::Serial, &serial_est);
    double parallel_ms = run_once(m, dual, spec, Exec::Parallel, &parallel_est);

    if (!estimates_equal(serial_est, parallel_est)) {
        std::cerr << "kernel mismatch: serial and parallel estimates differ\n";
        return 1;
    }

    std::cout << "points per component : " << static_cast<long long>(grid) * grid << "\n"
              << "matrix size          : " << size << "x" << size << "\n"
              << "threads              : " << threads << "\n"
              << "omega_lower          : " << serial_est.omega_lower << "\n";
    if (!check_only) {
        std::cout << "serial kernel        : " << serial_ms << " ms\n"
                  << "parallel kernel      : " << parallel_ms << " ms\n"
                  << "speedup              : " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0)
                  << "x\n";
    } else {
        std::cout << "kernels agree        : yes\n";
    }
    return 0;
}
