// Times the backflow-grid sweep on the strictly serial reference path
// (jobs = 1) against the OpenMP cell-parallel path (jobs = 0), and checks
// the two produce byte-identical CSV.
#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "jch/sweep.hpp"

using namespace jch::sweep;

int main(int argc, char** argv) {
    int n = 12;
    int repeat = 3;
    double g_p = 0.0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--n") && i + 1 < argc) {
            n = std::atoi(argv[++i]);
        } else if (!std::strcmp(argv[i], "--repeat") && i + 1 < argc) {
            repeat = std::atoi(argv[++i]);
        } else if (!std::strcmp(argv[i], "--g-p") && i + 1 < argc) {
            g_p = std::atof(argv[++i]);
        } else {
            std::fprintf(stderr,
                         "usage: bench_sweep [--n N] [--repeat R] [--g-p G]\n");
            return 1;
        }
    }
    if (n < 2 || repeat < 1) {
        std::fprintf(stderr, "need --n >= 2 and --repeat >= 1\n");
        return 1;
    }

    SweepSpec spec;
    spec.mode = SweepMode::nm_grid;
    spec.axis1 = AxisSpec::linspace("delta", 0.0, 10.0, n);
    spec.axis2 = AxisSpec::linspace("lambda", 0.02, 2.0, n);
    spec.base.g_p = g_p;
    spec.time_horizon = 50.0;

    std::string serial_csv, parallel_csv;
    double t_serial = 1e300, t_parallel = 1e300; // best of `repeat` runs
    for (int r = 0; r < repeat; ++r) {
        const double t0 = omp_get_wtime();
        const GridResult res = run_nm_grid(spec, 1);
        t_serial = std::min(t_serial, omp_get_wtime() - t0);
        serial_csv = to_csv(res);
    }
    for (int r = 0; r < repeat; ++r) {
        const double t0 = omp_get_wtime();
        const GridResult res = run_nm_grid(spec, 0);
        t_parallel = std::min(t_parallel, omp_get_wtime() - t0);
        parallel_csv = to_csv(res);
    }

    std::printf("grid %dx%d, horizon %.0f, g_p = %g\n", n, n,
                spec.time_horizon, g_p);
    std::printf("serial reference:      %8.3f s\n", t_serial);
    std::printf("parallel (%d threads): %8.3f s\n", omp_get_max_threads(),
                t_parallel);
    std::printf("speedup: %.2fx\n", t_serial / t_parallel);
    if (serial_csv != parallel_csv) {
        std::fprintf(stderr, "FAIL: serial and parallel outputs differ\n");
        return 1;
    }
    std::printf("outputs byte-identical across thread counts\n");
    return 0;
}
