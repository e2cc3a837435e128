// Compares the parallel energy kernel against the serial reference on
// paper-scale layouts: wall time per evaluation and the worst deviation.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pdisp/io.hpp"
#include "pdisp/penalty.hpp"
#include "pdisp/rng.hpp"
#include "pdisp/solver.hpp"

using namespace pdisp;

namespace {

double seconds_per_eval(int evals, const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < evals; ++k) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / evals;
}

}  // namespace

int main(int argc, char** argv) {
    const int evals = argc > 1 ? std::atoi(argv[1]) : 200;

    // A container with a couple of holes keeps the boundary term honest.
    Instance inst = gen_square_with_holes(
        10.0, {{3.0, 3.0, 1.2}, {7.0, 6.5, 1.6}}, "bench");

    const ModelParams params = ModelParams::circle_packing();
    Rng rng(7);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("%6s %14s %14s %9s %12s\n", "p", "kernel (us)", "reference (us)",
                "speedup", "max |dE|");

    for (int p : {50, 100, 200, 400, 800}) {
        const double min_dist = initial_distance(inst, p, 0.85);
        Layout layout = random_layout(inst, p, rng);

        EnergyReport kernel_rep, ref_rep;
        const double t_kernel = seconds_per_eval(
            evals, [&] { evaluate_energy(inst, layout, min_dist, params, kernel_rep); });
        const double t_ref = seconds_per_eval(std::max(evals / 10, 1), [&] {
            ref_rep = reference_total_energy(inst, layout, min_dist, params);
        });

        double max_dev = std::abs(kernel_rep.value - ref_rep.value) /
                         std::max(1.0, std::abs(ref_rep.value));
        for (std::size_t i = 0; i < kernel_rep.gradient.size(); ++i) {
            const double denom = std::max(1.0, std::abs(ref_rep.gradient[i]));
            max_dev = std::max(
                max_dev, std::abs(kernel_rep.gradient[i] - ref_rep.gradient[i]) / denom);
        }
        std::printf("%6d %14.2f %14.2f %8.2fx %12.3e\n", p, t_kernel * 1e6, t_ref * 1e6,
                    t_ref / t_kernel, max_dev);
    }
    return 0;
}
