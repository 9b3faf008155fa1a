// Compares the OpenMP kernels against their serial reference implementations:
// wall time, speedup, and bit-identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fnn/finite_stats.hpp"
#include "fnn/ns_models.hpp"
#include "fnn/rng.hpp"
#include "fnn/witness.hpp"

using namespace fnn;

namespace {

constexpr double kPi = std::numbers::pi;

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

void report(const char* name, double serial_ms, double parallel_ms, double max_diff) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx %12.3e\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, max_diff);
}

void bench_theory_curve() {
    std::vector<double> grid;
    for (int i = 0; i < 96; ++i) grid.push_back(kPi / 2 * i / 95.0);

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = theory_curve_serial(0.9710, 0.9860, 0.943, grid, grid);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = theory_curve(0.9710, 0.9860, 0.943, grid, grid);
    const double parallel_ms = ms_since(t0);

    double diff = 0.0;
    for (std::size_t i = 0; i < serial.size(); ++i) {
        diff = std::max(diff, std::abs(serial[i].r_cns - parallel[i].r_cns));
        diff = std::max(diff, std::abs(serial[i].r_nsc - parallel[i].r_nsc));
    }
    report("theory curve 96x96", serial_ms, parallel_ms, diff);
}

void bench_bootstrap() {
    const JointDistribution d = compute_distribution(
        reference_scenario(0.9710, 0.9860, 0.943, kPi / 4, kPi / 4));
    const CountTable counts = sample_counts(d, 4700, 7);

    auto t0 = std::chrono::steady_clock::now();
    const EstimateReport serial = estimate_witnesses_serial(counts, 4000, 11);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const EstimateReport parallel = estimate_witnesses(counts, 4000, 11, true);
    const double parallel_ms = ms_since(t0);

    const double diff = std::max(std::abs(serial.se_cns - parallel.se_cns),
                                 std::abs(serial.se_nsc - parallel.se_nsc));
    report("bootstrap 4000 resamples", serial_ms, parallel_ms, diff);
}

void bench_seesaw() {
    auto t0 = std::chrono::steady_clock::now();
    const CnsSeesawResult serial = maximize_witness_cns(4, 16, 40, 3, false);
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const CnsSeesawResult parallel = maximize_witness_cns(4, 16, 40, 3, true);
    const double parallel_ms = ms_since(t0);

    report("seesaw 16 restarts", serial_ms, parallel_ms,
           std::abs(serial.outcome.best_value - parallel.outcome.best_value));
}

void bench_model_scan() {
    const int n = 600;
    std::vector<double> serial_vals(n), parallel_vals(n);

    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < n; ++i)
        serial_vals[i] = eval_r_cns(
            correlators(model_to_distribution(random_cns_model((i % 8) + 1, 9000 + i))));
    const double serial_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i)
        parallel_vals[i] = eval_r_cns(
            correlators(model_to_distribution(random_cns_model((i % 8) + 1, 9000 + i))));
    const double parallel_ms = ms_since(t0);

    double diff = 0.0;
    for (int i = 0; i < n; ++i)
        diff = std::max(diff, std::abs(serial_vals[i] - parallel_vals[i]));
    report("model soundness scan 600", serial_ms, parallel_ms, diff);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif
    std::printf("%-28s %13s %13s %8s %12s\n", "kernel", "serial", "parallel", "speedup",
                "max |diff|");
    bench_theory_curve();
    bench_bootstrap();
    bench_seesaw();
    bench_model_scan();
    return 0;
}
