// Times the OpenMP kernels against their serial reference implementations and
// verifies they produce identical results.
//
//   ./bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maximal/counterexamples.hpp"
#include "maximal/entropy.hpp"
#include "maximal/spherical.hpp"

using namespace maximal;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& fn, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms %7.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const auto set = make_power_set(0.5);
        EntropyProfile ser, par;
        const double ts = time_ms([&] { ser = profile_serial(set, 2, 20); }, repeats);
        const double tp = time_ms([&] { par = profile(set, 2, 20); }, repeats);
        row("entropy profile n=20", ts, tp, ser.table == par.table);
    }

    {
        const auto set = make_power_set(1.0);
        const auto g = indicator_ball(0.01);
        std::vector<double> grid;
        for (int i = 0; i <= 4000; ++i) grid.push_back(0.9 + i * 0.00015);
        MaximalField ser, par;
        const double ts =
            time_ms([&] { ser = maximal_field_serial(g, 2, set, 0.8, 1.7, 1e-4, grid); },
                    repeats);
        const double tp =
            time_ms([&] { par = maximal_field(g, 2, set, 0.8, 1.7, 1e-4, grid); }, repeats);
        row("maximal field 4k grid", ts, tp, ser.value == par.value);
    }

    {
        const auto fam = besicovitch_family(6);
        AreaEstimate ser, par;
        const double ts =
            time_ms([&] { ser = mc_union_area_serial(fam, 8'000'000, 11); }, repeats);
        const double tp = time_ms([&] { par = mc_union_area(fam, 8'000'000, 11); }, repeats);
        row("mc union area 8M", ts, tp, ser.value == par.value);
    }

    return 0;
}
