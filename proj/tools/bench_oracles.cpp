// Compares the OpenMP oracle kernels against their serial references on
// generated graphs and reports speedups.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pathlab/oracles.hpp"

using namespace pathlab;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_of(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* kernel, const char* instance, double serial, double parallel, bool agree) {
    printf("%-22s %-18s serial %8.3fs   omp %8.3fs   speedup %5.2fx   agree %s\n", kernel,
           instance, serial, parallel, parallel > 0 ? serial / parallel : 0.0,
           agree ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    int scale = argc > 1 ? atoi(argv[1]) : 1;
#ifdef _OPENMP
    printf("threads: %d\n", omp_get_max_threads());
#else
    printf("threads: 1 (no OpenMP)\n");
#endif

    {
        auto g = random_connected_gnp(60 * scale, 0.12, 7);
        Verdict a{}, b{};
        double ts = time_of([&] { a = ref::induced_path_exists(g, 7); });
        double tp = time_of([&] { b = induced_path_exists(g, 7); });
        row("induced_path_exists", "gnp(60,0.12) k=7", ts, tp, a == b);
    }
    {
        auto g = random_gnp(46 * scale, 0.3, 9);
        uint64_t a = 0, b = 0;
        double ts = time_of([&] { a = ref::count_induced_copies(g, cycle_graph(5)); });
        double tp = time_of([&] { b = count_induced_copies(g, cycle_graph(5)); });
        row("count_induced_copies", "gnp(46,0.3) C5", ts, tp, a == b);
    }
    {
        auto g = random_connected_gnp(1200 * scale, 0.01, 11);
        std::optional<int> a, b;
        double ts = time_of([&] { a = ref::diameter(g); });
        double tp = time_of([&] { b = diameter(g); });
        row("diameter", "gnp(1200,0.01)", ts, tp, a == b);
    }
    {
        auto g = random_gnp(90 * scale, 0.12, 13);
        bool a = false, b = false;
        double ts = time_of([&] { a = ref::induced_c4_exists(g); });
        double tp = time_of([&] { b = induced_c4_exists(g); });
        row("induced_c4_exists", "gnp(90,0.12)", ts, tp, a == b);
    }
    return 0;
}
