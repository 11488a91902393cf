#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "micz/interbasis.hpp"
#include "micz/parallel.hpp"
#include "micz/sector.hpp"
#include "micz/spheroidal.hpp"
#include "micz/wavefield.hpp"

using namespace micz;

namespace {

double seconds(const std::function<void()>& f, int reps)
{
    f();
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

void row(const std::string& name, double serial, double parallel)
{
    std::printf("%-28s serial %10.3f ms  parallel %10.3f ms  speedup %5.2fx\n", name.c_str(), 1e3 * serial,
                1e3 * parallel, serial / parallel);
}

} // namespace

int main(int argc, char** argv)
{
    const int reps = argc > 1 ? std::stoi(argv[1]) : 3;
    std::printf("threads: %d, repetitions: %d\n", max_threads(), reps);

    const Sector big = validate_sector(10, 0, 0, 0, Rational(1));
    row("w_matrix (N=11)", seconds([&] { w_matrix_serial(big); }, reps),
        seconds([&] { w_matrix(big); }, reps));

    const Sector mid = validate_sector(4, 0, 0, 0, Rational(1));
    row("w_overlap_matrix (N=5, 128)", seconds([&] { w_overlap_matrix_serial(mid, 128); }, reps),
        seconds([&] { w_overlap_matrix(mid, 128); }, reps));

    const Sector wide = validate_sector(12, 2, 2, 4, Rational(1));
    auto grid = make_grid(1e-2, 1e3, 400, true);
    row("sweep_branches (400 points)", seconds([&] { sweep_branches_serial(wide, 1.0, grid); }, reps),
        seconds([&] { sweep_branches(wide, 1.0, grid); }, reps));
    return 0;
}
