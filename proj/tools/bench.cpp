// Compares the serial reference path (jobs = 1) against the OpenMP path on
// the two batch workloads that dominate real runs: bulk norm-bound checking
// and a sweep of the SFT norm optimizer.

#include <chrono>
#include <cstdio>

#include "ncfa/parallel.hpp"
#include "ncfa/search.hpp"
#include "ncfa/serialize.hpp"

using namespace ncfa;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double bench_checks(const PlanarModel& m, int samples, int jobs) {
    std::vector<double> slack(static_cast<std::size_t>(samples));
    const auto t0 = Clock::now();
    par::for_index(static_cast<std::size_t>(samples), jobs, [&](std::size_t i) {
        const Element x = random_element(m.plus(), RandomKind::generic, mix_seed(11, i));
        const auto [upper, lower] = check_norm_bounds(m, x, 1.0, 4.0);
        slack[i] = std::min(upper.slack, lower.slack);
    });
    const double elapsed = ms_since(t0);
    double worst = slack[0];
    for (double s : slack) worst = std::min(worst, s);
    std::printf("  worst slack %.3e\n", worst);
    return elapsed;
}

double bench_sweep(const PlanarModel& m, int jobs) {
    std::vector<RegionPoint> grid;
    for (double ip : {0.0, 0.25, 0.5, 0.75, 1.0, 1.25})
        for (double iq : {0.0, 0.25, 0.5, 0.75, 1.0, 1.25})
            grid.push_back(RegionPoint::make(ip, iq));
    SearchConfig cfg;
    cfg.restarts = 12;
    cfg.max_iters = 600;
    cfg.seed = 5;
    cfg.jobs = jobs;
    const auto t0 = Clock::now();
    const auto rows = sweep_grid(m, grid, cfg);
    const double elapsed = ms_since(t0);
    double worst_gap = rows[0].gap;
    for (const auto& r : rows) worst_gap = std::min(worst_gap, r.gap);
    std::printf("  worst gap %.3e\n", worst_gap);
    return elapsed;
}

} // namespace

int main(int argc, char** argv) {
    int jobs = par::default_jobs();
    if (argc > 1) jobs = std::atoi(argv[1]);
    const int samples = 20000;

    const ModelPtr m8 = cyclic_model(8);
    std::printf("norm-bound batch, %s, %d samples\n", m8->id().c_str(), samples);
    std::printf("serial:\n");
    const double t_serial = bench_checks(*m8, samples, 1);
    std::printf("  %.1f ms\n", t_serial);
    std::printf("parallel (%d jobs):\n", jobs);
    const double t_par = bench_checks(*m8, samples, jobs);
    std::printf("  %.1f ms   speedup %.2fx\n", t_par, t_serial / t_par);

    const ModelPtr m5 = cyclic_model(5);
    std::printf("\noptimizer sweep, %s, 36 points\n", m5->id().c_str());
    std::printf("serial:\n");
    const double s_serial = bench_sweep(*m5, 1);
    std::printf("  %.1f ms\n", s_serial);
    std::printf("parallel (%d jobs):\n", jobs);
    const double s_par = bench_sweep(*m5, jobs);
    std::printf("  %.1f ms   speedup %.2fx\n", s_par, s_serial / s_par);
    return 0;
}
