#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncfa/parallel.hpp"
#include "ncfa/search.hpp"
#include "ncfa/serialize.hpp"

using namespace ncfa;

TEST_CASE("for_index covers every slot exactly once") {
    std::vector<int> hits(1000, 0);
    par::for_index(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    std::vector<int> serial_hits(1000, 0);
    par::for_index(serial_hits.size(), 1, [&](std::size_t i) { serial_hits[i] += 1; });
    CHECK(hits == serial_hits);
}

TEST_CASE("batch norm checks match bitwise between serial and parallel") {
    const ModelPtr m = cyclic_model(6);
    const int n = 512;
    auto run = [&](int jobs) {
        std::vector<double> slack(static_cast<std::size_t>(n));
        par::for_index(slack.size(), jobs, [&](std::size_t i) {
            const Element x = random_element(m->plus(), RandomKind::generic, mix_seed(3, i));
            const auto [upper, lower] = check_norm_bounds(*m, x, 1.0, 3.0);
            slack[i] = std::min(upper.slack, lower.slack);
        });
        return slack;
    };
    const auto serial = run(1);
    const auto parallel = run(4);
    for (int i = 0; i < n; ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("sweep rows are bitwise identical across job counts") {
    const ModelPtr m = cyclic_model(4);
    std::vector<RegionPoint> grid;
    for (double ip : {0.0, 0.5, 1.0})
        for (double iq : {0.25, 0.75, 1.25}) grid.push_back(RegionPoint::make(ip, iq));
    SearchConfig cfg;
    cfg.restarts = 6;
    cfg.max_iters = 300;
    cfg.seed = 21;

    cfg.jobs = 1;
    const auto serial = sweep_grid(*m, grid, cfg);
    cfg.jobs = 4;
    const auto parallel = sweep_grid(*m, grid, cfg);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(sweep_csv_row(serial[i]) == sweep_csv_row(parallel[i]));
}

TEST_CASE("validity map is bitwise identical across job counts") {
    const ModelPtr m = cyclic_model(3);
    std::vector<RegionPoint> grid;
    for (double ip : {0.75, 1.0, 1.25})
        for (double iq : {0.25, 0.75, 1.0})
            if (ip + iq >= 1.0) grid.push_back(RegionPoint::make(ip, iq));
    const auto serial = up2_validity_map(*m, grid, 64, 17, 1);
    const auto parallel = up2_validity_map(*m, grid, 64, 17, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(validity_csv_row(serial[i]) == validity_csv_row(parallel[i]));
}

TEST_CASE("parallel restarts reproduce the serial search") {
    const ModelPtr m = cyclic_model(5);
    SearchConfig cfg;
    cfg.restarts = 8;
    cfg.max_iters = 300;
    cfg.seed = 4;
    cfg.jobs = 1;
    const SearchResult serial = maximize_ratio(*m, 1.0, 2.0, cfg);
    cfg.jobs = 4;
    const SearchResult parallel = maximize_ratio(*m, 1.0, 2.0, cfg);
    CHECK(serial.best_ratio == parallel.best_ratio);
    CHECK(element_hash(serial.best_element) == element_hash(parallel.best_element));
    REQUIRE(serial.traces.size() == parallel.traces.size());
    for (std::size_t i = 0; i < serial.traces.size(); ++i) {
        CHECK(serial.traces[i].iterations == parallel.traces[i].iterations);
        CHECK(serial.traces[i].ratio == parallel.traces[i].ratio);
    }
}
