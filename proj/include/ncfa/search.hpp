#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncfa/extremizers.hpp"

namespace ncfa {

struct SearchConfig {
    int restarts = 50;
    int max_iters = 2000;
    double init_step = 0.1;          ///< backtracking line search with halving
    double conv_rel_change = 1e-10;  ///< relative objective change ...
    int conv_window = 10;            ///< ... over this many iterations
    std::uint64_t seed = 0;
    double eps_smooth = 1e-12;       ///< added under the singular-value square roots
    int polish_iters = 50;           ///< derivative-free coordinate pattern sweeps
    int jobs = 1;                    ///< parallel restarts / grid points; <=0 = auto

    void validate() const;
};

struct RestartTrace {
    int iterations = 0;
    bool converged = false;
    double ratio = 0.0;
};

struct SearchResult {
    double best_ratio = 0.0;
    Element best_element;
    FamilyLabel classification = FamilyLabel::NoFamily;
    int table_row = 0;
    double k_reference = 0.0;
    double gap = 0.0;
    std::vector<RestartTrace> traces;
};

/// Gradient ascent on log ||sft(x)||_q - log ||x||_p over both 2-box spaces,
/// seeded by the structured candidates (whose exact ratios are always merged
/// into the result) plus random restarts. The reported ratio is re-evaluated
/// without smoothing and the best element is normalized to ||x||_p = 1.
SearchResult maximize_ratio(const PlanarModel& m, double p, double q, const SearchConfig& cfg);

/// Every family member constructible in the model: trace-one projections,
/// characters / irrep matrix elements, subgroup biprojections, coset shifts,
/// bishifts (abelian), quadratic biunitaries (cyclic), TL biunitaries, the
/// identity, and the SFT images of all of them. Deterministic order.
std::vector<Element> structured_candidates(const PlanarModel& m, double p, double q);

struct SweepRow {
    double inv_p = 0.0, inv_q = 0.0;
    Region region = Region::RF;
    double k = 0.0;
    double empirical_c = 0.0;
    double gap = 0.0;
    FamilyLabel family = FamilyLabel::NoFamily;
    bool matched = false; ///< classifier label equals the table row of the point
    int restarts = 0;
    int converged_count = 0;
    std::uint64_t seed = 0;
};

/// One maximize_ratio per grid point; rows are independent, reproducible and
/// computed in parallel over points.
std::vector<SweepRow> sweep_grid(const PlanarModel& m, const std::vector<RegionPoint>& grid,
                                 const SearchConfig& cfg);

struct YoungResult {
    double best_ratio = 0.0;
    Element best_x, best_y;
    double young_bound = 0.0; ///< 1/delta, the proven bound on conjugate triples
    std::vector<RestartTrace> traces;
};

/// Alternating maximization of ||x*y||_r / (||x||_p ||y||_q) over pairs,
/// seeded by structured candidate pairs plus random restarts.
YoungResult estimate_young_constant(const PlanarModel& m, double p, double q, double r,
                                    const SearchConfig& cfg);

struct ValidityRow {
    double inv_p = 0.0, inv_q = 0.0;
    Region region = Region::RF;
    double k = 0.0;
    double min_slack = 0.0;
    std::uint64_t witness_hash = 0;
    std::string regime;
    int samples = 0;
    std::uint64_t seed = 0;
};

/// Minimum slack of the second entropic uncertainty principle over random
/// samples and structured candidates, per grid point with 1/p + 1/q >= 1.
/// Points within 1e-6 of a degenerate order (p = 2 or q = 2) are skipped.
std::vector<ValidityRow> up2_validity_map(const PlanarModel& m,
                                          const std::vector<RegionPoint>& grid, int samples,
                                          std::uint64_t seed, int jobs = 1);

struct GradientCheckReport {
    int samples = 0;
    long coords_total = 0;
    long coords_passed = 0;
    double pass_fraction = 0.0;
    double worst_rel_err = 0.0;
    bool ok() const { return pass_fraction >= 0.95; }
};

/// Analytic gradient of the search objective against central finite
/// differences (h = 1e-6) at generic points; resamples until each block has
/// well-separated singular values.
GradientCheckReport gradient_check(const PlanarModel& m, double p, double q, int samples,
                                   std::uint64_t seed);

} // namespace ncfa
