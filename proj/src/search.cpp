#include "ncfa/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include <Eigen/SVD>

#include "ncfa/parallel.hpp"

namespace ncfa {

void SearchConfig::validate() const {
    if (restarts < 0 || max_iters < 1 || !(init_step > 0.0) || !(conv_rel_change > 0.0) ||
        conv_window < 1 || !(eps_smooth >= 0.0) || polish_iters < 0)
        fail(Errc::ConfigInvalid, "search configuration out of range");
}

namespace {

// Objective log ||A x||_q - log ||x||_p over the coordinates of the source
// algebra, with eps added under the singular-value square roots so that the
// gradient exists at rank-deficient points. A is any linear map given by its
// coordinate matrix (the SFT, or convolution by a fixed element).
struct RatioObjective {
    const MarkovAlgebra* src = nullptr;
    const MarkovAlgebra* dst = nullptr;
    const Matrix* map = nullptr;
    double p = 2.0, q = 2.0;
    double eps = 1e-12;

    struct BlockSvd {
        std::vector<Matrix> u, v;
        std::vector<RVector> s;
    };

    static BlockSvd decompose(const MarkovAlgebra& alg, const CVector& coords) {
        BlockSvd out;
        Eigen::Index at = 0;
        for (std::size_t k = 0; k < alg.block_count(); ++k) {
            const int d = alg.dim(k);
            Matrix m(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) m(i, j) = coords(at++);
            if (d == 1) {
                const double r = std::abs(m(0, 0));
                Matrix u(1, 1), v(1, 1);
                u(0, 0) = r > 0.0 ? m(0, 0) / r : Complex(1.0, 0.0);
                v(0, 0) = 1.0;
                RVector s(1);
                s(0) = r;
                out.u.push_back(u);
                out.v.push_back(v);
                out.s.push_back(s);
            } else {
                Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
                out.u.push_back(svd.matrixU());
                out.v.push_back(svd.matrixV());
                out.s.push_back(svd.singularValues());
            }
        }
        return out;
    }

    // log of the smoothed norm; sum_k w_k sum_i (s^2+eps)^{r/2}, power 1/r
    double smoothed_log_norm(const MarkovAlgebra& alg, const BlockSvd& d, double r) const {
        if (std::isinf(r)) {
            double top = 0.0;
            for (const auto& s : d.s)
                for (Eigen::Index i = 0; i < s.size(); ++i)
                    top = std::max(top, s(i) * s(i) + eps);
            return 0.5 * std::log(top);
        }
        double acc = 0.0;
        for (std::size_t k = 0; k < d.s.size(); ++k)
            for (Eigen::Index i = 0; i < d.s[k].size(); ++i)
                acc += alg.weight(k) * std::pow(d.s[k](i) * d.s[k](i) + eps, 0.5 * r);
        return std::log(acc) / r;
    }

    // gradient of the smoothed log norm: complex vector G with
    // d(log n) = 2 Re <G, d coords>
    CVector log_norm_gradient(const MarkovAlgebra& alg, const BlockSvd& d, double r) const {
        CVector g(CVector::Zero(static_cast<Eigen::Index>(alg.coord_count())));
        if (std::isinf(r)) {
            double top = 0.0;
            for (const auto& s : d.s)
                for (Eigen::Index i = 0; i < s.size(); ++i) top = std::max(top, s(i));
            // average the outer products of the top singular pairs (ties)
            const double tie = std::max(1e-12 * top, 1e-300);
            Eigen::Index at = 0;
            std::vector<Matrix> contrib(alg.block_count());
            int count = 0;
            for (std::size_t k = 0; k < alg.block_count(); ++k) {
                const int dim = alg.dim(k);
                contrib[k] = Matrix::Zero(dim, dim);
                for (Eigen::Index i = 0; i < d.s[k].size(); ++i)
                    if (d.s[k](i) >= top - tie) {
                        contrib[k] += d.u[k].col(i) * d.v[k].col(i).adjoint();
                        ++count;
                    }
            }
            const double factor = top / (2.0 * (top * top + eps) * std::max(count, 1));
            for (std::size_t k = 0; k < alg.block_count(); ++k) {
                const int dim = alg.dim(k);
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) g(at++) = factor * contrib[k](i, j);
            }
            return g;
        }
        double acc = 0.0;
        for (std::size_t k = 0; k < d.s.size(); ++k)
            for (Eigen::Index i = 0; i < d.s[k].size(); ++i)
                acc += alg.weight(k) * std::pow(d.s[k](i) * d.s[k](i) + eps, 0.5 * r);
        Eigen::Index at = 0;
        for (std::size_t k = 0; k < alg.block_count(); ++k) {
            const int dim = alg.dim(k);
            // X (X*X + eps)^{r/2-1} = U S (S^2+eps)^{r/2-1} V*
            RVector f(d.s[k].size());
            for (Eigen::Index i = 0; i < f.size(); ++i)
                f(i) = d.s[k](i) * std::pow(d.s[k](i) * d.s[k](i) + eps, 0.5 * r - 1.0);
            const Matrix grad =
                (alg.weight(k) / (2.0 * acc)) * d.u[k] * f.asDiagonal() * d.v[k].adjoint();
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) g(at++) = grad(i, j);
        }
        return g;
    }

    double value(const CVector& v) const {
        const BlockSvd sx = decompose(*src, v);
        const BlockSvd sy = decompose(*dst, CVector((*map) * v));
        return smoothed_log_norm(*dst, sy, q) - smoothed_log_norm(*src, sx, p);
    }

    /// 2G, i.e. the step direction whose real/imag parts are the partials.
    CVector gradient(const CVector& v) const {
        const BlockSvd sx = decompose(*src, v);
        const CVector y = (*map) * v;
        const BlockSvd sy = decompose(*dst, y);
        const CVector gq = log_norm_gradient(*dst, sy, q);
        const CVector gp = log_norm_gradient(*src, sx, p);
        return 2.0 * (map->adjoint() * gq - gp);
    }
};

struct AscentOutcome {
    CVector coords;
    RestartTrace trace;
};

AscentOutcome ascend(const RatioObjective& obj, CVector v, const SearchConfig& cfg) {
    AscentOutcome out{v, {}};
    v.normalize();
    double value = obj.value(v);
    int stable = 0;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        const CVector g = obj.gradient(v);
        const double gnorm2 = g.squaredNorm();
        if (!(gnorm2 > 0.0)) break;
        double step = cfg.init_step;
        double next_value = value;
        CVector next = v;
        bool improved = false;
        for (int h = 0; h < 45; ++h) {
            CVector trial = v + step * g;
            trial.normalize();
            const double trial_value = obj.value(trial);
            if (trial_value >= value + 1e-4 * step * gnorm2) {
                next = std::move(trial);
                next_value = trial_value;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            ++stable;
            if (stable >= cfg.conv_window) break;
            continue;
        }
        if (std::abs(next_value - value) <= cfg.conv_rel_change * (1.0 + std::abs(value)))
            ++stable;
        else
            stable = 0;
        v = std::move(next);
        value = next_value;
        if (stable >= cfg.conv_window) {
            ++iter;
            break;
        }
    }
    out.coords = v;
    out.trace.iterations = iter;
    out.trace.converged = stable >= cfg.conv_window;
    return out;
}

// Derivative-free coordinate pattern polish on the exact (unsmoothed)
// objective; extremizers sit exactly at non-smooth points.
CVector polish(CVector v, int sweeps, const std::function<double(const CVector&)>& exact) {
    double best = exact(v);
    double h = 1e-3;
    for (int sweep = 0; sweep < sweeps && h > 1e-11; ++sweep) {
        bool improved = false;
        for (Eigen::Index c = 0; c < v.size(); ++c) {
            for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
                CVector trial = v;
                trial(c) += h * dir;
                trial.normalize();
                const double val = exact(trial);
                if (val > best + 1e-15) {
                    v = std::move(trial);
                    best = val;
                    improved = true;
                }
            }
        }
        if (!improved) h *= 0.5;
    }
    return v;
}

} // namespace

std::vector<Element> structured_candidates(const PlanarModel& m, double, double) {
    std::vector<Element> out;
    std::set<std::uint64_t> seen;
    auto push = [&](const Element& e) {
        if (is_zero(e)) return;
        if (seen.insert(element_hash(e)).second) out.push_back(e);
    };

    if (m.is_group_model()) {
        const int n = m.group_order();
        for (int g = 0; g < n; ++g) push(group_delta(m, g));
        push(Element::identity(m.plus()));
        if (m.kind() == ModelKind::cyclic || m.kind() == ModelKind::abelian) {
            for (int j = 0; j < n; ++j) push(group_character(m, j));
        } else {
            const IrrepTable& t = m.irrep_table();
            for (std::size_t r = 0; r < t.irreps.size(); ++r)
                for (int i = 0; i < t.irrep_dim(r); ++i)
                    for (int j = 0; j < t.irrep_dim(r); ++j)
                        push(irrep_matrix_element(m, static_cast<int>(r), i, j));
        }
        const auto subs = enumerate_subgroups(m);
        for (const auto& h : subs) {
            push(subgroup_biprojection(m, h));
            for (int g = 0; g < n; ++g) {
                push(coset_shift(m, h, g, ShiftSide::left));
                push(coset_shift(m, h, g, ShiftSide::right));
            }
        }
        if (m.kind() == ModelKind::cyclic || m.kind() == ModelKind::abelian)
            for (const auto& h : subs)
                for (int g = 0; g < n; ++g)
                    for (int chi = 0; chi < n; ++chi) push(bishift_element(m, h, g, chi));
        if (m.kind() == ModelKind::cyclic)
            for (int lam = 1; lam < n; ++lam) {
                if (std::gcd(lam, n) != 1) continue;
                for (int mu = 0; mu < n; ++mu)
                    push(biunitary_quadratic(m, lam, mu));
            }
    } else {
        push(m.jones_projection());
        push(Element::identity(m.plus()));
        if (m.delta() <= 2.0 + 1e-12) {
            push(tl_biunitary(m, +1));
            push(tl_biunitary(m, -1));
        }
    }

    // the SFT images land in the opposite algebra; inverses of plus-side
    // elements coincide with their forward images
    const std::size_t primal = out.size();
    for (std::size_t i = 0; i < primal; ++i) push(sft(m, out[i]));
    return out;
}

namespace {

struct SideObjective {
    RatioObjective obj;
    const AlgebraPtr* src_ptr = nullptr;
    const AlgebraPtr* dst_ptr = nullptr;
};

RatioObjective make_sft_objective(const PlanarModel& m, PlanarModel::Side side, double p,
                                  double q, double eps) {
    RatioObjective obj;
    obj.src = side == PlanarModel::Side::plus ? m.plus().get() : m.minus().get();
    obj.dst = side == PlanarModel::Side::plus ? m.minus().get() : m.plus().get();
    obj.map = side == PlanarModel::Side::plus ? &m.forward_matrix() : &m.backward_matrix();
    obj.p = p;
    obj.q = q;
    obj.eps = eps;
    return obj;
}

double exact_sft_ratio(const PlanarModel& m, const Element& x, double p, double q) {
    const double np = pnorm(x, p);
    if (!(np > 0.0)) return 0.0;
    return pnorm(sft(m, x), q) / np;
}

} // namespace

SearchResult maximize_ratio(const PlanarModel& m, double p, double q, const SearchConfig& cfg) {
    cfg.validate();
    if (std::isnan(p) || p <= 0.0 || std::isnan(q) || q <= 0.0)
        fail(Errc::ConfigInvalid, "exponents must be positive (possibly infinite)");

    const std::vector<Element> candidates = structured_candidates(m, p, q);

    double best_ratio = -1.0;
    std::optional<Element> best;
    std::vector<std::size_t> top_seeds;
    {
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const double r = exact_sft_ratio(m, candidates[i], p, q);
            if (r > best_ratio) {
                best_ratio = r;
                best = candidates[i];
            }
            ranked.emplace_back(-r, i);
        }
        std::sort(ranked.begin(), ranked.end());
        for (std::size_t i = 0; i < std::min<std::size_t>(5, ranked.size()); ++i)
            top_seeds.push_back(ranked[i].second);
    }

    struct Slot {
        double ratio = -1.0;
        CVector coords;
        PlanarModel::Side side = PlanarModel::Side::plus;
        RestartTrace trace;
    };
    const std::size_t total = top_seeds.size() + static_cast<std::size_t>(cfg.restarts);
    std::vector<Slot> slots(total);

    par::for_index(total, cfg.jobs, [&](std::size_t idx) {
        PlanarModel::Side side;
        CVector start;
        if (idx < top_seeds.size()) {
            const Element& c = candidates[top_seeds[idx]];
            side = m.side_of(c);
            start = to_coords(c);
        } else {
            const std::size_t r = idx - top_seeds.size();
            side = r % 2 == 0 ? PlanarModel::Side::plus : PlanarModel::Side::minus;
            const Element x = random_element(m.algebra(side), RandomKind::generic,
                                             mix_seed(cfg.seed, 1000 + r));
            start = to_coords(x);
        }
        const RatioObjective obj = make_sft_objective(m, side, p, q, cfg.eps_smooth);
        AscentOutcome a = ascend(obj, start, cfg);
        const AlgebraPtr alg = m.algebra(side);
        auto exact = [&](const CVector& v) {
            return exact_sft_ratio(m, from_coords(alg, v), p, q);
        };
        a.coords = polish(a.coords, cfg.polish_iters, exact);
        Slot s;
        s.coords = a.coords;
        s.side = side;
        s.ratio = exact(a.coords);
        s.trace = a.trace;
        s.trace.ratio = s.ratio;
        slots[idx] = std::move(s);
    });

    std::vector<RestartTrace> traces;
    traces.reserve(total);
    double max_ratio = best_ratio;
    for (const auto& s : slots) {
        traces.push_back(s.trace);
        max_ratio = std::max(max_ratio, s.ratio);
    }
    // candidates win rounding-level ties: an ascent that beats an exact
    // extremizer by ~1e-16 should not displace it as the reported element
    const double tie = 1e-12 * (1.0 + std::abs(max_ratio));
    if (best_ratio < max_ratio - tie) {
        for (const auto& s : slots)
            if (s.ratio > best_ratio) {
                best_ratio = s.ratio;
                best = from_coords(m.algebra(s.side), s.coords);
            }
    }

    SearchResult res{best_ratio, *best, FamilyLabel::NoFamily, 0, 0.0, 0.0, std::move(traces)};
    const double np = pnorm(res.best_element, p);
    res.best_element = scale(1.0 / np, res.best_element);
    res.best_ratio = exact_sft_ratio(m, res.best_element, p, q);
    res.k_reference = k_value(inv_from_p(p), inv_from_p(q), m.delta());
    res.gap = res.k_reference - res.best_ratio;
    const Classification cls = classify(m, res.best_element, p, q);
    res.classification = cls.family;
    res.table_row = cls.table_row;
    return res;
}

std::vector<SweepRow> sweep_grid(const PlanarModel& m, const std::vector<RegionPoint>& grid,
                                 const SearchConfig& cfg) {
    cfg.validate();
    if (grid.empty()) fail(Errc::ConfigInvalid, "sweep needs a non-empty grid");
    std::vector<SweepRow> rows(grid.size());
    par::for_index(grid.size(), cfg.jobs, [&](std::size_t i) {
        const RegionPoint& rp = grid[i];
        SearchConfig point_cfg = cfg;
        point_cfg.jobs = 1;
        point_cfg.seed = mix_seed(cfg.seed, i);
        const double p = p_from_inv(rp.inv_p), q = p_from_inv(rp.inv_q);
        const SearchResult r = maximize_ratio(m, p, q, point_cfg);
        SweepRow row;
        row.inv_p = rp.inv_p;
        row.inv_q = rp.inv_q;
        row.region = rp.region;
        row.k = r.k_reference;
        row.empirical_c = r.best_ratio;
        row.gap = r.gap;
        row.family = r.classification;
        row.matched = r.classification == table_row(rp.inv_p, rp.inv_q).label;
        row.restarts = cfg.restarts;
        row.converged_count = 0;
        for (const auto& t : r.traces) row.converged_count += t.converged ? 1 : 0;
        row.seed = point_cfg.seed;
        rows[i] = row;
    });
    return rows;
}

YoungResult estimate_young_constant(const PlanarModel& m, double p, double q, double r,
                                    const SearchConfig& cfg) {
    cfg.validate();
    for (double e : {p, q, r})
        if (std::isnan(e) || e <= 0.0) fail(Errc::ConfigInvalid, "exponents must be positive");

    auto ratio_of = [&](const Element& x, const Element& y) {
        const double nx = pnorm(x, p), ny = pnorm(y, q);
        if (!(nx > 0.0) || !(ny > 0.0)) return 0.0;
        return pnorm(conv(m, x, y), r) / (nx * ny);
    };

    const std::vector<Element> cands = structured_candidates(m, p, q);
    std::vector<RestartTrace> traces;
    double best = -1.0;
    std::optional<std::pair<Element, Element>> best_pair;
    auto consider = [&](const Element& x, const Element& y) {
        if (!same_algebra(x, y)) return;
        const double v = ratio_of(x, y);
        if (v > best) {
            best = v;
            best_pair = {x, y};
        }
    };
    for (const Element& x : cands)
        for (const Element& y : cands) consider(x, y);

    // convolution by a fixed element as a coordinate matrix
    auto conv_matrix = [&](const Element& fixed, bool fixed_on_right) {
        const AlgebraPtr alg = fixed.algebra();
        const std::size_t d = alg->coord_count();
        Matrix mat(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t j = 0; j < d; ++j) {
            CVector e = CVector::Zero(static_cast<Eigen::Index>(d));
            e(static_cast<Eigen::Index>(j)) = 1.0;
            const Element basis = from_coords(alg, e);
            mat.col(static_cast<Eigen::Index>(j)) =
                to_coords(fixed_on_right ? conv(m, basis, fixed) : conv(m, fixed, basis));
        }
        return mat;
    };

    auto alternate = [&](Element x, Element y, RestartTrace& trace) {
        double value = ratio_of(x, y);
        for (int round = 0; round < 8; ++round) {
            // maximize over x with y fixed
            {
                const Matrix cm = conv_matrix(y, true);
                RatioObjective obj;
                obj.src = obj.dst = x.algebra().get();
                obj.map = &cm;
                obj.p = p;
                obj.q = r;
                obj.eps = cfg.eps_smooth;
                SearchConfig inner = cfg;
                inner.max_iters = std::min(cfg.max_iters, 400);
                AscentOutcome a = ascend(obj, to_coords(x), inner);
                const AlgebraPtr alg = x.algebra();
                auto exact = [&](const CVector& v) {
                    return ratio_of(from_coords(alg, v), y);
                };
                a.coords = polish(a.coords, cfg.polish_iters / 2, exact);
                x = from_coords(alg, a.coords);
                trace.iterations += a.trace.iterations;
            }
            // maximize over y with x fixed
            {
                const Matrix cm = conv_matrix(x, false);
                RatioObjective obj;
                obj.src = obj.dst = y.algebra().get();
                obj.map = &cm;
                obj.p = q;
                obj.q = r;
                obj.eps = cfg.eps_smooth;
                SearchConfig inner = cfg;
                inner.max_iters = std::min(cfg.max_iters, 400);
                AscentOutcome a = ascend(obj, to_coords(y), inner);
                const AlgebraPtr alg = y.algebra();
                auto exact = [&](const CVector& v) {
                    return ratio_of(x, from_coords(alg, v));
                };
                a.coords = polish(a.coords, cfg.polish_iters / 2, exact);
                y = from_coords(alg, a.coords);
                trace.iterations += a.trace.iterations;
            }
            const double next = ratio_of(x, y);
            if (next <= value + 1e-12 * (1.0 + std::abs(value))) {
                value = std::max(value, next);
                trace.converged = true;
                break;
            }
            value = next;
        }
        trace.ratio = value;
        consider(x, y);
    };

    // seed from the best candidate pair plus random pairs
    if (best_pair) {
        RestartTrace t;
        alternate(best_pair->first, best_pair->second, t);
        traces.push_back(t);
    }
    const int random_restarts = std::max(0, cfg.restarts / 5);
    for (int i = 0; i < random_restarts; ++i) {
        const PlanarModel::Side side =
            i % 2 == 0 ? PlanarModel::Side::plus : PlanarModel::Side::minus;
        const AlgebraPtr alg = m.algebra(side);
        Element x = random_element(alg, RandomKind::generic, mix_seed(cfg.seed, 7000 + 2 * i));
        Element y = random_element(alg, RandomKind::generic, mix_seed(cfg.seed, 7001 + 2 * i));
        RestartTrace t;
        alternate(std::move(x), std::move(y), t);
        traces.push_back(t);
    }

    YoungResult res{best, scale(1.0 / pnorm(best_pair->first, p), best_pair->first),
                    scale(1.0 / pnorm(best_pair->second, q), best_pair->second),
                    1.0 / m.delta(), std::move(traces)};
    return res;
}

std::vector<ValidityRow> up2_validity_map(const PlanarModel& m,
                                          const std::vector<RegionPoint>& grid, int samples,
                                          std::uint64_t seed, int jobs) {
    if (samples < 1) fail(Errc::ConfigInvalid, "validity map needs samples >= 1");
    std::vector<RegionPoint> usable;
    for (const RegionPoint& rp : grid) {
        if (rp.inv_p + rp.inv_q < 1.0 - 1e-12)
            fail(Errc::OutOfRegion, "validity map grid needs 1/p + 1/q >= 1");
        const double p = p_from_inv(rp.inv_p), q = p_from_inv(rp.inv_q);
        if (std::abs(p - 2.0) < 1e-6 || std::abs(q - 2.0) < 1e-6) continue; // degenerate order
        usable.push_back(rp);
    }
    const std::vector<Element> cands = structured_candidates(m, 2.0, 2.0);
    std::vector<ValidityRow> rows(usable.size());
    par::for_index(usable.size(), jobs, [&](std::size_t i) {
        const RegionPoint& rp = usable[i];
        const double p = p_from_inv(rp.inv_p), q = p_from_inv(rp.inv_q);
        ValidityRow row;
        row.inv_p = rp.inv_p;
        row.inv_q = rp.inv_q;
        row.region = rp.region;
        row.k = k_value(rp.inv_p, rp.inv_q, m.delta());
        row.samples = samples;
        row.seed = seed;
        double min_slack = kPInfinity;
        std::uint64_t witness = 0;
        std::string regime;
        auto probe = [&](const Element& x) {
            const double n2 = pnorm(x, 2.0);
            if (!(n2 > 0.0)) return;
            const Element xn = scale(1.0 / n2, x);
            const CheckReport rep = check_up2(m, xn, p, q);
            // earlier probes keep the witness across rounding-level ties
            const double tie = 1e-12 * (1.0 + std::abs(rep.slack));
            if (rep.slack < min_slack - tie) witness = element_hash(xn);
            min_slack = std::min(min_slack, rep.slack);
            regime = rep.regime;
        };
        for (const Element& c : cands) probe(c);
        for (int s = 0; s < samples; ++s) {
            const PlanarModel::Side side =
                s % 2 == 0 ? PlanarModel::Side::plus : PlanarModel::Side::minus;
            probe(random_element(m.algebra(side), RandomKind::generic,
                                 mix_seed(seed, 10000 + static_cast<std::uint64_t>(s))));
        }
        row.min_slack = min_slack;
        row.witness_hash = witness;
        row.regime = regime;
        rows[i] = row;
    });
    return rows;
}

GradientCheckReport gradient_check(const PlanarModel& m, double p, double q, int samples,
                                   std::uint64_t seed) {
    if (std::isinf(p) || std::isinf(q) || p <= 1.0 || q <= 1.0)
        fail(Errc::ConfigInvalid, "gradient check needs finite p, q > 1");
    GradientCheckReport rep;
    rep.samples = samples;
    const double h = 1e-6;
    for (int s = 0; s < samples; ++s) {
        const PlanarModel::Side side =
            s % 2 == 0 ? PlanarModel::Side::plus : PlanarModel::Side::minus;
        const AlgebraPtr alg = m.algebra(side);
        // resample until every block has well-separated singular values
        Element x = Element::zero(alg);
        bool found = false;
        for (int attempt = 0; attempt < 100 && !found; ++attempt) {
            x = random_element(alg, RandomKind::generic,
                               mix_seed(seed, 100 * static_cast<std::uint64_t>(s) + attempt));
            const SingularData sd = singular_data(x);
            found = true;
            for (const auto& v : sd.sv) {
                for (Eigen::Index i = 0; i + 1 < v.size(); ++i)
                    if (v(i) - v(i + 1) < 1e-3 * sd.sigma_max) found = false;
                if (v(v.size() - 1) < 1e-3 * sd.sigma_max) found = false;
            }
        }
        const RatioObjective obj = make_sft_objective(m, side, p, q, 1e-12);
        CVector v = to_coords(x);
        v.normalize();
        const CVector g = obj.gradient(v);
        for (Eigen::Index c = 0; c < v.size(); ++c) {
            for (int part = 0; part < 2; ++part) {
                const Complex dir = part == 0 ? Complex(1, 0) : Complex(0, 1);
                CVector up = v, dn = v;
                up(c) += h * dir;
                dn(c) -= h * dir;
                const double fd = (obj.value(up) - obj.value(dn)) / (2.0 * h);
                const double an = part == 0 ? g(c).real() : g(c).imag();
                const double denom = std::max({std::abs(an), std::abs(fd), 1e-8});
                const double rel = std::abs(an - fd) / denom;
                ++rep.coords_total;
                if (rel <= 1e-5) ++rep.coords_passed;
                rep.worst_rel_err = std::max(rep.worst_rel_err, rel);
            }
        }
    }
    rep.pass_fraction =
        rep.coords_total == 0 ? 0.0 : static_cast<double>(rep.coords_passed) / rep.coords_total;
    return rep;
}

} // namespace ncfa
