#include "ncfa/inequalities.hpp"

#include <algorithm>
#include <cmath>

namespace ncfa {

namespace {

constexpr double kRegionEps = 1e-12;
constexpr double kEqualityTol = 1e-8; // relative equality detection

double scale_of(double a, double b) { return 1.0 + std::abs(a) + std::abs(b); }

bool in_rf(double ip, double iq) { return ip + iq <= 1.0 + kRegionEps && iq <= 0.5 + kRegionEps; }
bool in_rt(double ip, double iq) { return ip + iq >= 1.0 - kRegionEps && ip >= 0.5 - kRegionEps; }
bool in_rtf(double ip, double iq) { return ip <= 0.5 + kRegionEps && iq >= 0.5 - kRegionEps; }

} // namespace

const char* region_name(Region r) {
    switch (r) {
        case Region::RF: return "RF";
        case Region::RT: return "RT";
        case Region::RTF: return "RTF";
        case Region::BoundaryRF_RT: return "B_RF_RT";
        case Region::BoundaryRF_RTF: return "B_RF_RTF";
        case Region::BoundaryRT_RTF: return "B_RT_RTF";
        case Region::CriticalCenter: return "P_HALF_HALF";
        case Region::CriticalExtremal: return "P_ONE_ZERO";
    }
    return "?";
}

Region region_from_name(const std::string& name) {
    for (Region r : {Region::RF, Region::RT, Region::RTF, Region::BoundaryRF_RT,
                     Region::BoundaryRF_RTF, Region::BoundaryRT_RTF, Region::CriticalCenter,
                     Region::CriticalExtremal})
        if (name == region_name(r)) return r;
    fail(Errc::ParseError, "unknown region name: " + name);
}

RegionPoint RegionPoint::make(double ip, double iq) {
    if (!(ip >= 0.0) || !(iq >= 0.0))
        fail(Errc::POutOfRange, "1/p and 1/q must be nonnegative");
    RegionPoint rp;
    rp.inv_p = ip;
    rp.inv_q = iq;
    const bool rf = in_rf(ip, iq), rt = in_rt(ip, iq), rtf = in_rtf(ip, iq);
    if (std::abs(ip - 0.5) <= kRegionEps && std::abs(iq - 0.5) <= kRegionEps)
        rp.region = Region::CriticalCenter;
    else if (std::abs(ip - 1.0) <= kRegionEps && iq <= kRegionEps)
        rp.region = Region::CriticalExtremal;
    else if (rf && rt)
        rp.region = Region::BoundaryRF_RT;
    else if (rf && rtf)
        rp.region = Region::BoundaryRF_RTF;
    else if (rt && rtf)
        rp.region = Region::BoundaryRT_RTF;
    else if (rf)
        rp.region = Region::RF;
    else if (rt)
        rp.region = Region::RT;
    else
        rp.region = Region::RTF;
    return rp;
}

double k_value(double ip, double iq, double delta) {
    const bool rf = in_rf(ip, iq), rt = in_rt(ip, iq), rtf = in_rtf(ip, iq);
    double value = -1.0;
    auto merge = [&](double v) {
        if (value < 0.0)
            value = v;
        else if (std::abs(v - value) > 1e-12 * (1.0 + value))
            fail(Errc::OutOfRegion, "K formulas disagree on a shared boundary");
    };
    if (rf) merge(std::pow(delta, 1.0 - 2.0 * ip));
    if (rt) merge(std::pow(delta, 2.0 * iq - 1.0));
    if (rtf) merge(std::pow(delta, 2.0 * (iq - ip)));
    if (value < 0.0) fail(Errc::OutOfRegion, "point outside the three regions");
    return value;
}

CheckReport make_report(std::string name, Sense sense, double lhs, double rhs, double tol) {
    CheckReport r;
    r.name = std::move(name);
    r.sense = sense;
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tol;
    switch (sense) {
        case Sense::leq: r.slack = rhs - lhs; break;
        case Sense::geq: r.slack = lhs - rhs; break;
        case Sense::eq: r.slack = -std::abs(lhs - rhs); break;
    }
    r.holds = r.slack >= -tol;
    return r;
}

namespace {

// Renyi entropy of |x|^2 of the given order, straight from the singular
// values of x (the eigenvalues of |x|^2 are their squares). Building the
// matrix |x|^2 and re-decomposing would turn exact zero singular values into
// rounding-level noise, which quasi-norm orders below 1 amplify to ~1e-8.
double renyi_sq(const SingularData& sd, const MarkovAlgebra& alg, double order) {
    if (std::isinf(order)) return -2.0 * std::log(sd.sigma_max);
    if (std::abs(order - 1.0) <= 1e-6) {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < sd.sv.size(); ++k)
            for (Eigen::Index i = 0; i < sd.sv[k].size(); ++i) {
                const double s2 = sd.sv[k](i) * sd.sv[k](i);
                if (s2 > 0.0) {
                    num -= alg.weight(k) * s2 * std::log(s2);
                    den += alg.weight(k) * s2;
                }
            }
        return num / den;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < sd.sv.size(); ++k)
        for (Eigen::Index i = 0; i < sd.sv[k].size(); ++i) {
            const double s = sd.sv[k](i);
            if (s > 0.0) acc += alg.weight(k) * std::pow(s / sd.sigma_max, 2.0 * order);
        }
    const double log_norm_sq = 2.0 * std::log(sd.sigma_max) + std::log(acc) / order;
    return order / (1.0 - order) * log_norm_sq;
}

void stamp(CheckReport& r, const PlanarModel& m, const Element& x, double p, double q) {
    r.model = m.id();
    r.inv_p = inv_from_p(p);
    r.inv_q = inv_from_p(q);
    r.element_hash = element_hash(x);
}

void require_nonzero(const Element& x, const char* who) {
    if (is_zero(x)) fail(Errc::ZeroElement, std::string(who) + " needs a nonzero element");
}

void require_valid_exponent(double p, const char* who) {
    if (std::isnan(p) || p <= 0.0) fail(Errc::NonPositiveP, std::string(who) + ": exponent must be positive");
}

} // namespace

std::pair<CheckReport, CheckReport> check_norm_bounds(const PlanarModel& m, const Element& x,
                                                      double p, double q) {
    require_nonzero(x, "check_norm_bounds");
    require_valid_exponent(p, "check_norm_bounds");
    require_valid_exponent(q, "check_norm_bounds");
    const Element fx = sft(m, x);
    const double np = pnorm(x, p);
    const double nq = pnorm(fx, q);
    const double k_up = k_value(inv_from_p(p), inv_from_p(q), m.delta());
    const double k_lo = k_value(inv_from_p(q), inv_from_p(p), m.delta());

    CheckReport upper = make_report("norm_upper", Sense::leq, nq, k_up * np,
                                    1e-9 * scale_of(nq, k_up * np));
    CheckReport lower = make_report("norm_lower", Sense::leq, np / k_lo, nq,
                                    1e-9 * scale_of(np / k_lo, nq));
    stamp(upper, m, x, p, q);
    stamp(lower, m, x, p, q);
    return {upper, lower};
}

CheckReport check_hausdorff_young(const PlanarModel& m, const Element& x, double p) {
    require_nonzero(x, "check_hausdorff_young");
    if (!(p >= 1.0 - 1e-12 && p <= 2.0 + 1e-12))
        fail(Errc::POutOfRange, "Hausdorff-Young needs 1 <= p <= 2");
    const double q = p <= 1.0 + 1e-12 ? kPInfinity : p / (p - 1.0);
    const Element fx = sft(m, x);
    const double lhs = pnorm(fx, q);
    const double rhs = std::pow(m.delta(), 1.0 - 2.0 / p) * pnorm(x, p);
    CheckReport r = make_report("hy", Sense::leq, lhs, rhs, 1e-9 * scale_of(lhs, rhs));
    r.equality = std::abs(lhs - rhs) <= kEqualityTol * scale_of(lhs, rhs);
    if (r.equality) r.regime = "equality";
    stamp(r, m, x, p, q);
    return r;
}

CheckReport check_up1(const PlanarModel& m, const Element& x, double p, double q) {
    require_nonzero(x, "check_up1");
    require_valid_exponent(p, "check_up1");
    require_valid_exponent(q, "check_up1");
    if (std::abs(p - 2.0) < 1e-6 || std::abs(q - 2.0) < 1e-6)
        fail(Errc::DegenerateOrder, "order p/2 or q/2 too close to 1");
    const Element fx = sft(m, x);
    const SingularData sx = singular_data(x);
    const SingularData sf = singular_data(fx);
    const double coeff_p = std::isinf(p) ? -0.5 : 1.0 / p - 0.5;
    const double coeff_q = std::isinf(q) ? 0.5 : 0.5 - 1.0 / q;
    const double hp = renyi_sq(sx, *x.algebra(), std::isinf(p) ? p : p / 2.0);
    const double hq = renyi_sq(sf, *fx.algebra(), std::isinf(q) ? q : q / 2.0);
    const double lhs = coeff_p * hp + coeff_q * hq;
    const double rhs = -std::log(k_value(inv_from_p(p), inv_from_p(q), m.delta()));
    CheckReport r = make_report("up1", Sense::geq, lhs, rhs, 1e-9 * scale_of(lhs, rhs));
    const double direct = log_pnorm_from(sx, *x.algebra(), p) - log_pnorm_from(sf, *fx.algebra(), q);
    r.identity_dev = std::abs(lhs - direct);
    if (r.identity_dev > 1e-9 * scale_of(lhs, direct))
        throw std::logic_error("up1 entropy form deviates from the log-norm difference");
    stamp(r, m, x, p, q);
    return r;
}

CheckReport check_up2(const PlanarModel& m, const Element& x, double p, double q) {
    require_nonzero(x, "check_up2");
    require_valid_exponent(p, "check_up2");
    require_valid_exponent(q, "check_up2");
    if (!rel_close(pnorm(x, 2.0), 1.0, 1e-9))
        fail(Errc::NotNormalized, "check_up2 needs ||x||_2 = 1");
    const double ip = inv_from_p(p), iq = inv_from_p(q);
    if (ip + iq < 1.0 - 1e-12) fail(Errc::OutOfRegion, "check_up2 needs 1/p + 1/q >= 1");
    if (std::abs(p - 2.0) < 1e-6 || std::abs(q - 2.0) < 1e-6)
        fail(Errc::DegenerateOrder, "order p/2 or q/2 too close to 1");
    const Element fx = sft(m, x);
    const double hp = renyi_sq(singular_data(x), *x.algebra(), std::isinf(p) ? p : p / 2.0);
    const double hq = renyi_sq(singular_data(fx), *fx.algebra(), std::isinf(q) ? q : q / 2.0);
    const double term_p = std::isinf(p) ? 0.0 : 2.0 / (2.0 - p);
    const double term_q = std::isinf(q) ? 0.0 : 2.0 / (2.0 - q);
    const double lhs = hp + hq;
    const double rhs = (-1.0 + term_p + term_q) * std::log(m.delta() * m.delta());
    CheckReport r = make_report("up2", Sense::geq, lhs, rhs, 1e-9 * scale_of(lhs, rhs));
    const bool same_branch = iq <= 0.5 + 1e-12 || std::abs(ip + iq - 1.0) <= 1e-12;
    r.regime = same_branch ? "same_branch" : "cross_branch";
    stamp(r, m, x, p, q);
    return r;
}

CheckReport check_ds(const PlanarModel& m, const Element& x) {
    require_nonzero(x, "check_ds");
    const double lhs = support(x) * support(sft(m, x));
    const double rhs = m.delta() * m.delta();
    CheckReport r = make_report("ds", Sense::geq, lhs, rhs, 1e-9 * scale_of(lhs, rhs));
    r.equality = std::abs(lhs - rhs) <= kEqualityTol * rhs;
    if (r.equality) r.regime = "equality";
    r.model = m.id();
    r.element_hash = element_hash(x);
    return r;
}

CheckReport check_hb(const PlanarModel& m, const Element& x) {
    if (!rel_close(pnorm(x, 2.0), 1.0, 1e-9))
        fail(Errc::NotNormalized, "check_hb needs ||x||_2 = 1");
    const double lhs = von_neumann_entropy(abs_squared(x)) +
                       von_neumann_entropy(abs_squared(sft(m, x)));
    const double rhs = 2.0 * std::log(m.delta());
    CheckReport r = make_report("hb", Sense::geq, lhs, rhs, 1e-9 * scale_of(lhs, rhs));
    r.equality = std::abs(lhs - rhs) <= kEqualityTol * scale_of(lhs, rhs);
    if (r.equality) r.regime = "equality";
    r.model = m.id();
    r.element_hash = element_hash(x);
    return r;
}

std::pair<CheckReport, CheckReport> check_lemma_norm1(const Element& x, double p) {
    require_nonzero(x, "check_lemma_norm1");
    require_valid_exponent(p, "check_lemma_norm1");
    const double delta = x.algebra()->delta();
    const double n1 = pnorm(x, 1.0);
    const double np = pnorm(x, p);
    const double factor = std::isinf(p) ? delta * delta : std::pow(delta, 2.0 - 2.0 / p);
    CheckReport lower, upper;
    if (p <= 1.0) {
        lower = make_report("lemma37_lower", Sense::leq, factor * np, n1,
                            1e-9 * scale_of(factor * np, n1));
        upper = make_report("lemma37_upper", Sense::leq, n1, np, 1e-9 * scale_of(n1, np));
    } else {
        lower = make_report("lemma37_lower", Sense::leq, np, n1, 1e-9 * scale_of(np, n1));
        upper = make_report("lemma37_upper", Sense::leq, n1, factor * np,
                            1e-9 * scale_of(n1, factor * np));
    }
    const bool equality = std::abs(p - 1.0) > 1e-12 &&
                          std::abs(np - n1) <= kEqualityTol * scale_of(np, n1);
    lower.equality = upper.equality = equality;
    lower.inv_p = upper.inv_p = inv_from_p(p);
    lower.element_hash = upper.element_hash = element_hash(x);
    return {lower, upper};
}

CheckReport check_monotone_43(const Element& x, const std::vector<double>& grid) {
    require_nonzero(x, "check_monotone_43");
    if (pnorm(x, kPInfinity) > 1.0 + 1e-12)
        fail(Errc::NormTooLarge, "monotonicity needs ||x||_inf <= 1");
    if (grid.size() < 2) fail(Errc::ConfigInvalid, "grid needs at least two points");
    bool below = true, above = true;
    for (double p : grid) {
        if (!(p > 0.0) || std::abs(p - 1.0) <= 1e-6)
            fail(Errc::GridStraddlesOne, "grid point at or beside 1");
        below = below && p < 1.0;
        above = above && p > 1.0;
    }
    if (!below && !above)
        fail(Errc::GridStraddlesOne, "grid must lie entirely in (0,1) or (1,inf)");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    const double log_d2 = 2.0 * std::log(x.algebra()->delta());
    double prev = 0.0, max_increase = -kPInfinity;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double value = renyi_entropy(x, sorted[i]) - log_d2 / (1.0 - sorted[i]);
        if (i > 0) max_increase = std::max(max_increase, value - prev);
        prev = value;
    }
    CheckReport r = make_report("lemma43_monotone", Sense::leq, max_increase, 0.0, 1e-8);
    r.element_hash = element_hash(x);
    return r;
}

CheckReport check_unitary_line(const PlanarModel& m, const Element& x, double exponent,
                               UnitaryLineCase which) {
    require_nonzero(x, "check_unitary_line");
    require_valid_exponent(exponent, "check_unitary_line");
    const Element fx = sft(m, x);
    double lhs, rhs;
    double p, q;
    if (which == UnitaryLineCase::fix_q2) {
        p = exponent;
        q = 2.0;
        if (inv_from_p(p) >= 0.5) fail(Errc::POutOfRange, "fix_q2 case needs 1/p < 1/2");
        lhs = pnorm(fx, 2.0);
        rhs = std::pow(m.delta(), 1.0 - 2.0 * inv_from_p(p)) * pnorm(x, p);
    } else {
        p = 2.0;
        q = exponent;
        if (inv_from_p(q) <= 0.5) fail(Errc::POutOfRange, "fix_p2 case needs 1/q > 1/2");
        lhs = pnorm(fx, q);
        rhs = std::pow(m.delta(), 2.0 * inv_from_p(q) - 1.0) * pnorm(x, 2.0);
    }
    CheckReport r = make_report("unitary_line", Sense::leq, lhs, rhs, 1e-9 * scale_of(lhs, rhs));
    r.equality = std::abs(lhs - rhs) <= kEqualityTol * scale_of(lhs, rhs);
    if (r.equality) r.regime = "equality";
    stamp(r, m, x, p, q);
    return r;
}

} // namespace ncfa
