#include "ncfa/extremizers.hpp"

#include <algorithm>
#include <cmath>

namespace ncfa {

namespace {

double scale_of(const Element& x) { return 1.0 + max_abs(x); }

} // namespace

const char* family_name(FamilyLabel f) {
    switch (f) {
        case FamilyLabel::TraceOneProjection: return "TraceOneProjection";
        case FamilyLabel::BishiftOfBiprojection: return "BishiftOfBiprojection";
        case FamilyLabel::ExtremalElement: return "ExtremalElement";
        case FamilyLabel::Anything: return "Anything";
        case FamilyLabel::FTOfTraceOneProjection: return "FTOfTraceOneProjection";
        case FamilyLabel::ExtremalUnitary: return "ExtremalUnitary";
        case FamilyLabel::Unitary: return "Unitary";
        case FamilyLabel::FTOfUnitary: return "FTOfUnitary";
        case FamilyLabel::Biunitary: return "Biunitary";
        case FamilyLabel::NoFamily: return "NoFamily";
    }
    return "?";
}

FamilyLabel family_from_name(const std::string& name) {
    for (FamilyLabel f :
         {FamilyLabel::TraceOneProjection, FamilyLabel::BishiftOfBiprojection,
          FamilyLabel::ExtremalElement, FamilyLabel::Anything, FamilyLabel::FTOfTraceOneProjection,
          FamilyLabel::ExtremalUnitary, FamilyLabel::Unitary, FamilyLabel::FTOfUnitary,
          FamilyLabel::Biunitary, FamilyLabel::NoFamily})
        if (name == family_name(f)) return f;
    fail(Errc::ParseError, "unknown family name: " + name);
}

bool is_projection(const Element& x, double tol) {
    const double s = scale_of(x);
    return max_abs_diff(x, adjoint(x)) <= tol * s &&
           max_abs_diff(multiply(x, x), x) <= tol * (s + s * s);
}

bool is_unitary(const Element& x, double tol) {
    return max_abs_diff(abs_element(x), Element::identity(x.algebra())) <= tol * scale_of(x);
}

bool is_trace_one_projection(const Element& x, double tol) {
    return is_projection(x, tol) && std::abs(trace(x) - Complex(1.0, 0.0)) <= tol;
}

bool is_biprojection(const PlanarModel& m, const Element& x, double tol) {
    if (!is_projection(x, tol)) return false;
    const Element fx = sft(m, x);
    const double top = pnorm(fx, kPInfinity);
    if (top <= 0.0) return false;
    return is_projection(scale(1.0 / top, fx), tol);
}

bool is_shift(const PlanarModel& m, const Element& x, const Element& biprojection,
              ShiftSide side, double tol) {
    if (!is_biprojection(m, biprojection, tol))
        fail(Errc::NotABiprojection, "reference element is not a biprojection");
    if (!is_projection(x, tol)) return false;
    const Complex tx = trace(x), tb = trace(biprojection);
    if (std::abs(tx - tb) > tol * (1.0 + std::abs(tb))) return false;
    const Element lhs = side == ShiftSide::left ? conv(m, x, biprojection)
                                                : conv(m, biprojection, x);
    const Element rhs = scale(tb / m.delta(), x);
    return max_abs_diff(lhs, rhs) <= tol * scale_of(rhs);
}

bool is_bishift_via_ds(const PlanarModel& m, const Element& x, double tol) {
    if (is_zero(x)) fail(Errc::ZeroElement, "is_bishift_via_ds needs a nonzero element");
    const double d2 = m.delta() * m.delta();
    return std::abs(support(x) * support(sft(m, x)) - d2) <= tol * d2;
}

bool is_biunitary(const PlanarModel& m, const Element& x, double tol) {
    return is_unitary(x, tol) && is_unitary(sft(m, x), tol);
}

bool is_extremal(const PlanarModel& m, const Element& x, double tol) {
    if (is_zero(x)) fail(Errc::ZeroElement, "is_extremal needs a nonzero element");
    const double lhs = pnorm(sft(m, x), kPInfinity);
    const double rhs = pnorm(x, 1.0) / m.delta();
    return std::abs(lhs - rhs) <= tol * (1.0 + lhs + rhs);
}

bool is_multiple_of_trace_one_projection(const Element& x, double tol) {
    if (is_zero(x)) return false;
    const Element proj = range_projection(x);
    const Complex tp = trace(proj);
    if (std::abs(tp - Complex(1.0, 0.0)) > tol) return false;
    const Complex c = trace(x) / tp;
    return max_abs_diff(x, scale(c, proj)) <= tol * scale_of(x);
}

bool is_multiple_of_unitary(const Element& x, double tol) {
    const SingularData s = singular_data(x);
    if (s.sigma_max <= 0.0) return false;
    double lo = s.sigma_max;
    for (const auto& v : s.sv)
        for (Eigen::Index i = 0; i < v.size(); ++i) lo = std::min(lo, v(i));
    return s.sigma_max - lo <= tol * s.sigma_max;
}

bool is_multiple_of_biunitary(const PlanarModel& m, const Element& x, double tol) {
    return is_multiple_of_unitary(x, tol) && is_multiple_of_unitary(sft(m, x), tol);
}

TableRow table_row(double ip, double iq) {
    constexpr double e = 1e-12;
    if (!(ip >= 0.0) || !(iq >= 0.0)) fail(Errc::POutOfRange, "reciprocals must be nonnegative");
    const double sum = ip + iq;
    if (std::abs(ip - 1.0) <= e && iq <= e) return {3, FamilyLabel::ExtremalElement};
    if (std::abs(ip - 0.5) <= e && std::abs(iq - 0.5) <= e) return {4, FamilyLabel::Anything};
    if (iq <= e) {
        if (ip < 1.0 - e) return {6, FamilyLabel::ExtremalUnitary};
        return {1, FamilyLabel::TraceOneProjection}; // 1/p > 1, sum > 1
    }
    if (std::abs(sum - 1.0) <= e && ip > 0.5 + e && ip < 1.0 - e)
        return {2, FamilyLabel::BishiftOfBiprojection};
    if (sum > 1.0 + e && ip > 0.5 + e) return {1, FamilyLabel::TraceOneProjection};
    if (std::abs(iq - 0.5) <= e && ip < 0.5 - e) return {7, FamilyLabel::Unitary};
    if (std::abs(ip - 0.5) <= e && iq > 0.5 + e) return {8, FamilyLabel::FTOfUnitary};
    if (iq > 0.5 + e && ip < 0.5 - e) return {9, FamilyLabel::Biunitary};
    if (sum < 1.0 - e && iq > e && iq < 0.5 - e) return {5, FamilyLabel::FTOfTraceOneProjection};
    // numerically on a region boundary not matched above; fall back by region
    const RegionPoint rp = RegionPoint::make(ip, iq);
    switch (rp.region) {
        case Region::RT: return {1, FamilyLabel::TraceOneProjection};
        case Region::RTF: return {9, FamilyLabel::Biunitary};
        default: return {5, FamilyLabel::FTOfTraceOneProjection};
    }
}

namespace {

bool family_predicate(FamilyLabel f, const PlanarModel& m, const Element& x, double tol) {
    switch (f) {
        case FamilyLabel::TraceOneProjection:
            return is_multiple_of_trace_one_projection(x, tol);
        case FamilyLabel::BishiftOfBiprojection:
            return is_bishift_via_ds(m, x, tol);
        case FamilyLabel::ExtremalElement:
            return is_extremal(m, x, tol);
        case FamilyLabel::Anything:
            return true;
        case FamilyLabel::FTOfTraceOneProjection:
            return is_multiple_of_trace_one_projection(sft_inverse(m, x), tol);
        case FamilyLabel::ExtremalUnitary:
            return is_extremal(m, x, tol) && is_multiple_of_unitary(x, tol);
        case FamilyLabel::Unitary:
            return is_multiple_of_unitary(x, tol);
        case FamilyLabel::FTOfUnitary:
            return is_multiple_of_unitary(sft_inverse(m, x), tol);
        case FamilyLabel::Biunitary:
            return is_multiple_of_biunitary(m, x, tol);
        case FamilyLabel::NoFamily:
            return false;
    }
    return false;
}

} // namespace

Classification classify(const PlanarModel& m, const Element& x, double p, double q, double tol) {
    if (is_zero(x)) fail(Errc::ZeroElement, "classify needs a nonzero element");
    // families are defined up to scale; normalize before testing
    const Element xn = scale(1.0 / pnorm(x, 2.0), x);
    Classification c;
    const TableRow row = table_row(inv_from_p(p), inv_from_p(q));
    c.table_row = row.row_index;
    c.family = family_predicate(row.label, m, xn, tol) ? row.label : FamilyLabel::NoFamily;
    for (FamilyLabel f :
         {FamilyLabel::TraceOneProjection, FamilyLabel::BishiftOfBiprojection,
          FamilyLabel::ExtremalElement, FamilyLabel::Anything, FamilyLabel::FTOfTraceOneProjection,
          FamilyLabel::ExtremalUnitary, FamilyLabel::Unitary, FamilyLabel::FTOfUnitary,
          FamilyLabel::Biunitary})
        if (family_predicate(f, m, xn, tol)) c.matched.push_back(f);
    c.norm_p = pnorm(x, p);
    c.norm_q = pnorm(sft(m, x), q);
    c.ratio = c.norm_q / c.norm_p;
    c.k = k_value(inv_from_p(p), inv_from_p(q), m.delta());
    c.gap = c.k - c.ratio;
    return c;
}

} // namespace ncfa
