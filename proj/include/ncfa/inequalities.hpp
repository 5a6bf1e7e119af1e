#pragma once

#include <string>
#include <vector>

#include "ncfa/transform.hpp"

namespace ncfa {

/// Partition of the (1/p, 1/q) quadrant. Shared boundaries and the two
/// distinguished points get their own tags.
enum class Region {
    RF,
    RT,
    RTF,
    BoundaryRF_RT,   ///< 1/p + 1/q = 1, 1/2 <= 1/p <= 1
    BoundaryRF_RTF,  ///< 1/q = 1/2, 1/p <= 1/2
    BoundaryRT_RTF,  ///< 1/p = 1/2, 1/q >= 1/2
    CriticalCenter,  ///< (1/2, 1/2)
    CriticalExtremal ///< (1, 0)
};

const char* region_name(Region r);
Region region_from_name(const std::string& name);

struct RegionPoint {
    double inv_p = 0.0; ///< 1/p, with 0 encoding p = infinity
    double inv_q = 0.0;
    Region region = Region::RF;

    static RegionPoint make(double inv_p, double inv_q);
};

/// Exponent from its reciprocal; 0 maps to infinity.
inline double p_from_inv(double inv) { return inv == 0.0 ? kPInfinity : 1.0 / inv; }
inline double inv_from_p(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

/// The piecewise norm constant: delta^{1-2/p} on R_F, delta^{2/q-1} on R_T,
/// delta^{2/q-2/p} on R_TF. On shared boundaries all applicable formulas
/// agree; they are evaluated together and checked for consistency.
double k_value(double inv_p, double inv_q, double delta);
inline double k_value(const RegionPoint& rp, double delta) {
    return k_value(rp.inv_p, rp.inv_q, delta);
}

/// Orientation of a numeric inequality check. slack is the signed margin of
/// satisfaction: rhs - lhs for "lhs <= rhs", lhs - rhs for "lhs >= rhs",
/// -|lhs - rhs| for equalities. holds iff slack >= -tolerance.
enum class Sense { leq, geq, eq };

struct CheckReport {
    std::string name;
    std::string model;
    double inv_p = 0.0, inv_q = 0.0;
    double lhs = 0.0, rhs = 0.0;
    Sense sense = Sense::leq;
    double slack = 0.0;
    bool holds = false;
    double tolerance = 0.0;
    std::string regime;     ///< up2 validity regime or an equality marker
    std::uint64_t element_hash = 0;
    std::uint64_t seed = 0;
    double identity_dev = 0.0; ///< up1: deviation of the entropy/log-norm identity
    bool equality = false;     ///< extremizer-equality flag where meaningful
};

CheckReport make_report(std::string name, Sense sense, double lhs, double rhs, double tol);

/// Both sides of K(1/q,1/p)^{-1} ||x||_p <= ||F x||_q <= K(1/p,1/q) ||x||_p;
/// first the upper bound, then the lower.
std::pair<CheckReport, CheckReport> check_norm_bounds(const PlanarModel& m, const Element& x,
                                                      double p, double q);

/// ||F x||_q <= delta^{1-2/p} ||x||_p at the conjugate exponent q = p/(p-1),
/// for 1 <= p <= 2; equality exactly on bishifts of biprojections.
CheckReport check_hausdorff_young(const PlanarModel& m, const Element& x, double p);

/// (1/p-1/2) h_{p/2}(|x|^2) + (1/2-1/q) h_{q/2}(|Fx|^2) >= -log K(1/p,1/q).
/// Also verifies the algebraic identity lhs = log||x||_p - log||Fx||_q and
/// records the deviation.
CheckReport check_up1(const PlanarModel& m, const Element& x, double p, double q);

/// h_{p/2}(|x|^2) + h_{q/2}(|Fx|^2) >= (-1 + 2/(2-p) + 2/(2-q)) log delta^2
/// for ||x||_2 = 1 and 1/p + 1/q >= 1. The regime field reports whether the
/// proof's interpolation stays on one branch of the Renyi order (q >= 2 or
/// the conjugate line) or crosses order 1.
CheckReport check_up2(const PlanarModel& m, const Element& x, double p, double q);

/// Donoho-Stark: S(x) S(F x) >= delta^2, equality on bishifts.
CheckReport check_ds(const PlanarModel& m, const Element& x);

/// Hirschman-Beckner: H(|x|^2) + H(|Fx|^2) >= 2 log delta for ||x||_2 = 1.
CheckReport check_hb(const PlanarModel& m, const Element& x);

/// The two one-sided bounds between ||x||_1 and ||x||_p (direction depends
/// on p <=> 1); returned as (lower, upper). Equality at p != 1 flags
/// multiples of trace-one projections.
std::pair<CheckReport, CheckReport> check_lemma_norm1(const Element& x, double p);

/// Non-increase of p -> h_p(x) - log(delta^2)/(1-p) along a grid contained
/// in one branch (0,1) or (1,inf); needs ||x||_inf <= 1.
CheckReport check_monotone_43(const Element& x, const std::vector<double>& grid);

enum class UnitaryLineCase {
    fix_q2, ///< ||F x||_2 = delta^{1-2/p} ||x||_p, p > 2  <=>  x ~ unitary
    fix_p2  ///< ||F x||_q = delta^{2/q-1} ||x||_2, q < 2  <=>  F x ~ unitary
};
CheckReport check_unitary_line(const PlanarModel& m, const Element& x, double exponent,
                               UnitaryLineCase which);

} // namespace ncfa
