#pragma once

#include <string>
#include <vector>

#include "ncfa/inequalities.hpp"

namespace ncfa {

/// The nine extremizer families, one per row of the characterization table,
/// plus the rejection label.
enum class FamilyLabel {
    TraceOneProjection,
    BishiftOfBiprojection,
    ExtremalElement,
    Anything,
    FTOfTraceOneProjection,
    ExtremalUnitary,
    Unitary,
    FTOfUnitary,
    Biunitary,
    NoFamily,
};

const char* family_name(FamilyLabel f);
FamilyLabel family_from_name(const std::string& name);

// -- predicates (tol is relative to the element scale) ----------------------

bool is_projection(const Element& x, double tol = 1e-8);
bool is_unitary(const Element& x, double tol = 1e-8);
bool is_trace_one_projection(const Element& x, double tol = 1e-8);
/// x is a projection and sft(x)/sigma_max is a projection.
bool is_biprojection(const PlanarModel& m, const Element& x, double tol = 1e-8);
/// x is a projection with tr(x) = tr(B) and x*B = (tr B/delta) x
/// (left; B*x for right). B must be a biprojection.
bool is_shift(const PlanarModel& m, const Element& x, const Element& biprojection,
              ShiftSide side, double tol = 1e-8);
/// Donoho-Stark equality S(x) S(F x) = delta^2; the scale-invariant
/// membership test for bishifts of biprojections.
bool is_bishift_via_ds(const PlanarModel& m, const Element& x, double tol = 1e-8);
/// |x| = 1 and |sft(x)| = 1.
bool is_biunitary(const PlanarModel& m, const Element& x, double tol = 1e-8);
/// ||F x||_inf = ||x||_1 / delta.
bool is_extremal(const PlanarModel& m, const Element& x, double tol = 1e-8);

// scale-invariant "multiple of" variants used for classification
bool is_multiple_of_trace_one_projection(const Element& x, double tol = 1e-8);
bool is_multiple_of_unitary(const Element& x, double tol = 1e-8);
bool is_multiple_of_biunitary(const PlanarModel& m, const Element& x, double tol = 1e-8);

/// The table row owning a point of the (1/p, 1/q) quadrant (the nine rows
/// partition it). row_index is the 1-based row number.
struct TableRow {
    int row_index;
    FamilyLabel label;
};
TableRow table_row(double inv_p, double inv_q);

struct Classification {
    FamilyLabel family = FamilyLabel::NoFamily;
    int table_row = 0;
    std::vector<FamilyLabel> matched; ///< every family predicate that accepts
    double norm_p = 0.0;              ///< ||x||_p
    double norm_q = 0.0;              ///< ||sft x||_q
    double ratio = 0.0;
    double k = 0.0;
    double gap = 0.0;
};

/// Runs the predicate of the row containing (1/p, 1/q) on x and reports the
/// achieved ratio against K. All nine predicates are evaluated for the
/// matched list.
Classification classify(const PlanarModel& m, const Element& x, double p, double q,
                        double tol = 1e-8);

} // namespace ncfa
