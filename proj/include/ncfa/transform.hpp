#pragma once

#include "ncfa/models.hpp"

namespace ncfa {

/// Direction of the string Fourier transform; backward is the linear
/// inverse of forward, so backward(forward(x)) = x.
enum class Direction { forward, backward };

/// Apply the SFT in the stated direction; the element must belong to the
/// direction's source algebra.
Element sft(const PlanarModel& m, const Element& x, Direction dir);
/// Direction-dispatching overload: plus-side elements go forward, minus-side
/// elements backward.
Element sft(const PlanarModel& m, const Element& x);

Element sft_inverse(const PlanarModel& m, const Element& y, Direction dir);
Element sft_inverse(const PlanarModel& m, const Element& y);

/// Convolution. On the plus side of a group model this is the convolution
/// of functions (x*y)(g) = sum_h x(h) y(h^{-1} g) / delta; elsewhere it is
/// transported so that sft(x*y) = sft(x) sft(y).
Element conv(const PlanarModel& m, const Element& x, const Element& y);

struct ValidationReport {
    int samples = 0;
    double plancherel_dev = 0.0; ///< max | ||Fx||_2 - ||x||_2 |
    double inverse_dev = 0.0;    ///< max entry of F^{-1}F x - x
    double exchange_dev = 0.0;   ///< max entry of F(x*y) - F(x)F(y)
    double young_dev = 0.0;      ///< max violation of ||x*y||_r <= ||x||_p ||y||_q / delta
    bool tl_index_delta = true;  ///< for TL models: whether delta is an index value
    bool ok(double tol = 1e-9) const {
        return plancherel_dev <= tol && inverse_dev <= tol && exchange_dev <= tol &&
               young_dev <= tol;
    }
};

/// Random-sample audit of the transform axioms.
ValidationReport validate_model(const PlanarModel& m, int samples, std::uint64_t seed);

} // namespace ncfa
