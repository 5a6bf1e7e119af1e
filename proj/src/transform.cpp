#include "ncfa/transform.hpp"

#include <algorithm>
#include <cmath>

namespace ncfa {

namespace {

Element apply_forward(const PlanarModel& m, const Element& x) {
    return from_coords(m.minus(), m.forward_matrix() * to_coords(x));
}

Element apply_backward(const PlanarModel& m, const Element& y) {
    return from_coords(m.plus(), m.backward_matrix() * to_coords(y));
}

} // namespace

Element sft(const PlanarModel& m, const Element& x, Direction dir) {
    const PlanarModel::Side side = m.side_of(x);
    if (dir == Direction::forward) {
        if (side != PlanarModel::Side::plus)
            fail(Errc::AlgebraMismatch, "forward SFT expects a plus-side element");
        return apply_forward(m, x);
    }
    if (side != PlanarModel::Side::minus)
        fail(Errc::AlgebraMismatch, "backward SFT expects a minus-side element");
    return apply_backward(m, x);
}

Element sft(const PlanarModel& m, const Element& x) {
    return m.side_of(x) == PlanarModel::Side::plus ? apply_forward(m, x) : apply_backward(m, x);
}

Element sft_inverse(const PlanarModel& m, const Element& y, Direction dir) {
    const PlanarModel::Side side = m.side_of(y);
    if (dir == Direction::forward) {
        if (side != PlanarModel::Side::minus)
            fail(Errc::AlgebraMismatch, "inverse of the forward SFT expects a minus-side element");
        return apply_backward(m, y);
    }
    if (side != PlanarModel::Side::plus)
        fail(Errc::AlgebraMismatch, "inverse of the backward SFT expects a plus-side element");
    return apply_forward(m, y);
}

Element sft_inverse(const PlanarModel& m, const Element& y) {
    return m.side_of(y) == PlanarModel::Side::minus ? apply_backward(m, y) : apply_forward(m, y);
}

Element conv(const PlanarModel& m, const Element& x, const Element& y) {
    if (!same_algebra(x, y)) fail(Errc::AlgebraMismatch, "convolution needs one algebra");
    const PlanarModel::Side side = m.side_of(x);
    if (m.is_group_model() && side == PlanarModel::Side::plus) {
        const int n = m.group_order();
        std::vector<Matrix> d(static_cast<std::size_t>(n), Matrix(1, 1));
        for (int g = 0; g < n; ++g) {
            Complex acc = 0.0;
            for (int h = 0; h < n; ++h)
                acc += x.block(h)(0, 0) * y.block(m.group_mul(m.group_inv(h), g))(0, 0);
            d[static_cast<std::size_t>(g)](0, 0) = acc / m.delta();
        }
        return Element(m.plus(), std::move(d));
    }
    // transport through the exchange identity sft(x*y) = sft(x) sft(y)
    const Element product = multiply(sft(m, x), sft(m, y));
    return side == PlanarModel::Side::plus ? apply_backward(m, product)
                                           : apply_forward(m, product);
}

ValidationReport validate_model(const PlanarModel& m, int samples, std::uint64_t seed) {
    if (samples < 1) fail(Errc::ConfigInvalid, "validate_model needs samples >= 1");
    ValidationReport rep;
    rep.samples = samples;
    rep.tl_index_delta = m.kind() == ModelKind::tl ? m.tl_index_delta() : true;
    const double delta = m.delta();
    // (p, q, r) with 1/r + 1 = 1/p + 1/q and 1 <= p,q,r <= inf
    const double inf = kPInfinity;
    const double young_pqr[][3] = {
        {1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, inf}, {1, inf, inf}, {4.0 / 3.0, 2, 4}};
    for (int s = 0; s < samples; ++s) {
        for (PlanarModel::Side side : {PlanarModel::Side::plus, PlanarModel::Side::minus}) {
            const AlgebraPtr& alg = m.algebra(side);
            const std::uint64_t base = mix_seed(seed, 4 * static_cast<std::uint64_t>(s) +
                                                          (side == PlanarModel::Side::plus ? 0 : 1));
            const Element x = random_element(alg, RandomKind::generic, base);
            const Element y = random_element(alg, RandomKind::generic, mix_seed(base, 1));
            const Element fx = sft(m, x);
            rep.plancherel_dev =
                std::max(rep.plancherel_dev, std::abs(pnorm(fx, 2.0) - pnorm(x, 2.0)));
            rep.inverse_dev = std::max(rep.inverse_dev, max_abs_diff(sft_inverse(m, fx), x));
            const Element xy = conv(m, x, y);
            rep.exchange_dev =
                std::max(rep.exchange_dev, max_abs_diff(sft(m, xy), multiply(fx, sft(m, y))));
            for (const auto& pqr : young_pqr) {
                const double lhs = pnorm(xy, pqr[2]);
                const double rhs = pnorm(x, pqr[0]) * pnorm(y, pqr[1]) / delta;
                const double scale = 1.0 + std::abs(lhs) + std::abs(rhs);
                rep.young_dev = std::max(rep.young_dev, (lhs - rhs) / scale);
            }
        }
    }
    rep.young_dev = std::max(rep.young_dev, 0.0);
    return rep;
}

} // namespace ncfa
