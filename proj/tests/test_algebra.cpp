#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/SVD>

#include "ncfa/algebra.hpp"

using namespace ncfa;

namespace {

AlgebraPtr scalar_algebra(int n) {
    std::vector<BlockSpec> blocks(static_cast<std::size_t>(n), BlockSpec{1, 1.0});
    return MarkovAlgebra::make(blocks, std::sqrt(static_cast<double>(n)), "linf");
}

Element diag_element(const AlgebraPtr& a, const std::vector<Complex>& entries) {
    std::vector<Matrix> d;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        Matrix m(1, 1);
        m(0, 0) = entries[k];
        d.push_back(m);
    }
    return Element(a, std::move(d));
}

} // namespace

TEST_CASE("make_algebra validates blocks and trace") {
    CHECK_NOTHROW(MarkovAlgebra::make({{1, 1.0}, {1, 1.0}}, std::sqrt(2.0)));
    // irrep dimensions of S3: 1 + 1 + 4 = 6
    CHECK_NOTHROW(MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0)));
    CHECK_THROWS_AS(MarkovAlgebra::make({{1, 1.0}, {1, 0.5}}, std::sqrt(1.5)), Error);
    CHECK_THROWS_AS(MarkovAlgebra::make({}, 1.0), Error);
    CHECK_THROWS_AS(MarkovAlgebra::make({{1, 1.0}, {1, 1.0}}, 2.0), Error);
    try {
        MarkovAlgebra::make({{1, 1.0}, {1, 0.5}}, std::sqrt(1.5));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::WeightBelowOne);
    }
    try {
        MarkovAlgebra::make({{1, 1.0}, {1, 1.0}}, 2.0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::TraceMismatch);
    }
}

TEST_CASE("trace sums blocks with weights") {
    auto z3 = scalar_algebra(3);
    CHECK(trace(diag_element(z3, {1.0, 2.0, 3.0})) == Complex(6.0, 0.0));
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    CHECK(trace(Element::identity(s3alg)) == Complex(6.0, 0.0));
    // trace of the identity is always delta^2
    CHECK(trace(Element::identity(z3)).real() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("element arithmetic and absolute value") {
    auto z2 = scalar_algebra(2);
    const Element x = diag_element(z2, {-3.0, 4.0});
    const Element ax = abs_element(x);
    CHECK(ax.block(0)(0, 0).real() == doctest::Approx(3.0));
    CHECK(ax.block(1)(0, 0).real() == doctest::Approx(4.0));

    const Element g = random_element(z2, RandomKind::generic, 7);
    CHECK(max_abs_diff(adjoint(adjoint(g)), g) == 0.0);

    const Element u = random_element(z2, RandomKind::unitary, 3);
    CHECK(max_abs_diff(abs_element(u), Element::identity(z2)) < 1e-12);

    // |x| has the same 2-norm as x
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const Element y = random_element(s3alg, RandomKind::generic, 11);
    CHECK(pnorm(abs_element(y), 2.0) == doctest::Approx(pnorm(y, 2.0)).epsilon(1e-12));

    auto z3 = scalar_algebra(3);
    CHECK_THROWS_AS(add(diag_element(z2, {1, 1}), diag_element(z3, {1, 1, 1})), Error);
}

TEST_CASE("pnorm agrees with hand values") {
    auto z2 = scalar_algebra(2);
    const Element x = diag_element(z2, {3.0, 4.0});
    CHECK(pnorm(x, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(pnorm(x, 1.0) == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(pnorm(x, kPInfinity) == doctest::Approx(4.0).epsilon(1e-14));
    // quasi-norm below 1: (2 * (1/2)^{1/2})^2 = 2
    const Element h = diag_element(z2, {0.5, 0.5});
    CHECK(pnorm(h, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    // identity: delta^{2/p}
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const Element one = Element::identity(s3alg);
    for (double p : {0.5, 1.0, 2.0, 3.0})
        CHECK(pnorm(one, p) == doctest::Approx(std::pow(6.0, 1.0 / p)).epsilon(1e-13));
    CHECK_THROWS_AS(pnorm(x, 0.0), Error);
    CHECK_THROWS_AS(pnorm(x, -1.0), Error);
}

TEST_CASE("spectral data invariants") {
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const Element x = random_element(s3alg, RandomKind::self_adjoint, 5);
    const SpectralData sd = spectral(x);
    const double scale = 1.0 + max_abs(x);
    for (std::size_t k = 0; k < x.block_count(); ++k) {
        const Matrix recon = sd.vectors[k] *
                             sd.values[k].cast<Complex>().asDiagonal() *
                             sd.vectors[k].adjoint();
        CHECK((recon - x.block(k)).cwiseAbs().maxCoeff() < 1e-10 * scale);
        const Matrix gram = sd.vectors[k].adjoint() * sd.vectors[k];
        CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-10);
        for (Eigen::Index i = 0; i + 1 < sd.values[k].size(); ++i)
            CHECK(sd.values[k](i) >= sd.values[k](i + 1));
    }
    CHECK_THROWS_AS(spectral(random_element(s3alg, RandomKind::generic, 6)), Error);

    auto z2 = scalar_algebra(2);
    const SpectralData d2 = spectral(diag_element(z2, {2.0, 1.0}));
    CHECK(d2.values[0](0) == doctest::Approx(2.0));
    CHECK(d2.values[1](0) == doctest::Approx(1.0));
}

TEST_CASE("range projection and support") {
    auto z2 = scalar_algebra(2);
    const Element x = diag_element(z2, {0.5, 0.0});
    const Element p = range_projection(x);
    CHECK(p.block(0)(0, 0).real() == doctest::Approx(1.0));
    CHECK(p.block(1)(0, 0).real() == doctest::Approx(0.0));
    CHECK(support(x) == doctest::Approx(1.0));

    auto z4 = scalar_algebra(4);
    CHECK(support(diag_element(z4, {1.0, 0.0, 1.0, 0.0})) == doctest::Approx(2.0));
    CHECK(support(Element::zero(z4)) == 0.0);
    // invertible element has full support
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    CHECK(support(Element::identity(s3alg)) == doctest::Approx(6.0));
    const Element inv = random_element(s3alg, RandomKind::positive, 9);
    const Element rp = range_projection(inv);
    CHECK(max_abs_diff(multiply(rp, rp), rp) < 1e-9);
    CHECK(max_abs_diff(rp, adjoint(rp)) < 1e-10);
}

TEST_CASE("renyi entropy hand values") {
    auto z2 = scalar_algebra(2);
    const double delta2 = 2.0;
    // trace-one projection: zero entropy at every order
    const Element e = diag_element(z2, {1.0, 0.0});
    for (double p : {0.3, 0.5, 2.0, 5.0}) CHECK(renyi_entropy(e, p) == doctest::Approx(0.0));
    // delta^{-2} identity: log delta^2 at every order
    const Element a = diag_element(z2, {0.5, 0.5});
    for (double p : {0.3, 0.5, 2.0, 5.0})
        CHECK(renyi_entropy(a, p) == doctest::Approx(std::log(delta2)).epsilon(1e-12));
    // |u|^2 for unitary u: (1/2, 1/2) at order 2 gives log 2
    CHECK(renyi_entropy(a, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(renyi_entropy(Element::zero(z2), 2.0), Error);
    CHECK_THROWS_AS(renyi_entropy(a, 1.0 + 1e-8), Error);
}

TEST_CASE("von Neumann entropy") {
    auto z2 = scalar_algebra(2);
    CHECK(von_neumann_entropy(diag_element(z2, {1.0, 0.0})) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(diag_element(z2, {0.5, 0.5})) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-13));
    // delta^{-2} identity in a bigger algebra: 2 log delta
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const Element a = scale(1.0 / 6.0, Element::identity(s3alg));
    CHECK(von_neumann_entropy(a) == doctest::Approx(std::log(6.0)).epsilon(1e-13));
    CHECK_THROWS_AS(von_neumann_entropy(diag_element(z2, {-0.5, 0.5})), Error);
}

TEST_CASE("entropy limits") {
    auto z2 = scalar_algebra(2);
    const Element a = diag_element(z2, {0.5, 0.5});
    CHECK(entropy_limit(a, EntropyLimit::max_entropy) == doctest::Approx(std::log(2.0)));
    CHECK(entropy_limit(a, EntropyLimit::vn_limit) == doctest::Approx(std::log(2.0)));
    const Element u = random_element(z2, RandomKind::unitary, 17);
    CHECK(entropy_limit(u, EntropyLimit::min_entropy) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(entropy_limit(Element::zero(z2), EntropyLimit::vn_limit), Error);
}

TEST_CASE("random elements are deterministic and well formed") {
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const Element a = random_element(s3alg, RandomKind::generic, 42);
    const Element b = random_element(s3alg, RandomKind::generic, 42);
    CHECK(max_abs_diff(a, b) == 0.0);
    CHECK(element_hash(a) == element_hash(b));
    CHECK(element_hash(a) != element_hash(random_element(s3alg, RandomKind::generic, 43)));

    const Element u = random_element(s3alg, RandomKind::unitary, 1);
    CHECK(max_abs_diff(abs_element(u), Element::identity(s3alg)) < 1e-10);
    const Element p = random_element(s3alg, RandomKind::projection, 2);
    CHECK(max_abs_diff(multiply(p, p), p) < 1e-10);
    CHECK(max_abs_diff(p, adjoint(p)) < 1e-10);
    CHECK(!is_zero(p));
}

TEST_CASE("Holder inequality on sampled pairs") {
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const double grid[][2] = {{1, 1}, {2, 2}, {3, 1.5}, {4, 4.0 / 3.0}, {0.5, 0.5}};
    for (int s = 0; s < 50; ++s) {
        const Element x = random_element(s3alg, RandomKind::generic, 100 + s);
        const Element y = random_element(s3alg, RandomKind::generic, 200 + s);
        for (const auto& pq : grid) {
            const double r = 1.0 / (1.0 / pq[0] + 1.0 / pq[1]);
            const double lhs = pnorm(multiply(x, y), r);
            const double rhs = pnorm(x, pq[0]) * pnorm(y, pq[1]);
            CHECK(lhs <= rhs + 1e-9 * (1.0 + lhs + rhs));
        }
    }
}

TEST_CASE("Holder equality case via matched pair") {
    // for conjugate p, q and y = |x|^{p/q} u* (x = u|x| the polar parts),
    // ||xy||_1 equals ||x||_p ||y||_q
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    for (double p : {1.5, 2.0, 3.0}) {
        const double q = p / (p - 1.0);
        const Element x = random_element(s3alg, RandomKind::generic, 331);
        std::vector<Matrix> ydata;
        for (std::size_t k = 0; k < x.block_count(); ++k) {
            Eigen::JacobiSVD<Matrix> svd(x.block(k),
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
            const Matrix u = svd.matrixU() * svd.matrixV().adjoint();
            Eigen::VectorXd sv = svd.singularValues();
            for (Eigen::Index i = 0; i < sv.size(); ++i) sv(i) = std::pow(sv(i), p / q);
            const Matrix absxpq =
                svd.matrixV() * sv.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
            ydata.push_back(absxpq * u.adjoint());
        }
        const Element y(s3alg, std::move(ydata));
        const double lhs = pnorm(multiply(x, y), 1.0);
        const double rhs = pnorm(x, p) * pnorm(y, q);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("norm interpolation against the 1-norm") {
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const double delta = std::sqrt(6.0);
    for (int s = 0; s < 40; ++s) {
        const Element x = random_element(s3alg, RandomKind::generic, 500 + s);
        const double n1 = pnorm(x, 1.0);
        for (double p : {0.3, 0.5, 0.8, 1.5, 2.0, 4.0, kPInfinity}) {
            const double np = pnorm(x, p);
            const double factor =
                std::isinf(p) ? delta * delta : std::pow(delta, 2.0 - 2.0 / p);
            const double tol = 1e-9 * (1.0 + n1 + np);
            if (p <= 1.0) {
                CHECK(factor * np <= n1 + tol);
                CHECK(n1 <= np + tol);
            } else {
                CHECK(np <= n1 + tol);
                CHECK(n1 <= factor * np + tol);
            }
        }
    }
    // equality at p != 1 happens exactly for multiples of trace-one projections
    auto z2 = scalar_algebra(2);
    const Element e = scale(Complex(0.0, 2.0), diag_element(z2, {1.0, 0.0}));
    CHECK(pnorm(e, 3.0) == doctest::Approx(pnorm(e, 1.0)).epsilon(1e-12));
    // hand case: x = (3, 4) at p = 1/2
    const Element x34 = diag_element(z2, {3.0, 4.0});
    const double lhs = std::pow(std::sqrt(2.0), 2.0 - 4.0) * pnorm(x34, 0.5);
    CHECK(lhs == doctest::Approx(0.5 * std::pow(std::sqrt(3.0) + 2.0, 2.0)).epsilon(1e-12));
    CHECK(lhs <= 7.0);
    CHECK(7.0 <= pnorm(x34, 0.5));
}

TEST_CASE("pnorm is continuous in p") {
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const double h = 1e-6;
    for (int s = 0; s < 10; ++s) {
        Element x = random_element(s3alg, RandomKind::generic, 900 + s);
        x = scale(1.0 / pnorm(x, 2.0), x);
        for (double p = 0.3; p <= 4.0; p += 0.1)
            CHECK(std::abs(pnorm(x, p + h) - pnorm(x, p)) < 1e4 * h * (1.0 + pnorm(x, p)));
    }
}

TEST_CASE("renyi entropy monotonicity offset per branch") {
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const double log_d2 = std::log(6.0);
    for (int s = 0; s < 20; ++s) {
        Element x = random_element(s3alg, RandomKind::generic, 1200 + s);
        x = scale(1.0 / pnorm(x, kPInfinity), x);
        for (const auto& grid : {std::vector<double>{0.1, 0.2, 0.4, 0.6, 0.8, 0.9},
                                 std::vector<double>{1.2, 1.5, 2.0, 3.0, 5.0, 8.0}}) {
            double prev = kPInfinity;
            for (double p : grid) {
                const double value = renyi_entropy(x, p) - log_d2 / (1.0 - p);
                CHECK(value <= prev + 1e-8);
                prev = value;
            }
        }
    }
}

TEST_CASE("renyi entropy limits match") {
    auto z8 = scalar_algebra(8);
    // conditioned spectra: exact zeros, nonzero entries bounded away from 0
    const Element x = diag_element(z8, {0.9, 0.0, 0.4, 0.0, 0.7, 0.05, 0.0, 0.3});
    const double near0 = renyi_entropy(x, 1e-6);
    CHECK(std::abs(near0 - std::log(support(x))) < 1e-4);
    for (double p : {1.0 - 1e-5, 1.0 + 1e-5}) {
        const double lhs = renyi_entropy(x, p) - std::log(pnorm(x, 1.0)) / (1.0 - p);
        CHECK(std::abs(lhs - entropy_limit(x, EntropyLimit::vn_limit)) < 1e-4);
    }
    // min-entropy
    CHECK(std::abs(renyi_entropy(x, 1e6) - entropy_limit(x, EntropyLimit::min_entropy)) < 1e-4);
}

TEST_CASE("monotonicity does not bridge the two branches") {
    // the offset map is monotone on (0,1) and on (1,inf) separately, but
    // for a = identity/delta^2 it jumps upward across p = 1, so no
    // cross-branch statement is available
    auto z4 = scalar_algebra(4);
    const Element a = diag_element(z4, {0.25, 0.25, 0.25, 0.25});
    const double log_d2 = std::log(4.0);
    const double left = renyi_entropy(a, 0.9) - log_d2 / (1.0 - 0.9);
    const double right = renyi_entropy(a, 1.1) - log_d2 / (1.0 - 1.1);
    CHECK(right > left + 1.0); // a genuine jump, not rounding
}

TEST_CASE("renyi_or_limit substitutes the right limits") {
    auto z4 = scalar_algebra(4);
    const Element x = diag_element(z4, {0.9, 0.3, 0.5, 0.2});
    CHECK(renyi_or_limit(x, 1.0 + 1e-9) ==
          doctest::Approx(entropy_limit(x, EntropyLimit::vn_limit)));
    CHECK(renyi_or_limit(x, kPInfinity) ==
          doctest::Approx(entropy_limit(x, EntropyLimit::min_entropy)));
    CHECK(renyi_or_limit(x, 2.0) == doctest::Approx(renyi_entropy(x, 2.0)));
}

TEST_CASE("coordinate round trip") {
    auto s3alg = MarkovAlgebra::make({{1, 1.0}, {1, 1.0}, {2, 2.0}}, std::sqrt(6.0));
    const Element x = random_element(s3alg, RandomKind::generic, 77);
    CHECK(max_abs_diff(from_coords(s3alg, to_coords(x)), x) == 0.0);
}
