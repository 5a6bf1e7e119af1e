#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncfa/extremizers.hpp"

using namespace ncfa;

TEST_CASE("basic predicates") {
    const ModelPtr m = cyclic_model(2);
    const Element e1 = m->jones_projection();
    CHECK(is_trace_one_projection(e1));
    CHECK(is_projection(Element::identity(m->plus())));
    CHECK(!is_trace_one_projection(Element::identity(m->plus()))); // trace 2

    const ModelPtr tl = tl_model(std::sqrt(2.0));
    CHECK(is_trace_one_projection(tl->jones_projection()));

    for (int g = 0; g < 2; ++g) CHECK(is_trace_one_projection(group_delta(*m, g)));
    CHECK(is_unitary(random_element(m->plus(), RandomKind::unitary, 4)));
    CHECK(!is_unitary(e1));
}

TEST_CASE("biprojection predicate") {
    const ModelPtr m = cyclic_model(4);
    CHECK(is_biprojection(*m, subgroup_biprojection(*m, {0, 2})));
    CHECK(is_biprojection(*m, m->jones_projection()));
    CHECK(is_biprojection(*m, Element::identity(m->plus())));
    // {0,1} is not a subgroup; its indicator is a projection but not a biprojection
    std::vector<Matrix> d(4, Matrix::Zero(1, 1));
    d[0](0, 0) = d[1](0, 0) = 1.0;
    CHECK(!is_biprojection(*m, Element(m->plus(), std::move(d))));

    const ModelPtr tl = tl_model(1.8);
    CHECK(is_biprojection(*tl, tl->jones_projection()));
    CHECK(is_biprojection(*tl, Element::identity(tl->plus())));
}

TEST_CASE("shift predicate") {
    const ModelPtr m = cyclic_model(4);
    const Element b = subgroup_biprojection(*m, {0, 2});
    CHECK(is_shift(*m, coset_shift(*m, {0, 2}, 1, ShiftSide::left), b, ShiftSide::left));
    CHECK(is_shift(*m, coset_shift(*m, {0, 2}, 1, ShiftSide::right), b, ShiftSide::right));
    // same trace but not a coset: fails the convolution identity
    std::vector<Matrix> d(4, Matrix::Zero(1, 1));
    d[0](0, 0) = d[1](0, 0) = 1.0;
    CHECK(!is_shift(*m, Element(m->plus(), std::move(d)), b, ShiftSide::left));
    // non-biprojection reference is rejected
    std::vector<Matrix> nb(4, Matrix::Zero(1, 1));
    nb[0](0, 0) = nb[1](0, 0) = 1.0;
    CHECK_THROWS_AS(is_shift(*m, b, Element(m->plus(), std::move(nb)), ShiftSide::left), Error);

    // in the nonabelian model every coset indicator is a shift
    const ModelPtr s3m = nonabelian_model(s3());
    for (const auto& h : enumerate_subgroups(*s3m)) {
        const Element bp = subgroup_biprojection(*s3m, h);
        for (int g = 0; g < 6; ++g) {
            CHECK(is_shift(*s3m, coset_shift(*s3m, h, g, ShiftSide::left), bp, ShiftSide::left));
            CHECK(is_shift(*s3m, coset_shift(*s3m, h, g, ShiftSide::right), bp, ShiftSide::right));
        }
    }
}

TEST_CASE("bishift predicate via the support equality") {
    const ModelPtr m = cyclic_model(4);
    CHECK(is_bishift_via_ds(*m, bishift_element(*m, {0, 2}, 0, 1)));
    CHECK(is_bishift_via_ds(*m, group_character(*m, 1)));
    CHECK(is_bishift_via_ds(*m, group_delta(*m, 2)));
    int rejected = 0;
    for (int s = 0; s < 20; ++s)
        if (!is_bishift_via_ds(*m, random_element(m->plus(), RandomKind::generic, s))) ++rejected;
    CHECK(rejected == 20);

    // all eight forms: transforms of bishifts are bishifts
    for (const auto& h : enumerate_subgroups(*m))
        for (int g = 0; g < 4; ++g)
            for (int chi = 0; chi < 4; ++chi) {
                const Element x = bishift_element(*m, h, g, chi);
                CHECK(is_bishift_via_ds(*m, x));
                CHECK(is_bishift_via_ds(*m, sft(*m, x)));
            }
}

TEST_CASE("biunitary and extremal predicates") {
    const ModelPtr m3 = cyclic_model(3);
    CHECK(is_biunitary(*m3, biunitary_quadratic(*m3, 1, 0)));
    CHECK(is_extremal(*m3, group_delta(*m3, 0)));
    CHECK(is_extremal(*m3, group_character(*m3, 2)));
    int extremal = 0, biunitary = 0;
    for (int s = 0; s < 20; ++s) {
        const Element x = random_element(m3->plus(), RandomKind::generic, 900 + s);
        if (is_extremal(*m3, x)) ++extremal;
        if (is_biunitary(*m3, x)) ++biunitary;
    }
    CHECK(extremal == 0);
    CHECK(biunitary == 0);
}

TEST_CASE("scale invariance of the scale-free predicates") {
    const ModelPtr m = cyclic_model(4);
    const Element bish = bishift_element(*m, {0, 2}, 1, 3);
    const Element bp = subgroup_biprojection(*m, {0, 2});
    const Complex scales[] = {{2.0, 0.0}, {0.0, -3.0}, {1.5, 2.5}, {1e-3, 0.0}};
    for (const Complex& c : scales) {
        CHECK(is_bishift_via_ds(*m, scale(c, bish)));
        CHECK(is_extremal(*m, scale(c, group_delta(*m, 1))));
        CHECK(is_multiple_of_trace_one_projection(scale(c, group_delta(*m, 1))));
        CHECK(is_multiple_of_unitary(scale(c, group_character(*m, 1))));
        CHECK(is_multiple_of_biunitary(*m, scale(c, biunitary_quadratic(*m, 1, 2))));
        // sft of a scaled biprojection stays a multiple of a projection
        const Element fb = sft(*m, scale(c, bp));
        CHECK(is_multiple_of_unitary(fb, 1e-8) == false);
    }
    // but the normalized predicates are not scale invariant
    CHECK(!is_trace_one_projection(scale(2.0, group_delta(*m, 0))));
    CHECK(!is_unitary(scale(2.0, group_character(*m, 1))));
}

TEST_CASE("table rows partition the quadrant") {
    CHECK(table_row(1.0, 1.0).label == FamilyLabel::TraceOneProjection);
    CHECK(table_row(0.75, 0.25).label == FamilyLabel::BishiftOfBiprojection);
    CHECK(table_row(1.0, 0.0).label == FamilyLabel::ExtremalElement);
    CHECK(table_row(0.5, 0.5).label == FamilyLabel::Anything);
    CHECK(table_row(0.25, 0.25).label == FamilyLabel::FTOfTraceOneProjection);
    CHECK(table_row(0.5, 0.25).label == FamilyLabel::FTOfTraceOneProjection);
    CHECK(table_row(0.0, 0.0).label == FamilyLabel::ExtremalUnitary);
    CHECK(table_row(0.75, 0.0).label == FamilyLabel::ExtremalUnitary);
    CHECK(table_row(1.25, 0.0).label == FamilyLabel::TraceOneProjection);
    CHECK(table_row(0.25, 0.5).label == FamilyLabel::Unitary);
    CHECK(table_row(0.5, 0.75).label == FamilyLabel::FTOfUnitary);
    CHECK(table_row(0.25, 0.75).label == FamilyLabel::Biunitary);
    CHECK(table_row(0.75, 0.5).label == FamilyLabel::TraceOneProjection);
    // every grid point lands in exactly one row
    for (double ip = 0.0; ip <= 1.3; ip += 0.05)
        for (double iq = 0.0; iq <= 1.3; iq += 0.05) CHECK_NOTHROW(table_row(ip, iq));
}

TEST_CASE("classify spec rows") {
    const ModelPtr m = cyclic_model(4);
    const Classification c1 = classify(*m, group_delta(*m, 1), 1.0, 1.0);
    CHECK(c1.family == FamilyLabel::TraceOneProjection);
    CHECK(c1.ratio == doctest::Approx(2.0));
    CHECK(c1.k == doctest::Approx(2.0));

    const Classification c2 =
        classify(*m, bishift_element(*m, {0, 2}, 0, 1), 4.0 / 3.0, 4.0);
    CHECK(c2.family == FamilyLabel::BishiftOfBiprojection);
    CHECK(std::abs(c2.gap) < 1e-8);

    const Classification c3 = classify(*m, biunitary_quadratic(*m, 1, 0), kPInfinity, 1.0);
    CHECK(c3.family == FamilyLabel::Biunitary);
    CHECK(std::abs(c3.gap) < 1e-8);

    const Classification c4 =
        classify(*m, random_element(m->plus(), RandomKind::generic, 5), 1.0, 1.0);
    CHECK(c4.family == FamilyLabel::NoFamily);
    CHECK(c4.ratio < c4.k);

    // the center point accepts anything
    CHECK(classify(*m, random_element(m->plus(), RandomKind::generic, 6), 2.0, 2.0).family ==
          FamilyLabel::Anything);

    CHECK_THROWS_AS(classify(*m, Element::zero(m->plus()), 1.0, 1.0), Error);
}

TEST_CASE("constructor outputs attain K across their table rows") {
    const ModelPtr m = cyclic_model(4);
    struct Case {
        Element x;
        double ip, iq;
    };
    const std::vector<Case> cases = {
        {group_delta(*m, 1), 1.0, 1.0},                   // row 1
        {group_delta(*m, 1), 1.25, 0.75},                 // row 1 interior
        {bishift_element(*m, {0, 2}, 0, 1), 0.75, 0.25},  // row 2
        {group_delta(*m, 0), 1.0, 0.0},                   // row 3
        {group_character(*m, 1), 0.25, 0.25},             // row 5
        {group_character(*m, 1), 0.5, 0.0},               // row 6
        {group_character(*m, 3), 0.25, 0.5},              // row 7
        {biunitary_quadratic(*m, 1, 1), 0.5, 0.75},       // row 8
        {biunitary_quadratic(*m, 1, 0), 0.25, 0.75},      // row 9
        {biunitary_quadratic(*m, 3, 2), 0.0, 1.25},       // row 9 interior
    };
    for (const Case& c : cases) {
        const Classification cls = classify(*m, c.x, p_from_inv(c.ip), p_from_inv(c.iq));
        CHECK(cls.family == table_row(c.ip, c.iq).label);
        CHECK(std::abs(cls.gap) <= 1e-8 * (1.0 + cls.k));
    }
    // random elements stay strictly inside the bound at interior points of
    // all three regions
    const double interior[][2] = {{1.0, 1.0}, {0.25, 0.25}, {0.25, 0.75}};
    for (const auto& pt : interior)
        for (int s = 0; s < 100; ++s) {
            const Element x = random_element(m->plus(), RandomKind::generic, 4000 + s);
            const Classification cls =
                classify(*m, x, p_from_inv(pt[0]), p_from_inv(pt[1]));
            CHECK(cls.gap > 1e-6 * cls.k);
        }
}
