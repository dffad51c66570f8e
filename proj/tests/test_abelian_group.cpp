#include <gtest/gtest.h>

#include "lscat/abelian_group.hpp"
#include "support.hpp"

using namespace lscat;
using lscat::rnd::Rng;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::Malformed;
}

} // namespace

TEST(Group, ConstructionValidatesChain) {
    EXPECT_EQ(FgAbelianGroup(1, {2, 4}).to_string(), "Z x Z_2 x Z_4");
    EXPECT_EQ(FgAbelianGroup::trivial().to_string(), "0");
    EXPECT_EQ(code_of([] { FgAbelianGroup(0, {2, 3}); }), ErrorCode::InvalidGroup);
    EXPECT_EQ(code_of([] { FgAbelianGroup(0, {1}); }), ErrorCode::InvalidGroup);
    EXPECT_EQ(code_of([] { FgAbelianGroup(0, {-2}); }), ErrorCode::InvalidGroup);
}

TEST(Group, OrdersAndParts) {
    const FgAbelianGroup g(2, {3, 6});
    EXPECT_EQ(g.generator_order(0), 0);
    EXPECT_EQ(g.generator_order(3), 6);
    EXPECT_EQ(g.torsion_subgroup(), FgAbelianGroup(0, {3, 6}));
    EXPECT_EQ(g.free_part(), FgAbelianGroup::free(2));
    EXPECT_EQ(code_of([&] { (void)g.order(); }), ErrorCode::CodomainInfinite);
    EXPECT_EQ(g.torsion_subgroup().order(), 18);
    EXPECT_EQ(smith_normal_number(g), 2u);
}

TEST(Presentation, DiagonalExamples) {
    const FgAbelianGroup z6 = from_presentation(GroupPresentation(2, IntMatrix{{2, 0}, {0, 3}}));
    EXPECT_EQ(z6, FgAbelianGroup(0, {6}));
    EXPECT_EQ(smith_normal_number(z6), 1u);

    const FgAbelianGroup z2z4 = from_presentation(GroupPresentation(2, IntMatrix{{2, 0}, {0, 4}}));
    EXPECT_EQ(z2z4, FgAbelianGroup(0, {2, 4}));
    EXPECT_EQ(smith_normal_number(z2z4), 2u);
}

TEST(Presentation, FreeAndRedundantGenerators) {
    // three generators, one relation x + y = 0
    EXPECT_EQ(from_presentation(GroupPresentation(3, IntMatrix{{1}, {1}, {0}})), FgAbelianGroup::free(2));
    EXPECT_EQ(from_presentation(GroupPresentation(2, IntMatrix(2, 0))), FgAbelianGroup::free(2));
    EXPECT_EQ(from_presentation(GroupPresentation(1, IntMatrix{{1}})), FgAbelianGroup::trivial());
    EXPECT_EQ(code_of([] { GroupPresentation(3, IntMatrix(2, 1)); }), ErrorCode::ShapeMismatch);
}

TEST(Presentation, QuotientAndLiftAreInverse) {
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        const auto g = static_cast<std::size_t>(rnd::uniform(rng, 1, 4));
        const auto r = static_cast<std::size_t>(rnd::uniform(rng, 0, 4));
        const GroupPresentation p(g, rnd::random_matrix(rng, g, r, 6));
        const Normalization n = normalize(p);
        // quotient kills every relation
        for (std::size_t j = 0; j < r; ++j) {
            const GroupElement img = reduce_element(n.group, n.quotient.apply(p.relations.column(j)));
            EXPECT_EQ(img.coordinates, identity_element(n.group).coordinates);
        }
        // quotient o lift is the identity on canonical coordinates
        const IntMatrix ql = n.quotient * n.lift;
        for (std::size_t c = 0; c < n.group.generator_count(); ++c) {
            IntVector e(n.group.generator_count());
            e[c] = 1;
            EXPECT_EQ(reduce_element(n.group, ql.column(c)).coordinates, reduce_element(n.group, e).coordinates);
        }
    }
}

TEST(Presentation, CanonicalFormRoundTrips) {
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const FgAbelianGroup g = rnd::random_group(rng, 3, 200);
        EXPECT_EQ(from_presentation(defining_presentation(g)), g);
        // disguise by unimodular changes on both sides
        const GroupPresentation p = defining_presentation(g);
        const IntMatrix u = rnd::random_unimodular(rng, p.generators);
        const IntMatrix v = rnd::random_unimodular(rng, p.relations.cols());
        EXPECT_EQ(from_presentation(GroupPresentation(p.generators, u * p.relations * v)), g);
    }
}

TEST(Elements, ArithmeticAndEnumeration) {
    const FgAbelianGroup g(0, {2, 4});
    const auto all = enumerate_elements(g);
    EXPECT_EQ(all.size(), 8u);
    const GroupElement a = reduce_element(g, IntVector{3, -1});
    EXPECT_EQ(a.coordinates, (IntVector{1, 3}));
    EXPECT_EQ(element_add(g, a, element_negate(g, a)).coordinates, identity_element(g).coordinates);
    EXPECT_EQ(code_of([&] { reduce_element(g, IntVector{1}); }), ErrorCode::LengthMismatch);
}
