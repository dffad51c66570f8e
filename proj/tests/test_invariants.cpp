#include <gtest/gtest.h>

#include "lscat/invariants.hpp"
#include "support.hpp"

using namespace lscat;
using lscat::rnd::Rng;

TEST(Invariant, FreeOntoZTimesZ2) {
    const Homomorphism h(FgAbelianGroup::free(3), FgAbelianGroup(1, {2}), IntMatrix{{1, 0, 0}, {0, 1, 0}});
    const InvariantResult r = cat_cd(h);
    EXPECT_EQ(r.value, 2u);
    EXPECT_EQ(r.m, 1u);
    EXPECT_EQ(r.k, 1u);
    EXPECT_TRUE(r.epi);
    EXPECT_FALSE(r.via_image);
    EXPECT_EQ(r.certificate.prime, 2);
    EXPECT_EQ(r.certificate.lower_witness.dimension, 2u);
    EXPECT_TRUE(verify_certificate(r));
}

TEST(Invariant, TorsionFreeTargetUsesIntegers) {
    const Homomorphism h(FgAbelianGroup::free(3), FgAbelianGroup::free(2), IntMatrix{{1, 2, 3}, {0, 1, 4}});
    const InvariantResult r = cat_cd(h);
    EXPECT_EQ(r.value, 2u);
    EXPECT_FALSE(r.certificate.prime.has_value());
    EXPECT_TRUE(r.certificate.lower_witness.coefficients.is_integral());
    EXPECT_TRUE(verify_certificate(r));
}

TEST(Invariant, ZeroMap) {
    const Homomorphism h = Homomorphism::zero(FgAbelianGroup::free(2), FgAbelianGroup(0, {3}));
    const InvariantResult r = cat_cd(h);
    EXPECT_EQ(r.value, 0u);
    EXPECT_TRUE(r.via_image);
    EXPECT_TRUE(verify_certificate(r));
}

TEST(Invariant, NonSurjectiveGoesThroughImage) {
    // Z^2 -> Z x Z_4 with image Z x Z_2 (the 2Z_4 part)
    const Homomorphism h(FgAbelianGroup::free(2), FgAbelianGroup(1, {4}), IntMatrix{{3, 0}, {0, 2}});
    const InvariantResult r = cat_cd(h);
    EXPECT_TRUE(r.via_image);
    EXPECT_EQ(r.upper.analyzed.codomain(), FgAbelianGroup(1, {2}));
    EXPECT_EQ(r.value, 2u);
    EXPECT_TRUE(verify_certificate(r));
}

TEST(Invariant, DomainTorsionKilled) {
    const Homomorphism h(FgAbelianGroup(2, {5}), FgAbelianGroup(0, {2, 2}), IntMatrix{{1, 0, 0}, {0, 1, 0}});
    const InvariantResult r = cat_cd(h);
    EXPECT_EQ(r.value, 2u);
    EXPECT_EQ(r.certificate.prime, 2);
    EXPECT_TRUE(verify_certificate(r));
}

TEST(Invariant, TorsionNotKilledIsRefused) {
    const Homomorphism h(FgAbelianGroup(0, {4}), FgAbelianGroup(0, {2}), IntMatrix{{1}});
    try {
        cat_cd(h);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TorsionNotKilled);
        EXPECT_NE(e.detail().find("Z_4 -> Z_2"), std::string::npos);
    }
}

TEST(Invariant, UpperChainTags) {
    const Homomorphism h(FgAbelianGroup::free(2), FgAbelianGroup(0, {6}), IntMatrix{{1, 1}});
    const InvariantResult r = cat_cd(h);
    std::vector<std::string> tags;
    for (const auto& s : r.certificate.upper_chain)
        tags.push_back(s.tag);
    EXPECT_EQ(tags, (std::vector<std::string>{"restrict_to_free", "split", "free_part", "factor_through_torus",
                                              "product_bound"}));
    EXPECT_EQ(r.value, 1u);
}

TEST(Invariant, SmallestPrimeFactor) {
    EXPECT_EQ(smallest_prime_factor(9), 3);
    EXPECT_EQ(smallest_prime_factor(12), 2);
    EXPECT_EQ(smallest_prime_factor(13), 13);
}

TEST(Invariant, RandomThreeWayAgreement) {
    Rng rng(4242);
    for (int t = 0; t < 25; ++t) {
        const FgAbelianGroup g(static_cast<std::size_t>(rnd::uniform(rng, 0, 2)), rnd::random_torsion(rng, 12, 2));
        const auto n = static_cast<std::size_t>(rnd::uniform(rng, static_cast<long>(g.generator_count()), 4));
        const Homomorphism h = rnd::random_epimorphism(rng, g, n);
        const InvariantResult r = cat_cd(h);
        EXPECT_EQ(r.value, formula_value(g));
        EXPECT_EQ(r.upper.bound, r.value);
        EXPECT_EQ(r.certificate.lower_witness.dimension, r.value);
        EXPECT_TRUE(verify_certificate(r));
    }
}
