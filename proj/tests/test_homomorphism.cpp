#include <set>

#include <gtest/gtest.h>

#include "lscat/homomorphism.hpp"
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

const FgAbelianGroup Z4(0, {4});
const FgAbelianGroup Z2(0, {2});

} // namespace

TEST(Homomorphism, WellDefinedness) {
    EXPECT_NO_THROW(Homomorphism(Z4, Z2, IntMatrix{{1}}));
    EXPECT_EQ(code_of([] { Homomorphism(Z2, Z4, IntMatrix{{1}}); }), ErrorCode::IllDefined);
    EXPECT_NO_THROW(Homomorphism(Z2, Z4, IntMatrix{{2}}));
    // torsion cannot land on a free generator
    EXPECT_EQ(code_of([] { Homomorphism(Z2, FgAbelianGroup::free(1), IntMatrix{{1}}); }), ErrorCode::IllDefined);
    EXPECT_EQ(code_of([] { Homomorphism(Z2, Z4, IntMatrix(2, 1)); }), ErrorCode::ShapeMismatch);
    // torsion rows are reduced
    EXPECT_EQ(Homomorphism(FgAbelianGroup::free(1), Z4, IntMatrix{{-3}}).matrix(), (IntMatrix{{1}}));
}

TEST(Homomorphism, EpiAndTorsion) {
    EXPECT_TRUE(is_epimorphism(Homomorphism(Z4, Z2, IntMatrix{{1}})));
    EXPECT_FALSE(is_epimorphism(Homomorphism(Z2, Z4, IntMatrix{{2}})));
    EXPECT_FALSE(is_epimorphism(Homomorphism(FgAbelianGroup::free(1), FgAbelianGroup::free(1), IntMatrix{{2}})));
    EXPECT_TRUE(is_epimorphism(Homomorphism(FgAbelianGroup::free(2), Z4, IntMatrix{{2, 3}})));
    EXPECT_FALSE(kills_torsion(Homomorphism(Z4, Z2, IntMatrix{{1}})));
    EXPECT_TRUE(kills_torsion(Homomorphism(Z4, Z2, IntMatrix{{2}})));
    EXPECT_EQ(code_of([] { restrict_to_free(Homomorphism(Z4, Z2, IntMatrix{{1}})); }), ErrorCode::TorsionNotKilled);
}

TEST(Homomorphism, RestrictToFree) {
    const FgAbelianGroup dom(2, {3});
    const Homomorphism h(dom, Z2, IntMatrix{{1, 1, 0}});
    const Homomorphism r = restrict_to_free(h);
    EXPECT_EQ(r.domain(), FgAbelianGroup::free(2));
    EXPECT_EQ(r.matrix(), (IntMatrix{{1, 1}}));
}

TEST(Homomorphism, ImageFactorization) {
    const Homomorphism h(FgAbelianGroup::free(2), FgAbelianGroup(1, {4}), IntMatrix{{2, 0}, {0, 2}});
    const ImageFactorization f = image_factorization(h);
    EXPECT_EQ(f.corestriction.codomain(), FgAbelianGroup(1, {2}));
    EXPECT_TRUE(is_epimorphism(f.corestriction));
    EXPECT_EQ(compose(f.inclusion, f.corestriction), h);
    EXPECT_EQ(image(h), FgAbelianGroup(1, {2}));
}

TEST(Factorization, KnownExample) {
    // Z^2 -> Z_2 x Z_4
    const Homomorphism h(FgAbelianGroup::free(2), FgAbelianGroup(0, {2, 4}), IntMatrix{{1, 0}, {0, 1}});
    const Factorization f = factor_through_lattice(h);
    EXPECT_EQ(f.k, 2u);
    EXPECT_EQ(f.psi_factors, (IntVector{2, 4}));
    EXPECT_EQ(f.composite(), h);
}

TEST(Factorization, Errors) {
    EXPECT_EQ(code_of([] { factor_through_lattice(Homomorphism(Z4, Z2, IntMatrix{{1}})); }),
              ErrorCode::DomainHasTorsion);
    EXPECT_EQ(code_of([] {
                  factor_through_lattice(
                      Homomorphism(FgAbelianGroup::free(1), FgAbelianGroup::free(1), IntMatrix{{1}}));
              }),
              ErrorCode::CodomainInfinite);
    EXPECT_EQ(code_of([] { factor_through_lattice(Homomorphism(FgAbelianGroup::free(1), Z4, IntMatrix{{2}})); }),
              ErrorCode::NotEpimorphism);
}

TEST(Factorization, RandomRoundTrip) {
    Rng rng(314);
    for (int t = 0; t < 60; ++t) {
        const FgAbelianGroup lambda(0, rnd::random_torsion(rng, 64));
        const auto n = static_cast<std::size_t>(rnd::uniform(rng, static_cast<long>(lambda.generator_count()), 5));
        if (n == 0)
            continue;
        const Homomorphism h = rnd::random_epimorphism(rng, lambda, n);
        const Factorization f = factor_through_lattice(h);
        EXPECT_EQ(f.composite(), h);
        EXPECT_TRUE(is_epimorphism(f.pi));
        EXPECT_EQ(f.k, smith_normal_number(lambda));
        EXPECT_EQ(abs(det(kernel_lattice(h))), lambda.order());
        // iota is a bijection on elements
        std::set<IntVector> images;
        for (const auto& x : enumerate_elements(f.iota.domain()))
            images.insert(f.iota.apply(x).coordinates);
        EXPECT_EQ(Integer(static_cast<unsigned long>(images.size())), lambda.order());
    }
}

TEST(Splitting, UnimodularIsItsOwnFreePart) {
    const IntMatrix u{{2, 1}, {1, 1}};
    const Homomorphism h(FgAbelianGroup::free(2), FgAbelianGroup::free(2), u);
    const Splitting sp = split(h);
    EXPECT_EQ(sp.m, 2u);
    EXPECT_EQ(sp.psi2.domain(), FgAbelianGroup::free(0));
    EXPECT_EQ(reassemble(sp, h.codomain()), h);
}

TEST(Splitting, RandomBlockForm) {
    Rng rng(2718);
    for (int t = 0; t < 60; ++t) {
        const FgAbelianGroup g(static_cast<std::size_t>(rnd::uniform(rng, 0, 2)), rnd::random_torsion(rng, 30, 2));
        const auto n = static_cast<std::size_t>(rnd::uniform(rng, static_cast<long>(g.generator_count()), 5));
        const Homomorphism h = rnd::random_epimorphism(rng, g, n);
        const Splitting sp = split(h);
        EXPECT_TRUE(is_unimodular(sp.basis_change));
        EXPECT_EQ(Homomorphism(h.domain(), h.codomain(), h.matrix() * sp.basis_change).matrix(), sp.block_matrix());
        EXPECT_TRUE(is_unimodular(sp.psi1.matrix()));
        EXPECT_TRUE(is_epimorphism(sp.psi2));
        EXPECT_EQ(reassemble(sp, h.codomain()), h);
    }
}

TEST(Compose, Associative) {
    Rng rng(1);
    for (int t = 0; t < 30; ++t) {
        const FgAbelianGroup a = FgAbelianGroup::free(3), b(1, {2}), c(0, {2});
        const Homomorphism f(a, b, rnd::random_matrix(rng, 2, 3, 5));
        const Homomorphism g(b, c, IntMatrix{{static_cast<long>(rnd::uniform(rng, -3, 3)), 1}});
        const Homomorphism k(c, c, IntMatrix{{1}});
        EXPECT_EQ(compose(k, compose(g, f)), compose(compose(k, g), f));
    }
    EXPECT_EQ(code_of([] { compose(Homomorphism::identity(Z2), Homomorphism::identity(Z4)); }),
              ErrorCode::ShapeMismatch);
}
