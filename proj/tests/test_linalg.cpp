#include <gtest/gtest.h>

#include "lscat/linalg.hpp"
#include "support.hpp"

using namespace lscat;
using lscat::rnd::Rng;

namespace {

// Laplace expansion along row 0; independent of the Bareiss code path.
Integer cofactor_det(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return a(0, 0);
    Integer total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j) == 0)
            continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i)
            rows.push_back(i);
        for (std::size_t c = 0; c < n; ++c)
            if (c != j)
                cols.push_back(c);
        const Integer minor = cofactor_det(a.select_rows(rows).select_cols(cols));
        total += (j % 2 == 0 ? 1 : -1) * a(0, j) * minor;
    }
    return total;
}

} // namespace

TEST(Snf, WorkedTwoByTwo) {
    const IntMatrix a{{2, 4}, {4, 2}};
    const SnfResult s = snf(a);
    EXPECT_EQ(s.factors, (IntVector{2, 6}));
    EXPECT_EQ(s.D, (IntMatrix{{2, 0}, {0, 6}}));
    EXPECT_EQ(s.P * a * s.Q, s.D);
    EXPECT_TRUE(verify_snf(a, s));
    EXPECT_EQ(det(a), -12);
    EXPECT_EQ(minors_gcd_factors(a), (IntVector{2, 6}));
}

TEST(Snf, ZeroAndEmptyMatrices) {
    for (auto [r, c] : {std::pair{0, 0}, {0, 3}, {3, 0}, {2, 3}}) {
        const IntMatrix z(r, c);
        const SnfResult s = snf(z);
        EXPECT_TRUE(s.factors.empty());
        EXPECT_TRUE(verify_snf(z, s));
    }
    EXPECT_EQ(det(IntMatrix(0, 0)), 1);
}

TEST(Snf, NegativeAndRectangular) {
    const IntMatrix a{{-6, 0, 0}, {0, 0, -4}};
    const SnfResult s = snf(a);
    EXPECT_EQ(s.factors, (IntVector{2, 12}));
    EXPECT_TRUE(verify_snf(a, s));
}

TEST(Snf, EntriesBeyondMachineWords) {
    IntMatrix a(2, 2);
    a(0, 0) = Integer("123456789012345678901234567890");
    a(0, 1) = Integer("987654321098765432109876543210");
    a(1, 0) = 7;
    a(1, 1) = Integer("-55555555555555555555555555");
    const SnfResult s = snf(a);
    EXPECT_TRUE(verify_snf(a, s));
    EXPECT_EQ(abs(det(a)), s.factors[0] * s.factors[1]);
}

TEST(Snf, RandomAgreesWithMinorsOracle) {
    Rng rng(20260101);
    for (int t = 0; t < 200; ++t) {
        const auto r = static_cast<std::size_t>(rnd::uniform(rng, 1, 5));
        const auto c = static_cast<std::size_t>(rnd::uniform(rng, 1, 5));
        const IntMatrix a = rnd::random_matrix(rng, r, c, 9);
        const SnfResult s = snf(a);
        ASSERT_TRUE(verify_snf(a, s)) << a;
        ASSERT_EQ(s.factors, minors_gcd_factors(a)) << a;
    }
}

TEST(Det, BareissMatchesCofactorExpansion) {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        const auto n = static_cast<std::size_t>(rnd::uniform(rng, 1, 6));
        const IntMatrix a = rnd::random_matrix(rng, n, n, 9);
        ASSERT_EQ(det(a), cofactor_det(a)) << a;
    }
    EXPECT_THROW(det(IntMatrix(2, 3)), Error);
}

TEST(Det, Singular) { EXPECT_EQ(det(IntMatrix{{1, 2}, {2, 4}}), 0); }

TEST(Unimodular, InverseRoundTrip) {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const auto n = static_cast<std::size_t>(rnd::uniform(rng, 1, 6));
        const IntMatrix u = rnd::random_unimodular(rng, n);
        ASSERT_TRUE(is_unimodular(u));
        EXPECT_EQ(u * inverse_unimodular(u), IntMatrix::identity(n));
    }
    try {
        inverse_unimodular(IntMatrix{{2, 0}, {0, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnimodular);
    }
}

TEST(MinorsOracle, RefusesLargeInputs) {
    try {
        minors_gcd_factors(IntMatrix::identity(8));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionTooLarge);
    }
    EXPECT_NO_THROW(minors_gcd_factors(IntMatrix::identity(8), 20000));
}

TEST(Kernel, BasisIsSaturatedAndAnnihilated) {
    Rng rng(3);
    for (int t = 0; t < 60; ++t) {
        const auto r = static_cast<std::size_t>(rnd::uniform(rng, 1, 4));
        const auto c = static_cast<std::size_t>(rnd::uniform(rng, 1, 6));
        const IntMatrix a = rnd::random_matrix(rng, r, c, 5);
        const IntMatrix k = kernel_basis(a);
        EXPECT_EQ(k.cols(), c - rank(a));
        EXPECT_TRUE((a * k).is_zero());
        // saturated: the basis extends to a unimodular matrix, so its SNF is all ones
        for (const auto& f : snf(k).factors)
            EXPECT_EQ(f, 1);
    }
}

TEST(Lattice, ColumnBasisSpansSameLattice) {
    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
        const auto r = static_cast<std::size_t>(rnd::uniform(rng, 1, 4));
        const auto c = static_cast<std::size_t>(rnd::uniform(rng, 1, 6));
        const IntMatrix g = rnd::random_matrix(rng, r, c, 6);
        const IntMatrix b = column_lattice_basis(g);
        EXPECT_EQ(b.cols(), rank(g));
        const LatticeSolver in_b(b), in_g(g);
        for (std::size_t j = 0; j < g.cols(); ++j)
            EXPECT_TRUE(in_b.solve(g.column(j)).has_value());
        for (std::size_t j = 0; j < b.cols(); ++j)
            EXPECT_TRUE(in_g.solve(b.column(j)).has_value());
    }
}

TEST(Solve, FindsSolutionsAndRejectsNonLatticeVectors) {
    const IntMatrix a{{2, 0}, {0, 3}};
    const auto x = solve(a, IntVector{4, 9});
    ASSERT_TRUE(x);
    EXPECT_EQ(a.apply(*x), (IntVector{4, 9}));
    EXPECT_FALSE(solve(a, IntVector{1, 0}));
    EXPECT_THROW(solve(a, IntVector{1}), Error);
}

TEST(Matrix, ShapeErrors) {
    EXPECT_THROW(IntMatrix(2, 3) * IntMatrix(2, 3), Error);
    EXPECT_THROW(hstack(IntMatrix(2, 1), IntMatrix(3, 1)), Error);
}
