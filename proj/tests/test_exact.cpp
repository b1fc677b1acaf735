#include "curvtree/errors.hpp"
#include "curvtree/exact.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace curvtree;

TEST(Scalar, ParsesAndRendersCanonicalFractions) {
    EXPECT_EQ(parse_scalar("6/8"), Scalar(3, 4));
    EXPECT_EQ(parse_scalar("-2"), Scalar(-2));
    EXPECT_EQ(to_string(parse_scalar("-10/4")), "-5/2");
    EXPECT_THROW(parse_scalar("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_scalar("x"), std::invalid_argument);
}

TEST(Matrix, RankKernelAndInverse) {
    Matrix a = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
    EXPECT_EQ(rank(a), 2u);
    auto k = kernel(a);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_TRUE(is_zero(a * k[0]));
    EXPECT_FALSE(inverse(a).has_value());
    Matrix b = Matrix::from_rows({{2, 1}, {1, 1}}, 2);
    auto inv = inverse(b);
    ASSERT_TRUE(inv);
    EXPECT_EQ(b * *inv, Matrix::identity(2));
}

TEST(Matrix, RandomKernelsAreExact) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int t = 0; t < 50; ++t) {
        Matrix m(4, 6);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                m(i, j) = Scalar(d(rng), 1 + (d(rng) + 4) % 3);
        auto k = kernel(m);
        EXPECT_EQ(k.size() + rank(m), 6u);
        for (const auto &v : k)
            EXPECT_TRUE(is_zero(m * v));
    }
}

TEST(Affine, SolvesOrReportsInconsistency) {
    Matrix a = Matrix::from_rows({{1, 1}, {1, -1}}, 2);
    auto s = solve_affine(a, {3, 1});
    ASSERT_TRUE(s);
    EXPECT_EQ(s->particular, (Vector{2, 1}));
    Matrix b = Matrix::from_rows({{1, 1}, {2, 2}}, 2);
    EXPECT_FALSE(solve_affine(b, {1, 3}));
}

TEST(Subspace, ContainmentIntersectionAndSum) {
    Subspace a(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
    EXPECT_EQ(a.dim(), 2u);
    Subspace b(3, {{0, 1, 0}, {0, 0, 1}});
    EXPECT_EQ(intersect(a, b).dim(), 1u);
    EXPECT_EQ(sum(a, b).dim(), 3u);
    EXPECT_TRUE(a.contains(Vector{2, -3, 0}));
    EXPECT_FALSE(a.contains(Vector{0, 0, 1}));
    EXPECT_EQ(a.coordinates(Vector{2, -3, 0}), (Vector{2, -3}));
    EXPECT_THROW(a.coordinates(Vector{0, 0, 1}), NotClosed);
}

TEST(Feasibility, FindsStrictSolutionsExactly) {
    // x + y = 0, x > 0, x - 2y > 1
    auto x = linear_feasibility(2, {{{1, 1}, 0}}, {{{1, 0}, 0}, {{1, -2}, 1}});
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0] + (*x)[1], 0);
    EXPECT_GT((*x)[0], 0);
    EXPECT_GT((*x)[0] - 2 * (*x)[1], 1);
}

TEST(Feasibility, DetectsInfeasibleStrictSystems) {
    // x > 0 and -x > 0
    EXPECT_FALSE(linear_feasibility(1, {}, {{{1}, 0}, {{-1}, 0}}));
    // x = y, x - y > 0
    EXPECT_FALSE(linear_feasibility(2, {{{1, -1}, 0}}, {{{1, -1}, 0}}));
}
