#include "curvtree/builders.hpp"
#include "curvtree/errors.hpp"

#include <gtest/gtest.h>

using namespace curvtree;

TEST(Roots, Sl4RootSystem) {
    auto r = build_sl(4);
    const auto &rs = *r.roots;
    EXPECT_EQ(rs.rank(), 3u);
    EXPECT_EQ(rs.roots().size(), 12u);
    ASSERT_EQ(rs.simples().size(), 3u);
    EXPECT_EQ(rs.render(rs.roots()[rs.simples()[0]]), "e1-e2");
    EXPECT_EQ(rs.render(rs.roots()[rs.simples()[2]]), "e3-e4");
    EXPECT_EQ(rs.highest_root(), rs.parse_root("e1-e4"));
    EXPECT_TRUE(rs.is_positive_root(rs.parse_root("e2-e4")));
    EXPECT_FALSE(rs.is_root(rs.parse_root("2e1")));
    EXPECT_THROW(rs.parse_root("e9"), ParseError);
}

TEST(Roots, NegativesMirrorPositives) {
    auto r = build_sl(5);
    const auto &rs = *r.roots;
    const std::size_t p = rs.num_positive();
    for (std::size_t i = 0; i < p; ++i)
        EXPECT_EQ(rs.roots()[p + i], -rs.roots()[i]);
}

TEST(Roots, KillingDualRoundTrip) {
    auto r = build_sl(4);
    const auto &rs = *r.roots;
    for (const auto &nu : rs.roots()) {
        EXPECT_EQ(rs.lower(rs.dual(nu)), nu);
        EXPECT_EQ(rs.evaluate(nu, rs.dual(nu)), rs.inner(nu, nu));
    }
    Covector w = rs.parse_root("4e2");
    EXPECT_EQ(rs.inner(w, w), Scalar(3, 2));
}

TEST(Roots, ReflectionsPermuteRoots) {
    auto r = build_sl(4);
    const auto &rs = *r.roots;
    for (auto s : rs.simples())
        for (const auto &nu : rs.roots())
            EXPECT_TRUE(rs.is_root(rs.reflect(rs.roots()[s], nu)));
}

TEST(Roots, RootSpacesAreEigenspaces) {
    auto r = build_quaternionic(2, 2);
    const auto &rs = *r.roots;
    const auto &g = rs.algebra();
    EXPECT_EQ(g.dim(), 78u);
    EXPECT_EQ(rs.roots().size(), 18u);
    for (std::size_t i = 0; i < rs.roots().size(); ++i)
        for (const auto &x : rs.root_space(i))
            for (const auto &h : rs.cartan().basis())
                EXPECT_EQ(g.bracket(h, x), rs.evaluate(rs.roots()[i], h) * x);
    EXPECT_EQ(rs.root_space(*rs.index_of(rs.parse_root("e0-e1"))).size(), 4u);
    EXPECT_EQ(rs.root_space(*rs.index_of(rs.parse_root("2e1"))).size(), 3u);
    EXPECT_EQ(rs.inner(rs.parse_root("e0-e1"), rs.parse_root("2e0-4e1")), Scalar(3, 28));
}

TEST(Roots, UnequalSignatureHasShortRoots) {
    auto r = build_quaternionic(2, 3);
    EXPECT_TRUE(r.roots->is_root(r.roots->parse_root("e1")));
    EXPECT_FALSE(build_quaternionic(2, 2).roots->is_root(build_quaternionic(2, 2).roots->parse_root("e1")));
}

TEST(Quaternion, MultiplicationTable) {
    Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    EXPECT_EQ(i * j, k);
    EXPECT_EQ(j * i, -k);
    EXPECT_EQ(i * i, Quaternion::real(-1));
    EXPECT_EQ((i + j).norm2(), 2);
}
