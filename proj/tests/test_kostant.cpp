#include "curvtree/builders.hpp"
#include "curvtree/errors.hpp"
#include "curvtree/fixtures.hpp"
#include "curvtree/kostant.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace curvtree;

namespace {

KostantComplex complex_for(const Realization &r, std::vector<std::size_t> cross) {
    return KostantComplex(ParabolicGrading::grade(r.roots, std::move(cross)));
}

Vector label(const Realization &r, const std::string &l) {
    const auto &labels = r.algebra->labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l)
            return unit(labels.size(), i);
    throw std::runtime_error(l);
}

} // namespace

TEST(Kostant, OperatorsSquareToZero) {
    auto r = build_sl(4);
    for (auto cross : {std::vector<std::size_t>{1}, std::vector<std::size_t>{0, 1, 2}}) {
        auto k = complex_for(r, cross);
        for (std::uint32_t s = 0; s < 30; ++s) {
            EXPECT_TRUE(k.differential(k.differential(k.random_chain(0, s))).is_zero());
            EXPECT_TRUE(k.differential(k.differential(k.random_chain(1, s))).is_zero());
            EXPECT_TRUE(k.codifferential(k.codifferential(k.random_chain(2, s))).is_zero());
            EXPECT_TRUE(k.codifferential(k.codifferential(k.random_chain(3, s))).is_zero());
        }
    }
}

TEST(Kostant, HodgeDecompositionGrassmannian) {
    auto r = build_sl(4);
    auto k = complex_for(r, {1});
    std::size_t total = 0;
    for (int h : k.homogeneities(2)) {
        auto b = k.hodge_audit(2, h);
        EXPECT_EQ(b.im_d + b.ker_box + b.im_dstar, b.dim);
        total += b.dim;
    }
    EXPECT_EQ(total, 6u * 15u);
    auto b = k.hodge_audit(2, 2);
    EXPECT_EQ(b.dim, 42u);
    EXPECT_EQ(b.ker_box, 10u);
}

TEST(Kostant, HodgeDecompositionBorel) {
    auto r = build_sl(4);
    auto k = complex_for(r, {0, 1, 2});
    for (int h : k.homogeneities(2)) {
        auto b = k.hodge_audit(2, h);
        EXPECT_EQ(b.im_d + b.ker_box + b.im_dstar, b.dim) << h;
        EXPECT_EQ(b.ker_d, b.im_d + b.ker_box) << h;
    }
    auto b = k.hodge_audit(2, 2);
    EXPECT_EQ(b.dim, 37u);
    EXPECT_EQ(b.ker_box, 2u);
}

TEST(Kostant, EnumerationFindsKnownSeeds) {
    auto r = build_sl(4);
    const auto &rs = *r.roots;
    auto borel = complex_for(r, {0, 1, 2}).enumerate_candidates();
    EXPECT_EQ(borel.size(), 5u);
    auto has = [&](const std::vector<Candidate> &cs, const char *b, const char *g, const char *z) {
        for (const auto &c : cs)
            if (c.beta == rs.parse_root(b) && c.gamma == rs.parse_root(g) && c.zeta == rs.parse_root(z))
                return true;
        return false;
    };
    EXPECT_TRUE(has(borel, "e1-e2", "e3-e4", "e3-e2"));
    EXPECT_TRUE(has(borel, "e2-e3", "e2-e4", "e2-e1"));
    auto grass = complex_for(r, {1}).enumerate_candidates();
    EXPECT_TRUE(has(grass, "e2-e3", "e2-e4", "e2-e1"));
    auto k1 = complex_for(r, {0}).enumerate_candidates();
    EXPECT_TRUE(has(k1, "e1-e2", "e1-e3", "e4-e2"));
}

TEST(Kostant, ParallelEnumerationMatchesSerial) {
    auto r = build_sl(5);
    auto k = complex_for(r, {0, 1});
    auto a = k.enumerate_candidates(1), b = k.enumerate_candidates(3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(a[i].chain, b[i].chain);
}

TEST(Kostant, SeedIsHarmonicAndLowestWeight) {
    auto r = build_sl(4);
    auto k = complex_for(r, {1});
    auto c = k.make_chain({{label(r, "E23"), label(r, "E24"), label(r, "E21"), 1}});
    EXPECT_TRUE(k.laplacian(c).is_zero());
    EXPECT_TRUE(k.is_lowest_weight(c));
    auto d = k.make_chain({{label(r, "E13"), label(r, "E24"), label(r, "E21"), 1}});
    EXPECT_FALSE(k.laplacian(d).is_zero() && k.is_lowest_weight(d));
}

TEST(Kostant, EvaluationIsAlternating) {
    auto r = build_sl(4);
    auto k = complex_for(r, {1});
    auto c = k.random_chain(2, 11);
    for (std::size_t a = 0; a < k.pdim(); ++a)
        for (std::size_t b = 0; b < k.pdim(); ++b) {
            auto x = k.evaluate(c, {k.v_vector(a), k.v_vector(b)});
            auto y = k.evaluate(c, {k.v_vector(b), k.v_vector(a)});
            EXPECT_EQ(x, -y);
        }
}

TEST(Kostant, LemmaCheckOnEnumeratedSeeds) {
    auto r = build_sl(5);
    for (auto cross : {std::vector<std::size_t>{0}, std::vector<std::size_t>{0, 1}}) {
        auto k = complex_for(r, cross);
        for (const auto &c : k.enumerate_candidates())
            EXPECT_EQ(k.lemma_assume_check(c.beta, c.gamma, c.zeta, c.chain).verdict,
                      LemmaVerdict::Passed);
    }
}

// the harmonic lowest weight space at 2e0-4e1 is 5-dimensional and holds the four-term seed
TEST(Kostant, QuaternionicSeedLiesInEnumeratedKernel) {
    Instance inst = instantiate(find_fixture("quaternionic_m2_n2"));
    const auto &k = *inst.complex;
    Covector w = inst.seed.beta + inst.seed.gamma + inst.seed.zeta;
    std::vector<ChainElement> found;
    for (const auto &c : k.enumerate_candidates())
        if (c.beta + c.gamma + c.zeta == w)
            found.push_back(c.chain);
    std::set<ChainKey> keys;
    for (const auto &c : found)
        for (const auto &[key, coef] : c.terms)
            keys.insert(key);
    for (const auto &[key, coef] : inst.seed.omega.terms)
        keys.insert(key);
    std::vector<ChainKey> order(keys.begin(), keys.end());
    auto flat = [&](const ChainElement &c) {
        Vector v(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            if (auto it = c.terms.find(order[i]); it != c.terms.end())
                v[i] = it->second;
        return v;
    };
    std::vector<Vector> span;
    for (const auto &c : found)
        span.push_back(flat(c));
    Subspace kernel(order.size(), span);
    EXPECT_EQ(kernel.dim(), 5u);
    EXPECT_TRUE(kernel.contains(flat(inst.seed.omega)));
}
