#include "curvtree/commands.hpp"
#include "curvtree/essential.hpp"

#include <gtest/gtest.h>

using namespace curvtree;

namespace {

Covector weight(const Seed &s) { return s.beta + s.gamma + s.zeta; }

} // namespace

TEST(Essential, A0SatisfiesBothKernelConditions) {
    for (const char *name : {"grassmannian_k2_m4", "grassmannian_k1_m5", "grassmannian_k3_m7",
                             "borel_pgl4_pos", "path_m5", "quaternionic_m2_n2"}) {
        Instance inst = instantiate(find_fixture(name));
        const auto &g = *inst.grading;
        const auto &rs = g.system();
        Covector w = weight(inst.seed);
        for (bool hinted : {true, false}) {
            auto a = find_a0(g, w, hinted ? inst.hints : A0Hints{});
            ASSERT_TRUE(a.found) << name << " " << a.reason;
            EXPECT_EQ(rs.evaluate(w, a.a0), 0) << name;
            EXPECT_EQ(rs.evaluate(a.nu0, a.a0), 0) << name;
            EXPECT_TRUE(g.in_delta_plus_p(a.alpha));
            EXPECT_TRUE(is_zero(a.r) || g.g0ss_a().contains(a.r));
            EXPECT_EQ(rs.algebra().bracket(a.a0, a.fixed_x), zeros(rs.algebra().dim()));
        }
    }
}

TEST(Essential, ScalingWeightHasNoA0) {
    Instance inst = instantiate(find_fixture("borel_pgl4_neg"));
    auto a = find_a0(*inst.grading, weight(inst.seed));
    EXPECT_FALSE(a.found);
    EXPECT_EQ(a.reason, "weight is scaling element");
}

TEST(Essential, ProjectionRejectedOnEquality) {
    Instance inst = instantiate(find_fixture("path_m5"));
    auto c = find_c0(*inst.grading, weight(inst.seed));
    EXPECT_FALSE(c.projection_accepted);
    EXPECT_EQ(c.ratio, c.max_pairing);
    ASSERT_TRUE(c.found);
    EXPECT_EQ(c.strategy, "feasibility");
    EXPECT_TRUE(verify_c0(*inst.grading, weight(inst.seed), c.c0));
    EXPECT_FALSE(verify_c0(*inst.grading, weight(inst.seed), c.projection));
}

TEST(Essential, C0IsPositiveOnEveryRootOfPPlus) {
    Instance inst = instantiate(find_fixture("borel_pgl4_pos"));
    const auto &g = *inst.grading;
    const auto &rs = g.system();
    auto c = find_c0(g, weight(inst.seed));
    ASSERT_TRUE(c.found);
    for (auto i : g.delta_plus_p())
        EXPECT_GT(rs.evaluate(rs.roots()[i], c.c0), 0);
    EXPECT_EQ(epsilon_values(rs, c.c0),
              (Vector{Scalar(5, 3), 0, Scalar(-1, 3), Scalar(-4, 3)}));
}

TEST(Essential, HolonomyIsNilpotentAndTransversal) {
    for (const char *name : {"grassmannian_k2_m4", "borel_pgl4_pos", "path_m5", "quaternionic_m2_n2"}) {
        Instance inst = instantiate(find_fixture(name));
        auto h = holonomy_algebra(*inst.complex, inst.seed);
        EXPECT_TRUE(h.ok()) << name;
        EXPECT_GE(h.hol.dim(), 1u);
    }
}

TEST(Essential, EssentialityFollowsFromAlpha) {
    Instance inst = instantiate(find_fixture("borel_pgl4_pos"));
    auto a = find_a0(*inst.grading, weight(inst.seed), inst.hints);
    auto e = check_essential(*inst.grading, a);
    EXPECT_TRUE(e.ok) << e.detail;
}

TEST(Essential, ConstructionNamesFirstUnmetHypothesis) {
    Instance inst = instantiate(find_fixture("borel_pgl4_neg"));
    auto c = certify_construction(*inst.complex, inst.seed);
    EXPECT_FALSE(c.pass);
    EXPECT_EQ(c.failed, "weight is scaling element");
    Fixture f = find_fixture("grassmannian_k2_m4");
    f.terms[0].coeff = 0;
    Instance zero = instantiate(f);
    auto z = certify_construction(*zero.complex, zero.seed);
    EXPECT_FALSE(z.pass);
    EXPECT_EQ(z.failed, "Omega is zero");
}
