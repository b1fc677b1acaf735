#include "curvtree/builders.hpp"
#include "curvtree/parabolic.hpp"

#include <gtest/gtest.h>

using namespace curvtree;

namespace {

void all_pass(const ParabolicGrading &g) {
    for (const auto &line : audit_grading(g))
        EXPECT_TRUE(line.pass) << line.name << ": " << line.detail;
}

} // namespace

TEST(Grading, GrassmannianIsOneGraded) {
    auto r = build_sl(4);
    auto g = ParabolicGrading::grade(r.roots, {1});
    EXPECT_EQ(g->depth(), 1);
    EXPECT_EQ(g->p_plus().dim(), 4u);
    EXPECT_EQ(g->g0().dim(), 7u);
    EXPECT_EQ(g->delta_plus_p().size(), 4u);
    EXPECT_EQ(g->z_g0_a().dim(), 1u);
    EXPECT_EQ(g->g0ss_a().dim(), 2u);
    EXPECT_TRUE(g->is_scaling_element(g->grading_element()));
    all_pass(*g);
}

TEST(Grading, BorelIsThreeGraded) {
    auto r = build_sl(4);
    auto g = ParabolicGrading::grade(r.roots, {0, 1, 2});
    EXPECT_EQ(g->depth(), 3);
    EXPECT_EQ(g->g0().dim(), 3u);
    EXPECT_EQ(g->g0ss_a().dim(), 0u);
    EXPECT_EQ(g->z_g0_a().dim(), 3u);
    all_pass(*g);
}

TEST(Grading, PathGeometryGradingElement) {
    auto r = build_sl(5);
    auto g = ParabolicGrading::grade(r.roots, {0, 1});
    EXPECT_EQ(g->depth(), 2);
    const auto &rs = g->system();
    EXPECT_EQ(rs.evaluate(rs.parse_root("e1-e2"), g->grading_element()), 1);
    EXPECT_EQ(rs.evaluate(rs.parse_root("e1-e5"), g->grading_element()), 2);
    all_pass(*g);
}

TEST(Grading, QuaternionicContactIsTwoGraded) {
    auto r = build_quaternionic(2, 2);
    auto g = ParabolicGrading::grade(r.roots, {0});
    EXPECT_EQ(g->depth(), 2);
    EXPECT_EQ(g->component(2).dim(), 3u);
    EXPECT_EQ(g->component(1).dim(), 16u);
    EXPECT_EQ(g->z_g0_a().dim(), 1u);
    all_pass(*g);
}

TEST(Grading, ScalingElementsAvoidEveryRootOfPPlus) {
    auto r = build_sl(4);
    auto g = ParabolicGrading::grade(r.roots, {0, 1, 2});
    const auto &rs = g->system();
    EXPECT_TRUE(g->is_scaling_element(rs.dual(rs.parse_root("e1-2e2+2e3-e4"))));
    EXPECT_FALSE(g->is_scaling_element(rs.dual(rs.parse_root("4e2"))));
    EXPECT_TRUE(g->in_z_g0(rs.dual(rs.parse_root("4e2"))));
}
