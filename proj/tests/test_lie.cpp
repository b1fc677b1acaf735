#include "curvtree/builders.hpp"
#include "curvtree/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace curvtree;

namespace {

std::vector<SparseVector> table_of(const LieAlgebra &g) {
    std::vector<SparseVector> t;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j)
            t.push_back(g.bracket_basis(i, j));
    return t;
}

} // namespace

TEST(Lie, BuiltAlgebrasSatisfyJacobi) {
    for (const char *d : {"sl:2", "sl:3", "sl:4", "sl:6", "qc:2,2"}) {
        auto r = build_from_descriptor(d);
        EXPECT_FALSE(jacobi_witness(table_of(*r.algebra), r.algebra->dim())) << d;
        EXPECT_TRUE(r.algebra->is_semisimple()) << d;
    }
}

TEST(Lie, KillingFormOfSl4) {
    auto r = build_sl(4);
    const auto &g = *r.algebra;
    EXPECT_EQ(g.dim(), 15u);
    auto e = [&](const std::string &l) {
        for (std::size_t i = 0; i < g.dim(); ++i)
            if (g.label(i) == l)
                return unit(g.dim(), i);
        throw std::runtime_error(l);
    };
    EXPECT_EQ(g.killing_form(e("E12"), e("E21")), 8);
    EXPECT_EQ(g.killing_form(e("H1"), e("H1")), 16);
    EXPECT_EQ(g.killing_form(e("E12"), e("E12")), 0);
}

TEST(Lie, KillingInvarianceAndDuality) {
    auto r = build_sl(3);
    const auto &g = *r.algebra;
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-2, 2);
    auto rv = [&] {
        Vector v(g.dim());
        for (auto &x : v)
            x = c(rng);
        return v;
    };
    for (int t = 0; t < 50; ++t) {
        Vector x = rv(), y = rv(), z = rv();
        EXPECT_EQ(g.killing_form(g.bracket(x, y), z), -g.killing_form(y, g.bracket(x, z)));
        EXPECT_EQ(g.killing_lower(g.killing_dual(x)), x);
    }
}

TEST(Lie, DerivedSeriesAndIdeals) {
    auto r = build_sl(3);
    const auto &g = *r.algebra;
    auto br = ordinary_bracket(g);
    // strictly upper triangular matrices form a solvable subalgebra
    Subspace n(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (g.label(i) == "E12" || g.label(i) == "E13" || g.label(i) == "E23")
            n.add(unit(g.dim(), i));
    auto ds = derived_series(n, br);
    EXPECT_TRUE(ds.solvable);
    EXPECT_FALSE(derived_series(Subspace::whole(g.dim()), br).solvable);
    EXPECT_FALSE(is_ideal(n, Subspace::whole(g.dim()), br).ideal);
}

TEST(StructureConstants, ParsesSl2WithCartan) {
    auto a = parse_structure_constants("dim 3\n# comment\n1 2 3 1\n3 1 1 2\n3 2 2 -2\ncartan 0 0 1\n");
    EXPECT_EQ(a.algebra->dim(), 3u);
    ASSERT_EQ(a.cartan.size(), 1u);
    auto r = realize_loaded(a, "file:sl2");
    ASSERT_TRUE(r.roots);
    EXPECT_EQ(r.roots->roots().size(), 2u);
}

TEST(StructureConstants, RejectsMalformedInput) {
    EXPECT_THROW(parse_structure_constants("1 2 3 1\n"), ParseError);
    EXPECT_THROW(parse_structure_constants("dim 2\n1 2 3 1\n"), ParseError);
    EXPECT_THROW(parse_structure_constants("dim 2\n1 2 1 1\n2 1 1 1\n"), ParseError);
    EXPECT_THROW(parse_structure_constants("dim 2\n1 2 1 x\n"), ParseError);
    EXPECT_THROW(parse_structure_constants("dim 3\n1 2 3 1\n2 3 1 1\n3 1 1 1\n"), JacobiViolation);
}

TEST(Descriptors, RejectUnknownForms) {
    EXPECT_THROW(build_from_descriptor("so:5"), ParseError);
    EXPECT_THROW(build_from_descriptor("sl:x"), ParseError);
    EXPECT_THROW(build_from_descriptor("nocolon"), ParseError);
    EXPECT_THROW(build_from_descriptor("qc:3,2"), Error);
}
