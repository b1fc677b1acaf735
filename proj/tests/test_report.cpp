#include "curvtree/commands.hpp"
#include "curvtree/errors.hpp"

#include <gtest/gtest.h>

using namespace curvtree;

TEST(Fixtures, AllShippedFixturesLoad) {
    auto names = list_fixtures();
    EXPECT_EQ(names.size(), 7u);
    for (const auto &n : names) {
        Fixture f = find_fixture(n);
        EXPECT_EQ(f.name, n);
        EXPECT_FALSE(f.terms.empty());
    }
}

TEST(Fixtures, RejectBadRecords) {
    EXPECT_THROW(parse_fixture("{"), ParseError);
    EXPECT_THROW(parse_fixture(R"({"name": "x"})"), ParseError);
    Fixture f = parse_fixture(R"({"name": "x", "algebra": "sl:4", "cross": [2],
        "beta": [0, 1, -1], "gamma": [0, 1, 0, -1], "zeta": [-1, 1, 0, 0],
        "terms": [{"wedge": ["E23", "E24"], "value": "E21"}]})");
    EXPECT_THROW(instantiate(f), ParseError);
    EXPECT_THROW(find_fixture("missing_fixture"), ParseError);
    EXPECT_THROW(parse_cross("1,,2"), ParseError);
    EXPECT_THROW(parse_cross("0"), ParseError);
    EXPECT_EQ(parse_cross("3,1,3"), (std::vector<std::size_t>{1, 3}));
}

TEST(Report, JsonRoundTrip) {
    Report r = cmd_certify(find_fixture("grassmannian_k2_m4"));
    r.timestamp = "2000-01-01T00:00:00Z";
    Report back = Report::from_json(r.to_json());
    EXPECT_EQ(back, r);
    EXPECT_TRUE(back.pass);
    EXPECT_EQ(back.field("c0", "c0"), "e1=2/3, e2=0, e3=-1/3, e4=-1/3");
    EXPECT_EQ(back.field("a0", "alpha"), "e1-e4");
}

TEST(Report, EveryCheckCarriesATag) {
    for (const auto &n : list_fixtures()) {
        Report r = cmd_certify(find_fixture(n));
        for (const auto &c : r.checks)
            EXPECT_FALSE(c.tag.empty()) << n << " " << c.name;
        if (!r.pass)
            EXPECT_FALSE(r.failed.empty());
    }
}

TEST(Report, DeterministicApartFromTimestamp) {
    Report a = cmd_enumerate("sl:4", {1, 2, 3}, 1);
    Report b = cmd_enumerate("sl:4", {1, 2, 3}, 3);
    EXPECT_EQ(a.to_json(), b.to_json());
    EXPECT_EQ(a.to_text(), b.to_text());
}

TEST(Report, TextNeverShowsFloats) {
    Report r = cmd_certify(find_fixture("path_m5"));
    std::string t = r.to_text();
    EXPECT_EQ(t.find('.'), std::string::npos);
    EXPECT_NE(t.find("ratio: 2/5"), std::string::npos);
}

TEST(Commands, InlineSeedMatchesFixture) {
    Report a = cmd_certify_inline("sl:4", {2}, "e2-e3,e2-e4,e2-e1");
    EXPECT_TRUE(a.pass) << a.failed;
    Report b = cmd_certify_inline("sl:4", {2}, "e2-e3,e2-e4,e2-e1:E23^E24>E21*3");
    EXPECT_TRUE(b.pass) << b.failed;
    EXPECT_THROW(cmd_certify_inline("sl:4", {2}, "e2-e3,e2-e4"), ParseError);
    EXPECT_THROW(cmd_certify_inline("sl:4", {2}, "e2-e3,e2-e4,e2-e1:E23^E99>E21"), ParseError);
}

TEST(Commands, AuditSurfacesJacobiFailure) {
    Report r = cmd_audit(std::string("file:") + CURVTREE_TEST_DATA + "/broken.sc", {1});
    EXPECT_FALSE(r.pass);
    ASSERT_NE(r.find("jacobi"), nullptr);
    EXPECT_EQ(r.find("jacobi")->verdict, Verdict::Fail);
    EXPECT_EQ(r.field("jacobi", "witness"), "(1, 2, 3)");
}

TEST(Commands, CartanFromEpsilon) {
    auto real = build_sl(5);
    Vector h = cartan_from_epsilon(*real.roots, {2, 1, 0, 0, -3});
    EXPECT_EQ(epsilon_values(*real.roots, h), (Vector{2, 1, 0, 0, -3}));
    EXPECT_THROW(cartan_from_epsilon(*real.roots, {1, 0, 0, 0, 0}), Error);
}
