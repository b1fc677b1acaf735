#pragma once

#include "curvtree/builders.hpp"
#include "curvtree/essential.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace curvtree {

// Roots are epsilon-coordinate tuples; vectors are labels of the algebra basis.
struct FixtureTerm {
    std::string beta, gamma, zeta;
    Scalar coeff;
};

struct FixtureExpectation {
    std::optional<bool> pass;
    std::optional<std::string> failed;
    std::optional<Vector> alpha, nu0;      // epsilon coordinates
    std::optional<std::string> a0_strategy, c0_strategy;
    std::optional<Vector> c0;              // epsilon values on c0
    std::optional<Scalar> ratio;
};

struct Fixture {
    std::string name, description, algebra;
    std::vector<std::size_t> cross;        // 1-based, as on the command line
    Vector beta, gamma, zeta;
    std::vector<FixtureTerm> terms;
    std::optional<Vector> alpha_hint, nu0_hint;
    FixtureExpectation expect;
};

// Throws ParseError.
Fixture parse_fixture(const std::string &json_text, const std::string &origin = "");
Fixture load_fixture(const std::string &path);

// $CURVTREE_FIXTURES if set, else the source tree copy
std::string fixture_directory();
std::vector<std::string> list_fixtures();
// a name from the fixture directory or a path to a .json file
Fixture find_fixture(const std::string &name_or_path);

struct Instance {
    Realization realization;
    std::shared_ptr<const ParabolicGrading> grading;
    std::shared_ptr<const KostantComplex> complex;
    Seed seed;
    A0Hints hints;
};
Instance instantiate(const Fixture &f);

// "1,3" -> {0, 2}; throws ParseError
std::vector<std::size_t> parse_cross(const std::string &text);
std::vector<std::size_t> to_positions(const std::vector<std::size_t> &one_based);
Vector basis_vector(const LieAlgebra &g, const std::string &label); // throws ParseError

} // namespace curvtree
