#pragma once

#include "curvtree/fixtures.hpp"
#include "curvtree/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace curvtree {

// Rendering helpers shared by reports and bindings.
std::string render_cartan(const RestrictedRootSystem &rs, const Vector &h); // epsilon values
std::string render_vector(const LieAlgebra &g, const Vector &x);            // "2 E12 - 1/2 H1"
Vector epsilon_values(const RestrictedRootSystem &rs, const Vector &h);
// element of a with the given epsilon values; throws Error if none exists
Vector cartan_from_epsilon(const RestrictedRootSystem &rs, const Vector &values);

struct AuditOptions {
    std::size_t killing_triples = 1000;
    std::size_t dual_covectors = 100;
    std::size_t chains_per_degree = 100;
    std::uint32_t seed = 1;
    bool hodge = true;
};

// Input errors (bad descriptors, labels, fixtures) throw ParseError or Error;
// mathematical failures are recorded in the report.
Report cmd_enumerate(const std::string &algebra, const std::vector<std::size_t> &cross,
                     unsigned parallel = 1);
Report cmd_certify(const Fixture &fixture);
// "BETA,GAMMA,ZETA" takes the unique enumerated chain of that weight triple;
// "BETA,GAMMA,ZETA:A^B>C*coef;..." lists the terms by basis label
Report cmd_certify_inline(const std::string &algebra, const std::vector<std::size_t> &cross,
                          const std::string &seed, unsigned parallel = 1);
Report cmd_audit(const std::string &algebra, const std::vector<std::size_t> &cross,
                 const AuditOptions &options = {});

Instance inline_instance(const std::string &algebra, const std::vector<std::size_t> &cross,
                         const std::string &seed, unsigned parallel = 1);
// certification report for a prepared instance; expectations become extra checks
Report certify_instance(const Instance &inst, Fields meta, const FixtureExpectation &expect = {});

} // namespace curvtree
