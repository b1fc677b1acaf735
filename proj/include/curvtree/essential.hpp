#pragma once

#include "curvtree/seed.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvtree {

Subspace weight_kernel(const ParabolicGrading &g, const Covector &weight); // inside a, g coordinates
bool weight_is_scaling(const ParabolicGrading &g, const Covector &weight);

struct A0Hints {
    std::optional<Covector> alpha, nu0;
};

struct A0Certificate {
    bool found = false;
    std::string strategy; // central, big-g0, rank-one, exhaustive
    std::string reason;   // when not found
    Covector alpha, nu0;
    Vector r, a0;         // g coordinates
    Vector fixed_x;       // first basis vector of g_{-nu0}
};
A0Certificate find_a0(const ParabolicGrading &g, const Covector &weight, const A0Hints &hints = {});
// exact re-check of alpha^k + R in ker(weight) ∩ ker(nu0) with R in g0ss∩a
bool verify_a0(const ParabolicGrading &g, const Covector &weight, const Covector &alpha,
               const Covector &nu0, const Vector &r);

struct C0Certificate {
    bool found = false;
    bool projection_accepted = false;
    std::string strategy; // projection, feasibility
    std::string reason;
    Vector projection;    // pr_{ker weight}(E_gr)
    Scalar ratio;         // kappa(w,w) / w(E_gr)
    Scalar max_pairing;   // max kappa(w, nu) over nu(E_gr) = 1
    Vector c0;
};
C0Certificate find_c0(const ParabolicGrading &g, const Covector &weight);
// weight(c0) = 0 and nu(c0) > 0 for all nu in delta+(p+)
bool verify_c0(const ParabolicGrading &g, const Covector &weight, const Vector &c0);

struct HolonomyReport {
    Subspace hol;
    std::vector<Covector> support;
    std::size_t steps = 0;
    bool closed = false;         // [g-, hol] in hol
    bool contains_image = false; // im(Omega) in hol
    bool support_ok = false;     // weights of the form zeta - i beta - j gamma
    bool transversal = false;    // ker(beta+gamma+zeta) ∩ hol = 0
    bool nilpotent = false;      // every basis element is ad-nilpotent
    bool ok() const { return closed && contains_image && support_ok && transversal && nilpotent; }
};
HolonomyReport holonomy_algebra(const KostantComplex &k, const Seed &seed);

struct EssentialityCheck {
    bool ok = false;
    std::string detail;
};
// lambda_*(a0) = alpha(Z) for every Z in z(g0)∩a, so it is nonzero on scaling elements
EssentialityCheck check_essential(const ParabolicGrading &g, const A0Certificate &a0);

struct ConstructionCertificate {
    SeedCertificate seed;
    bool weight_scaling = false;
    A0Certificate a0;
    C0Certificate c0;
    EssentialityCheck essential;
    std::optional<HolonomyReport> holonomy;
    bool pass = false;
    std::string failed; // first unmet hypothesis
};
ConstructionCertificate certify_construction(const KostantComplex &k, const Seed &seed,
                                             const A0Hints &hints = {});

} // namespace curvtree
