#pragma once

#include "curvtree/roots.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace curvtree {

class ParabolicGrading {
  public:
    // crossed: positions into system->simples(), 0-based. E_gr is the element of a
    // with alpha(E_gr) = 1 on crossed simples and 0 on the rest.
    static std::shared_ptr<const ParabolicGrading>
    grade(std::shared_ptr<const RestrictedRootSystem> system, std::vector<std::size_t> crossed);

    const RestrictedRootSystem &system() const { return *system_; }
    std::shared_ptr<const RestrictedRootSystem> system_ptr() const { return system_; }
    const LieAlgebra &algebra() const { return system_->algebra(); }
    const std::vector<std::size_t> &crossed() const { return crossed_; }

    const Vector &grading_element() const { return e_gr_; } // g coordinates
    int depth() const { return depth_; }
    int degree(const Covector &nu) const; // nu(E_gr); throws Error if not an integer
    int root_degree(std::size_t root) const { return root_degree_[root]; }
    int adapted_degree(std::size_t j) const; // degree of adapted basis vector j

    // component(i) for -depth <= i <= depth, in g coordinates
    const Subspace &component(int i) const { return components_.at(i); }
    const Subspace &g_minus() const { return g_minus_; }
    const Subspace &p_plus() const { return p_plus_; }
    const Subspace &p() const { return p_; }
    const Subspace &g0() const { return component(0); }

    // root indices in canonical order
    const std::vector<std::size_t> &delta_plus_p() const { return delta_plus_p_; }
    const std::vector<std::size_t> &g0_roots() const { return g0_roots_; }
    const std::vector<std::size_t> &g0_negative_roots() const { return g0_negative_; }
    bool in_delta_plus_p(const Covector &nu) const;

    // subspaces of a, in g coordinates
    const Subspace &z_g0_a() const { return z_g0_a_; }
    const Subspace &g0ss_a() const { return g0ss_a_; }
    Vector project_g0ss(const Vector &h) const; // kappa-orthogonal projection within a

    bool in_z_g0(const Vector &z) const;
    bool is_scaling_element(const Vector &z) const;
    Scalar homogeneity(const Covector &weight) const { return system_->evaluate(weight, e_gr_); }

  private:
    ParabolicGrading() = default;

    std::shared_ptr<const RestrictedRootSystem> system_;
    std::vector<std::size_t> crossed_;
    Vector e_gr_;
    int depth_ = 0;
    std::vector<int> root_degree_;
    std::map<int, Subspace> components_;
    Subspace g_minus_, p_plus_, p_;
    std::vector<std::size_t> delta_plus_p_, g0_roots_, g0_negative_;
    Subspace z_g0_a_, g0ss_a_;
};

struct AuditLine {
    std::string name;
    bool pass = true;
    std::string detail; // first witness on failure
};

// Eigenvalue, bracket grading, Killing pairing, generation by g_{+-1},
// a = z(g0)∩a ⊕ g0ss∩a.
std::vector<AuditLine> audit_grading(const ParabolicGrading &grading);

} // namespace curvtree
