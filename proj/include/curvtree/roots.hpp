#pragma once

#include "curvtree/exact.hpp"
#include "curvtree/lie.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace curvtree {

using Covector = Vector; // values on the a-basis

struct JointEigenspace {
    Vector weight; // eigenvalue under each operator
    std::vector<Vector> basis;
};
// Commuting operators on Q^n, jointly diagonalized over Q.
// Throws NotSimultaneouslyDiagonalizable.
std::vector<JointEigenspace> joint_eigenspaces(const std::vector<Matrix> &ops, std::size_t n);

// Rational roots of a polynomial given by coefficients c0 + c1 x + ... (distinct roots only).
std::vector<Scalar> rational_roots(const Vector &coeffs);

// Builder-supplied coordinate functionals used for input and rendering.
struct EpsilonFrame {
    std::vector<std::string> labels; // e.g. "e1", ..., "em"
    std::vector<Covector> values;    // epsilon_i as a covector on a
};

struct RootSystemOptions {
    std::optional<Matrix> theta;       // Cartan involution on g coordinates
    std::optional<Vector> ordering;    // a-coordinates of a regular element defining positivity
    std::optional<EpsilonFrame> epsilon;
};

class RestrictedRootSystem {
  public:
    // Throws Error if a is not abelian, NotSimultaneouslyDiagonalizable,
    // or Error if theta is incompatible.
    static std::shared_ptr<const RestrictedRootSystem>
    decompose(std::shared_ptr<const LieAlgebra> algebra, const std::vector<Vector> &cartan,
              RootSystemOptions options = {});

    const LieAlgebra &algebra() const { return *algebra_; }
    std::shared_ptr<const LieAlgebra> algebra_ptr() const { return algebra_; }
    std::size_t rank() const { return cartan_.dim(); }
    const Subspace &cartan() const { return cartan_; }
    const std::optional<Matrix> &theta() const { return theta_; }
    const Subspace &zero_space() const { return zero_space_; }

    // canonical order: positives first, then negatives (each -positives[i])
    const std::vector<Covector> &roots() const { return roots_; }
    std::size_t num_positive() const { return roots_.size() / 2; }
    const std::vector<std::size_t> &simples() const { return simples_; }
    const std::vector<Vector> &root_space(std::size_t i) const { return spaces_[i]; }
    std::optional<std::size_t> index_of(const Covector &nu) const;
    bool is_root(const Covector &nu) const { return index_of(nu).has_value(); }
    bool is_positive_root(const Covector &nu) const;
    bool is_simple_root(const Covector &nu) const;
    const Vector &ordering() const { return ordering_; }

    // a helpers
    Vector from_a(const Vector &coords) const;       // a-coordinates -> g
    Vector a_coordinates(const Vector &h) const;     // g (in a) -> a-coordinates
    Scalar evaluate(const Covector &nu, const Vector &h) const; // nu(h), h in g coordinates
    Vector dual(const Covector &nu) const;           // nu^kappa in g coordinates
    Covector lower(const Vector &h) const;           // kappa(h, .) restricted to a
    Scalar inner(const Covector &a, const Covector &b) const;
    Covector reflect(const Covector &alpha, const Covector &nu) const; // throws IsotropicRoot
    Covector highest_root() const;                   // throws NotSimple
    const Matrix &gram() const { return gram_; }

    // epsilon frame
    const EpsilonFrame &epsilon() const { return epsilon_; }
    Covector from_epsilon(const Vector &coeffs) const;
    Vector epsilon_coordinates(const Covector &nu) const; // min-norm representative
    std::string render(const Covector &nu) const;
    Covector parse_root(const std::string &expr) const; // "e1-2e2+e4"; throws ParseError

    // adapted basis: zero_space basis then root spaces in canonical order
    const std::vector<Vector> &adapted_basis() const { return adapted_; }
    Vector adapted_coordinates(const Vector &x) const { return adapted_inverse_ * x; }
    // index into the adapted basis of the first vector of root_space(i)
    std::size_t adapted_offset(std::size_t root) const { return offsets_[root]; }
    // weight of adapted basis vector j (zero covector for the zero space)
    const Covector &adapted_weight(std::size_t j) const { return adapted_weight_[j]; }
    // -1 for the zero space
    long adapted_root(std::size_t j) const { return adapted_root_[j]; }

  private:
    RestrictedRootSystem() = default;

    std::shared_ptr<const LieAlgebra> algebra_;
    Subspace cartan_;
    std::optional<Matrix> theta_;
    Subspace zero_space_;
    std::vector<Covector> roots_;
    std::vector<std::vector<Vector>> spaces_;
    std::vector<std::size_t> simples_;
    Vector ordering_;
    Matrix gram_;
    std::optional<Matrix> gram_inverse_;
    EpsilonFrame epsilon_;
    Matrix eps_pinv_; // r x rank
    std::vector<Vector> adapted_;
    Matrix adapted_inverse_;
    std::vector<std::size_t> offsets_;
    std::vector<Covector> adapted_weight_;
    std::vector<long> adapted_root_;
};

} // namespace curvtree
