#pragma once

#include "curvtree/exact.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvtree {

struct Term {
    std::size_t index;
    Scalar coeff;
};
using SparseVector = std::vector<Term>; // sorted by index, no zero coefficients

SparseVector sparsify(const Vector &v);
Vector densify(const SparseVector &s, std::size_t n);

class LieAlgebra {
  public:
    // table[i * dim + j] = [e_i, e_j]. Antisymmetry and Jacobi are verified
    // on all basis triples; throws JacobiViolation / Error.
    LieAlgebra(std::vector<std::string> labels, std::vector<SparseVector> table);

    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::string &label(std::size_t i) const { return labels_[i]; }

    const SparseVector &bracket_basis(std::size_t i, std::size_t j) const {
        return table_[i * dim() + j];
    }
    Vector bracket(const Vector &x, const Vector &y) const;
    Matrix ad(const Vector &x) const;

    const Matrix &killing_matrix() const { return killing_; }
    Scalar killing_form(const Vector &x, const Vector &y) const;
    bool is_semisimple() const { return killing_inverse_.has_value(); }
    // psi given as values on the basis; returns psi^kappa. Throws DegenerateForm.
    Vector killing_dual(const Vector &psi) const;
    // the functional kappa(x, .) as values on the basis
    Vector killing_lower(const Vector &x) const;

  private:
    std::vector<std::string> labels_;
    std::vector<SparseVector> table_;
    Matrix killing_;
    std::optional<Matrix> killing_inverse_;
};

using Bracket = std::function<Vector(const Vector &, const Vector &)>;
Bracket ordinary_bracket(const LieAlgebra &g);

struct DerivedSeries {
    std::vector<Subspace> terms; // D^0 = S, D^1, ... until stable
    bool solvable = false;
};
// throws NotClosed (with the offending basis pair) if S is not a subalgebra
DerivedSeries derived_series(const Subspace &s, const Bracket &bracket);

struct IdealCheck {
    bool ideal = true;
    std::optional<std::pair<Vector, Vector>> witness; // (x in `in`, y in S) with [x,y] outside S
};
IdealCheck is_ideal(const Subspace &s, const Subspace &in, const Bracket &bracket);

// First violating basis triple of the Jacobi identity, if any.
std::optional<std::array<std::size_t, 3>> jacobi_witness(const std::vector<SparseVector> &table,
                                                         std::size_t dim);

} // namespace curvtree
