#pragma once

#include "curvtree/exact.hpp"
#include "curvtree/lie.hpp"
#include "curvtree/roots.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace curvtree {

struct Quaternion {
    Scalar w, x, y, z; // w + x i + y j + z k

    static Quaternion real(const Scalar &a) { return {a, 0, 0, 0}; }
    Quaternion conj() const { return {w, -x, -y, -z}; }
    Scalar norm2() const { return w * w + x * x + y * y + z * z; }
    bool is_zero() const { return sgn(w) == 0 && sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0; }
    const Scalar &operator[](int c) const;
    Scalar &operator[](int c);
    bool operator==(const Quaternion &o) const = default;
};
Quaternion operator+(const Quaternion &a, const Quaternion &b);
Quaternion operator-(const Quaternion &a, const Quaternion &b);
Quaternion operator-(const Quaternion &a);
Quaternion operator*(const Quaternion &a, const Quaternion &b);
Quaternion operator*(const Scalar &s, const Quaternion &a);

// Sparse square quaternion matrix, 0-based (row, col).
class QMatrix {
  public:
    QMatrix() = default;
    explicit QMatrix(std::size_t n) : n_(n) {}
    std::size_t size() const { return n_; }
    Quaternion get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Quaternion &q);
    void add(std::size_t r, std::size_t c, const Quaternion &q);
    const std::map<std::pair<std::size_t, std::size_t>, Quaternion> &entries() const { return e_; }

    QMatrix operator*(const QMatrix &o) const;
    QMatrix operator+(const QMatrix &o) const;
    QMatrix operator-(const QMatrix &o) const;
    QMatrix conj_transpose() const;
    bool operator==(const QMatrix &o) const { return n_ == o.n_ && e_ == o.e_; }

  private:
    std::size_t n_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, Quaternion> e_;
};
QMatrix operator*(const Scalar &s, const QMatrix &m);
QMatrix commutator(const QMatrix &a, const QMatrix &b);

// A basis of matrices with exact coordinate extraction.
class MatrixRealization {
  public:
    MatrixRealization() = default;
    // components = 1 for real matrices, 4 for quaternionic ones
    MatrixRealization(std::size_t size, int components, std::vector<QMatrix> basis);
    std::size_t dim() const { return basis_.size(); }
    std::size_t size() const { return size_; }
    int components() const { return comps_; }
    const std::vector<QMatrix> &basis() const { return basis_; }
    QMatrix matrix(const Vector &coords) const;
    // throws NotClosed if m is outside the span
    Vector coordinates(const QMatrix &m) const;
    std::vector<SparseVector> structure_table() const;

  private:
    std::size_t flat(std::size_t r, std::size_t c, int comp) const {
        return (r * size_ + c) * static_cast<std::size_t>(comps_) + static_cast<std::size_t>(comp);
    }
    std::size_t size_ = 0;
    int comps_ = 1;
    std::vector<QMatrix> basis_;
    std::map<std::size_t, std::size_t> pivot_slot_; // flat index -> slot
    Matrix pinv_;                                    // coords = pinv * v[pivots]
};

struct Realization {
    std::string descriptor;
    std::shared_ptr<const LieAlgebra> algebra;
    std::shared_ptr<const RestrictedRootSystem> roots;
    std::shared_ptr<const MatrixRealization> matrices; // null for loaded algebras
};

// sl_m(R) with basis E_ij (i != j, lexicographic) then H_b = E_bb - E_{b+1,b+1}.
Realization build_sl(int m);
// Quaternionic contact family sp(m+1, n+1); requires n >= m > 1.
Realization build_quaternionic(int m, int n);

struct LoadedAlgebra {
    std::shared_ptr<const LieAlgebra> algebra;
    std::vector<Vector> cartan; // optional "cartan" directive lines
};
// Text format: "dim N", then "i j k p/q" lines (1-based; c[i][j] has p/q on e_k).
// Blank lines and '#' comments are ignored. Optional lines "cartan v1 ... vN"
// list a basis of a split Cartan subalgebra. Throws ParseError / JacobiViolation.
LoadedAlgebra parse_structure_constants(const std::string &text);
LoadedAlgebra load_structure_constants(const std::string &path);
Realization realize_loaded(const LoadedAlgebra &loaded, const std::string &descriptor);

// "sl:4", "qc:2,2", "file:PATH"; throws ParseError
Realization build_from_descriptor(const std::string &descriptor);

// helpers for sl realizations
QMatrix real_matrix(const std::vector<std::vector<Scalar>> &rows);
QMatrix diagonal(const std::vector<Scalar> &d);
// subtract the trace/m from the diagonal (pgl -> sl normalization)
QMatrix traceless(const QMatrix &m);

} // namespace curvtree
