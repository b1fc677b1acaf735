#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvtree {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

Scalar parse_scalar(const std::string &text); // "p", "p/q", "-p/q"; throws std::invalid_argument
std::string to_string(const Scalar &x);
std::string to_string(const Vector &v);

Vector zeros(std::size_t n);
Vector unit(std::size_t n, std::size_t i);
bool is_zero(const Vector &v);
Scalar dot(const Vector &a, const Vector &b);
Vector operator+(const Vector &a, const Vector &b);
Vector operator-(const Vector &a, const Vector &b);
Vector operator-(const Vector &a);
Vector operator*(const Scalar &s, const Vector &v);
void axpy(Vector &y, const Scalar &a, const Vector &x); // y += a*x

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector> &rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vector> &cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Matrix transpose() const;
    Vector operator*(const Vector &v) const;
    Matrix operator*(const Matrix &o) const;
    Matrix operator-(const Matrix &o) const;
    bool operator==(const Matrix &o) const = default;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

// Reduced row echelon form; pivots[i] is the pivot column of row i.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};
Echelon rref(Matrix a);
std::size_t rank(const Matrix &a);
std::vector<Vector> kernel(const Matrix &a);
std::optional<Matrix> inverse(const Matrix &a);

struct AffineSolution {
    Vector particular;
    std::vector<Vector> homogeneous;
};
std::optional<AffineSolution> solve_affine(const Matrix &a, const Vector &b);

// throws DegenerateRestriction
Vector project_orthogonal(const Vector &v, const std::vector<Vector> &subspace,
                          const Matrix &form);

struct Constraint {
    Vector coeffs;
    Scalar rhs;
};
// Exact Fourier-Motzkin. Equalities: a.x = b. Strict: a.x > b.
std::optional<Vector> linear_feasibility(std::size_t dim,
                                         const std::vector<Constraint> &equalities,
                                         const std::vector<Constraint> &strict);

// Linear span inside an ambient coordinate space. The supplied spanning
// vectors are thinned to an independent basis, order preserved.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
    Subspace(std::size_t ambient, const std::vector<Vector> &spanning);
    static Subspace whole(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vector> &basis() const { return basis_; }
    const Vector &operator[](std::size_t i) const { return basis_[i]; }

    // adds v if independent; returns true if the span grew
    bool add(const Vector &v);
    bool contains(const Vector &v) const;
    bool contains(const Subspace &s) const;
    // coordinates against basis(); throws NotClosed if v is outside
    Vector coordinates(const Vector &v) const;
    Vector residue(const Vector &v) const;

  private:
    std::size_t ambient_ = 0;
    std::vector<Vector> basis_;
    // echelon rows with leading entry 1 plus the combination of basis vectors giving each
    std::vector<Vector> ech_;
    std::vector<Vector> combo_;
    std::vector<std::size_t> lead_;
};

Subspace intersect(const Subspace &a, const Subspace &b);
Subspace sum(const Subspace &a, const Subspace &b);

} // namespace curvtree
