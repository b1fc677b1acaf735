#include "curvtree/lie.hpp"

#include "curvtree/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace curvtree {

SparseVector sparsify(const Vector &v) {
    SparseVector s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            s.push_back({i, v[i]});
    return s;
}

Vector densify(const SparseVector &s, std::size_t n) {
    Vector v(n);
    for (const auto &t : s)
        v[t.index] += t.coeff;
    return v;
}

namespace {

// accumulates a * [e_l, e_k] for every term (l, a) of x into out
void add_bracket_of_sparse(Vector &out, const std::vector<SparseVector> &table, std::size_t dim,
                           const SparseVector &x, std::size_t k, const Scalar &scale) {
    for (const auto &t : x)
        for (const auto &u : table[t.index * dim + k])
            out[u.index] += scale * t.coeff * u.coeff;
}

} // namespace

std::optional<std::array<std::size_t, 3>> jacobi_witness(const std::vector<SparseVector> &table,
                                                         std::size_t dim) {
    Vector acc(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            for (std::size_t k = j + 1; k < dim; ++k) {
                const auto &ij = table[i * dim + j];
                const auto &jk = table[j * dim + k];
                const auto &ki = table[k * dim + i];
                if (ij.empty() && jk.empty() && ki.empty())
                    continue;
                std::fill(acc.begin(), acc.end(), Scalar(0));
                add_bracket_of_sparse(acc, table, dim, ij, k, 1);
                add_bracket_of_sparse(acc, table, dim, jk, i, 1);
                add_bracket_of_sparse(acc, table, dim, ki, j, 1);
                if (!is_zero(acc))
                    return std::array<std::size_t, 3>{i, j, k};
            }
    return std::nullopt;
}

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::vector<SparseVector> table)
    : labels_(std::move(labels)), table_(std::move(table)) {
    const std::size_t n = labels_.size();
    if (table_.size() != n * n)
        throw Error("structure table has " + std::to_string(table_.size()) +
                    " entries, expected " + std::to_string(n * n));
    for (auto &entry : table_) {
        std::sort(entry.begin(), entry.end(),
                  [](const Term &a, const Term &b) { return a.index < b.index; });
        for (const auto &t : entry)
            if (t.index >= n)
                throw Error("structure constant index out of range");
        entry.erase(std::remove_if(entry.begin(), entry.end(),
                                   [](const Term &t) { return sgn(t.coeff) == 0; }),
                    entry.end());
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!table_[i * n + i].empty())
            throw Error("[e" + std::to_string(i + 1) + ", e" + std::to_string(i + 1) +
                        "] is nonzero");
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector a = densify(table_[i * n + j], n);
            Vector b = densify(table_[j * n + i], n);
            if (!is_zero(a + b))
                throw Error("antisymmetry fails for basis pair (" + std::to_string(i + 1) + ", " +
                            std::to_string(j + 1) + ")");
        }
    }
    if (auto w = jacobi_witness(table_, n))
        throw JacobiViolation("Jacobi identity fails on basis triple (" + labels_[(*w)[0]] + ", " +
                                  labels_[(*w)[1]] + ", " + labels_[(*w)[2]] + ")",
                              static_cast<int>((*w)[0]), static_cast<int>((*w)[1]),
                              static_cast<int>((*w)[2]));

    // kappa_ij = sum_k sum_l c_{jk}^l c_{il}^k
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> by_lk(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
            for (const auto &t : table_[i * n + l])
                by_lk[l * n + t.index].emplace_back(i, t.coeff);
    killing_ = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (const auto &t : table_[j * n + k])
                for (const auto &[i, c] : by_lk[t.index * n + k])
                    killing_(i, j) += t.coeff * c;
    killing_inverse_ = n == 0 ? std::optional<Matrix>(Matrix()) : inverse(killing_);
}

Vector LieAlgebra::bracket(const Vector &x, const Vector &y) const {
    const std::size_t n = dim();
    if (x.size() != n || y.size() != n)
        throw std::invalid_argument("bracket: dimension mismatch");
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(y[j]) == 0)
                continue;
            const auto &entry = table_[i * n + j];
            if (entry.empty())
                continue;
            Scalar f = x[i] * y[j];
            for (const auto &t : entry)
                out[t.index] += f * t.coeff;
        }
    }
    return out;
}

Matrix LieAlgebra::ad(const Vector &x) const {
    const std::size_t n = dim();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0)
            continue;
        for (std::size_t k = 0; k < n; ++k)
            for (const auto &t : table_[i * n + k])
                m(t.index, k) += x[i] * t.coeff;
    }
    return m;
}

Scalar LieAlgebra::killing_form(const Vector &x, const Vector &y) const {
    return dot(x, killing_ * y);
}

Vector LieAlgebra::killing_lower(const Vector &x) const { return killing_ * x; }

Vector LieAlgebra::killing_dual(const Vector &psi) const {
    if (!killing_inverse_)
        throw DegenerateForm("Killing form is degenerate; the algebra is not semisimple");
    return *killing_inverse_ * psi;
}

Bracket ordinary_bracket(const LieAlgebra &g) {
    return [&g](const Vector &x, const Vector &y) { return g.bracket(x, y); };
}

DerivedSeries derived_series(const Subspace &s, const Bracket &bracket) {
    DerivedSeries out;
    Subspace cur = s;
    for (std::size_t a = 0; a < cur.dim(); ++a)
        for (std::size_t b = a + 1; b < cur.dim(); ++b)
            if (!cur.contains(bracket(cur[a], cur[b])))
                throw NotClosed("subspace not closed under the bracket: basis pair (" +
                                std::to_string(a) + ", " + std::to_string(b) + ")");
    out.terms.push_back(cur);
    while (cur.dim() > 0) {
        Subspace next(cur.ambient());
        for (std::size_t a = 0; a < cur.dim(); ++a)
            for (std::size_t b = a + 1; b < cur.dim(); ++b)
                next.add(bracket(cur[a], cur[b]));
        if (next.dim() == cur.dim())
            break;
        out.terms.push_back(next);
        cur = std::move(next);
    }
    out.solvable = out.terms.back().dim() == 0;
    return out;
}

IdealCheck is_ideal(const Subspace &s, const Subspace &in, const Bracket &bracket) {
    IdealCheck r;
    for (const auto &x : in.basis())
        for (const auto &y : s.basis())
            if (!s.contains(bracket(x, y))) {
                r.ideal = false;
                r.witness = std::make_pair(x, y);
                return r;
            }
    return r;
}

} // namespace curvtree
