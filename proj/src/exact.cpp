#include "curvtree/exact.hpp"

#include "curvtree/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace curvtree {

Scalar parse_scalar(const std::string &text) {
    std::string t;
    for (char ch : text)
        if (ch != ' ' && ch != '\t')
            t.push_back(ch);
    if (t.empty())
        throw std::invalid_argument("empty rational");
    std::size_t slash = t.find('/');
    auto digits = [](const std::string &s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+'))
            i = 1;
        if (i >= s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false))
        throw std::invalid_argument("malformed rational '" + text + "'");
    if (num[0] == '+')
        num = num.substr(1);
    mpz_class d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    Scalar q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Scalar &x) { return x.get_str(); }

std::string to_string(const Vector &v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

Vector zeros(std::size_t n) { return Vector(n); }

Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

bool is_zero(const Vector &v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar &x) { return sgn(x) == 0; });
}

Scalar dot(const Vector &a, const Vector &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

Vector operator+(const Vector &a, const Vector &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vector add: dimension mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector &a, const Vector &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vector sub: dimension mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Vector operator-(const Vector &a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

Vector operator*(const Scalar &s, const Vector &v) {
    Vector r(v.size());
    if (sgn(s) == 0)
        return r;
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = s * v[i];
    return r;
}

void axpy(Vector &y, const Scalar &a, const Vector &x) {
    if (y.size() != x.size())
        throw std::invalid_argument("axpy: dimension mismatch");
    if (sgn(a) == 0)
        return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0)
            y[i] += a * x[i];
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector> &rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector> &cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("from_columns: ragged input");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = cols[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::operator*(const Vector &v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("matrix*vector: dimension mismatch");
    Vector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0)
                r[i] += (*this)(i, j) * v[j];
    return r;
}

Matrix Matrix::operator*(const Matrix &o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("matrix*matrix: dimension mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar &a = (*this)(i, k);
            if (sgn(a) == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (sgn(o(k, j)) != 0)
                    r(i, j) += a * o(k, j);
        }
    return r;
}

Matrix Matrix::operator-(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix-matrix: dimension mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = data_[i] - o.data_[i];
    return r;
}

Echelon rref(Matrix a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && sgn(a(p, c)) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        Scalar inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0)
                continue;
            Scalar f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (sgn(a(r, j)) != 0)
                    a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix &a) { return rref(a).pivots.size(); }

std::vector<Vector> kernel(const Matrix &a) {
    Echelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector v(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix &a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("inverse: not square");
    std::size_t n = a.rows();
    if (n == 0)
        return Matrix();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = rref(std::move(aug));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

std::optional<AffineSolution> solve_affine(const Matrix &a, const Vector &b) {
    if (a.rows() != b.size())
        throw std::invalid_argument("solve_affine: rows(A) != len(b)");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Echelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == a.cols())
        return std::nullopt;
    AffineSolution s;
    s.particular = Vector(a.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        s.particular[e.pivots[i]] = e.reduced(i, a.cols());
    s.homogeneous = kernel(a);
    return s;
}

Vector project_orthogonal(const Vector &v, const std::vector<Vector> &subspace,
                          const Matrix &form) {
    std::size_t k = subspace.size();
    if (k == 0)
        return Vector(v.size());
    Matrix gram(k, k);
    Vector rhs(k);
    Vector fv = form * v;
    for (std::size_t i = 0; i < k; ++i) {
        Vector fi = form * subspace[i];
        for (std::size_t j = 0; j < k; ++j)
            gram(i, j) = dot(fi, subspace[j]);
        rhs[i] = dot(subspace[i], fv);
    }
    auto inv = inverse(gram);
    if (!inv)
        throw DegenerateRestriction("project_orthogonal: Gram matrix of the subspace is singular");
    Vector x = *inv * rhs;
    Vector p(v.size());
    for (std::size_t i = 0; i < k; ++i)
        axpy(p, x[i], subspace[i]);
    return p;
}

namespace {

struct Ineq { // g.t > h
    Vector g;
    Scalar h;
};

// scale so the first nonzero coefficient has absolute value 1
Ineq normalized(Ineq q) {
    for (const auto &c : q.g)
        if (sgn(c) != 0) {
            Scalar s = abs(c);
            for (auto &x : q.g)
                x /= s;
            q.h /= s;
            return q;
        }
    return q;
}

struct IneqLess {
    bool operator()(const Ineq &a, const Ineq &b) const {
        if (a.g != b.g)
            return a.g < b.g;
        return a.h < b.h;
    }
};

// a "simple" rational strictly between lo and hi (either may be absent)
Scalar pick_between(const std::optional<Scalar> &lo, const std::optional<Scalar> &hi) {
    if (!lo && !hi)
        return 0;
    if (lo && !hi) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
        Scalar r(f + 1);
        return sgn(*lo) < 0 ? Scalar(0) : r;
    }
    if (!lo && hi) {
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
        Scalar r(c - 1);
        return sgn(*hi) > 0 ? Scalar(0) : r;
    }
    if (sgn(*lo) < 0 && sgn(*hi) > 0)
        return 0;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
    Scalar cand(f + 1);
    if (cand > *lo && cand < *hi)
        return cand;
    return (*lo + *hi) / 2;
}

} // namespace

std::optional<Vector> linear_feasibility(std::size_t dim,
                                         const std::vector<Constraint> &equalities,
                                         const std::vector<Constraint> &strict) {
    for (const auto &c : equalities)
        if (c.coeffs.size() != dim)
            throw std::invalid_argument("linear_feasibility: equality dimension mismatch");
    for (const auto &c : strict)
        if (c.coeffs.size() != dim)
            throw std::invalid_argument("linear_feasibility: inequality dimension mismatch");

    // x = p + N t
    Vector p(dim);
    std::vector<Vector> null;
    if (equalities.empty()) {
        for (std::size_t i = 0; i < dim; ++i)
            null.push_back(unit(dim, i));
    } else {
        std::vector<Vector> rows;
        Vector b;
        for (const auto &c : equalities) {
            rows.push_back(c.coeffs);
            b.push_back(c.rhs);
        }
        auto sol = solve_affine(Matrix::from_rows(rows, dim), b);
        if (!sol)
            return std::nullopt;
        p = sol->particular;
        null = sol->homogeneous;
    }
    std::size_t f = null.size();

    std::set<Ineq, IneqLess> current;
    for (const auto &c : strict) {
        Ineq q;
        q.g.resize(f);
        for (std::size_t j = 0; j < f; ++j)
            q.g[j] = dot(c.coeffs, null[j]);
        q.h = c.rhs - dot(c.coeffs, p);
        current.insert(normalized(std::move(q)));
    }

    // stages[v] holds the system in variables 0..v (later ones eliminated)
    std::vector<std::vector<Ineq>> stages(f);
    for (std::size_t v = f; v-- > 0;) {
        stages[v].assign(current.begin(), current.end());
        std::vector<Ineq> lower, upper;
        std::set<Ineq, IneqLess> next;
        for (const auto &q : current) {
            int s = sgn(q.g[v]);
            if (s > 0)
                lower.push_back(q);
            else if (s < 0)
                upper.push_back(q);
            else
                next.insert(q);
        }
        // g_l t > h_l with g_l[v] > 0 and g_u t > h_u with g_u[v] < 0
        for (const auto &l : lower)
            for (const auto &u : upper) {
                Scalar a = -u.g[v], b = l.g[v];
                Ineq q;
                q.g.resize(f);
                for (std::size_t j = 0; j < f; ++j)
                    q.g[j] = a * l.g[j] + b * u.g[j];
                q.g[v] = 0;
                q.h = a * l.h + b * u.h;
                next.insert(normalized(std::move(q)));
            }
        current = std::move(next);
    }
    for (const auto &q : current)
        if (!(q.h < 0))
            return std::nullopt;

    Vector t(f);
    for (std::size_t v = 0; v < f; ++v) {
        std::optional<Scalar> lo, hi;
        for (const auto &q : stages[v]) {
            int s = sgn(q.g[v]);
            if (s == 0)
                continue;
            Scalar rest = q.h;
            for (std::size_t u = 0; u < v; ++u)
                rest -= q.g[u] * t[u];
            Scalar bound = rest / q.g[v];
            if (s > 0) {
                if (!lo || bound > *lo)
                    lo = bound;
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo && hi && !(*lo < *hi))
            throw std::logic_error("linear_feasibility: back-substitution found an empty interval");
        t[v] = pick_between(lo, hi);
    }

    Vector x = p;
    for (std::size_t j = 0; j < f; ++j)
        axpy(x, t[j], null[j]);
    for (const auto &c : equalities)
        if (dot(c.coeffs, x) != c.rhs)
            throw std::logic_error("linear_feasibility: witness violates an equality");
    for (const auto &c : strict)
        if (!(dot(c.coeffs, x) > c.rhs))
            throw std::logic_error("linear_feasibility: witness violates a strict inequality");
    return x;
}

Subspace::Subspace(std::size_t ambient, const std::vector<Vector> &spanning)
    : ambient_(ambient) {
    for (const auto &v : spanning)
        add(v);
}

Subspace Subspace::whole(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i)
        s.add(unit(ambient, i));
    return s;
}

Vector Subspace::residue(const Vector &v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("Subspace: dimension mismatch");
    Vector r = v;
    for (std::size_t i = 0; i < ech_.size(); ++i)
        if (sgn(r[lead_[i]]) != 0) {
            Scalar f = r[lead_[i]];
            axpy(r, -f, ech_[i]);
        }
    return r;
}

bool Subspace::add(const Vector &v) {
    if (v.size() != ambient_)
        throw std::invalid_argument("Subspace::add: dimension mismatch");
    Vector r = v;
    Vector combo(basis_.size() + 1);
    combo[basis_.size()] = 1;
    for (std::size_t i = 0; i < ech_.size(); ++i)
        if (sgn(r[lead_[i]]) != 0) {
            Scalar f = r[lead_[i]];
            axpy(r, -f, ech_[i]);
            for (std::size_t k = 0; k < combo_[i].size(); ++k)
                combo[k] -= f * combo_[i][k];
        }
    std::size_t lead = 0;
    while (lead < r.size() && sgn(r[lead]) == 0)
        ++lead;
    if (lead == r.size())
        return false;
    Scalar inv = 1 / r[lead];
    r = inv * r;
    combo = inv * combo;
    for (auto &c : combo_)
        c.resize(basis_.size() + 1);
    for (std::size_t i = 0; i < ech_.size(); ++i)
        if (sgn(ech_[i][lead]) != 0) {
            Scalar f = ech_[i][lead];
            axpy(ech_[i], -f, r);
            axpy(combo_[i], -f, combo);
        }
    basis_.push_back(v);
    ech_.push_back(std::move(r));
    combo_.push_back(std::move(combo));
    lead_.push_back(lead);
    return true;
}

bool Subspace::contains(const Vector &v) const { return is_zero(residue(v)); }

bool Subspace::contains(const Subspace &s) const {
    return std::all_of(s.basis().begin(), s.basis().end(),
                       [this](const Vector &v) { return contains(v); });
}

Vector Subspace::coordinates(const Vector &v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("Subspace::coordinates: dimension mismatch");
    Vector r = v;
    Vector x(basis_.size());
    for (std::size_t i = 0; i < ech_.size(); ++i)
        if (sgn(r[lead_[i]]) != 0) {
            Scalar f = r[lead_[i]];
            axpy(r, -f, ech_[i]);
            axpy(x, f, combo_[i]);
        }
    if (!is_zero(r))
        throw NotClosed("vector " + to_string(v) + " lies outside the subspace");
    return x;
}

Subspace intersect(const Subspace &a, const Subspace &b) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("intersect: ambient mismatch");
    std::size_t n = a.ambient();
    Subspace out(n);
    if (a.dim() == 0 || b.dim() == 0)
        return out;
    std::vector<Vector> cols = a.basis();
    for (const auto &v : b.basis())
        cols.push_back(-v);
    for (const auto &k : kernel(Matrix::from_columns(cols, n))) {
        Vector w(n);
        for (std::size_t i = 0; i < a.dim(); ++i)
            axpy(w, k[i], a[i]);
        out.add(w);
    }
    return out;
}

Subspace sum(const Subspace &a, const Subspace &b) {
    Subspace out = a;
    for (const auto &v : b.basis())
        out.add(v);
    return out;
}

} // namespace curvtree
