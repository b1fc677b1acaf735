#include "curvtree/kostant.hpp"

#include "curvtree/errors.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace curvtree {

void ChainElement::add(const ChainKey &key, const Scalar &c) {
    if (sgn(c) == 0)
        return;
    auto [it, fresh] = terms.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms.erase(it);
    }
}

ChainElement operator+(const ChainElement &a, const ChainElement &b) {
    ChainElement r = a;
    for (const auto &[k, c] : b.terms)
        r.add(k, c);
    return r;
}

ChainElement operator-(const ChainElement &a, const ChainElement &b) {
    ChainElement r = a;
    for (const auto &[k, c] : b.terms)
        r.add(k, -c);
    return r;
}

ChainElement operator*(const Scalar &s, const ChainElement &a) {
    ChainElement r;
    r.degree = a.degree;
    if (sgn(s) == 0)
        return r;
    for (const auto &[k, c] : a.terms)
        r.terms.emplace(k, s * c);
    return r;
}

namespace {

using Wedge = std::array<std::uint16_t, 3>;

// Insert x into the first d slots of w (sorted). Returns the position, or -1 if present.
int insert_sorted(const Wedge &w, int d, std::uint16_t x, Wedge &out) {
    int pos = 0;
    while (pos < d && w[pos] < x)
        ++pos;
    if (pos < d && w[pos] == x)
        return -1;
    out = Wedge{};
    for (int i = 0; i < pos; ++i)
        out[i] = w[i];
    out[pos] = x;
    for (int i = pos; i < d; ++i)
        out[i + 1] = w[i];
    return pos;
}

Wedge remove_at(const Wedge &w, int d, int pos) {
    Wedge out{};
    for (int i = 0, k = 0; i < d; ++i)
        if (i != pos)
            out[k++] = w[i];
    return out;
}

bool contains(const Wedge &w, int d, std::uint16_t x) {
    for (int i = 0; i < d; ++i)
        if (w[i] == x)
            return true;
    return false;
}

Scalar parity(int e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }

void combinations(std::size_t n, int k, const std::function<void(const Wedge &)> &f) {
    Wedge w{};
    if (k == 0) {
        f(w);
        return;
    }
    if (static_cast<std::size_t>(k) > n)
        return;
    for (int i = 0; i < k; ++i)
        w[i] = static_cast<std::uint16_t>(i);
    while (true) {
        f(w);
        int i = k - 1;
        while (i >= 0 && w[i] == n - static_cast<std::size_t>(k - i))
            --i;
        if (i < 0)
            return;
        ++w[i];
        for (int j = i + 1; j < k; ++j)
            w[j] = static_cast<std::uint16_t>(w[j - 1] + 1);
    }
}

Scalar determinant(Matrix m) {
    const std::size_t n = m.rows();
    Scalar det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (sgn(m(r, c)) == 0)
                continue;
            Scalar f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

void run_parallel(std::size_t count, unsigned workers, const std::function<void(std::size_t)> &job) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace

KostantComplex::KostantComplex(std::shared_ptr<const ParabolicGrading> grading)
    : grading_(std::move(grading)) {
    const auto &rs = system();
    const auto &g = rs.algebra();
    const auto &adapted = rs.adapted_basis();
    n_ = g.dim();

    std::vector<std::size_t> u;
    for (std::size_t j = 0; j < n_; ++j) {
        int d = grading_->adapted_degree(j);
        if (d > 0) {
            y_of_[j] = y_.size();
            y_.push_back(j);
        } else if (d < 0)
            u.push_back(j);
        by_weight_[rs.adapted_weight(j)].push_back(j);
    }
    const std::size_t P = y_.size();
    if (u.size() != P)
        throw Error("grading: dim p+ differs from dim g-");

    table_.assign(n_ * n_, {});
    for (std::size_t s = 0; s < n_; ++s)
        for (std::size_t t = s + 1; t < n_; ++t) {
            auto c = sparsify(rs.adapted_coordinates(g.bracket(adapted[s], adapted[t])));
            SparseVector neg = c;
            for (auto &term : neg)
                term.coeff = -term.coeff;
            table_[s * n_ + t] = std::move(c);
            table_[t * n_ + s] = std::move(neg);
        }

    pp_.assign(P * P, {});
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t b = 0; b < P; ++b) {
            SparseVector out;
            for (const auto &t : table_[y_[a] * n_ + y_[b]]) {
                auto it = y_of_.find(t.index);
                if (it == y_of_.end())
                    throw Error("grading: p+ is not a subalgebra");
                out.push_back({it->second, t.coeff});
            }
            std::sort(out.begin(), out.end(),
                      [](const curvtree::Term &x, const curvtree::Term &y) { return x.index < y.index; });
            pp_[a * P + b] = std::move(out);
        }

    Matrix K(P, P);
    y_lower_.resize(P);
    for (std::size_t a = 0; a < P; ++a) {
        y_lower_[a] = g.killing_lower(adapted[y_[a]]);
        for (std::size_t b = 0; b < P; ++b)
            K(a, b) = dot(y_lower_[a], adapted[u[b]]);
    }
    auto Kinv = inverse(K);
    if (!Kinv)
        throw DegenerateForm("Killing pairing of p+ and g- is degenerate");

    // V_b = sum_c U_c Kinv(c, b)
    std::vector<Vector> v_adapted(P, zeros(n_));
    v_.assign(P, zeros(n_));
    for (std::size_t b = 0; b < P; ++b)
        for (std::size_t c = 0; c < P; ++c)
            if (sgn((*Kinv)(c, b)) != 0) {
                v_adapted[b][u[c]] += (*Kinv)(c, b);
                axpy(v_[b], (*Kinv)(c, b), adapted[u[c]]);
            }

    auto ad_adapted = [&](const Vector &x, std::size_t j) {
        Vector out = zeros(n_);
        for (std::size_t s = 0; s < n_; ++s)
            if (sgn(x[s]) != 0)
                for (const auto &t : table_[s * n_ + j])
                    out[t.index] += x[s] * t.coeff;
        return out;
    };
    mv_.assign(P * n_, {});
    for (std::size_t b = 0; b < P; ++b)
        for (std::size_t j = 0; j < n_; ++j)
            mv_[b * n_ + j] = sparsify(ad_adapted(v_adapted[b], j));

    // [V_q, V_r] = sum_c s^c_qr V_c with s^c_qr = kappa(Y_c, [V_q, V_r])
    mm_.assign(P, {});
    for (std::size_t q = 0; q < P; ++q)
        for (std::size_t r = q + 1; r < P; ++r) {
            Vector br = g.bracket(v_[q], v_[r]);
            for (std::size_t c = 0; c < P; ++c) {
                Scalar s = dot(y_lower_[c], br);
                if (sgn(s) != 0)
                    mm_[c].push_back({{static_cast<std::uint16_t>(q), static_cast<std::uint16_t>(r)}, s});
            }
        }
}

std::optional<std::size_t> KostantComplex::y_index(std::size_t adapted) const {
    auto it = y_of_.find(adapted);
    if (it == y_of_.end())
        return std::nullopt;
    return it->second;
}

std::string KostantComplex::adapted_label(std::size_t j) const {
    const auto &v = system().adapted_basis()[j];
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) {
            ++nz;
            at = i;
        }
    if (nz == 1 && v[at] == 1)
        return system().algebra().label(at);
    return "v" + std::to_string(j + 1);
}

Covector KostantComplex::key_weight(int degree, const ChainKey &key) const {
    const auto &rs = system();
    Covector w = rs.adapted_weight(key.value);
    for (int i = 0; i < degree; ++i)
        w = w + rs.adapted_weight(y_[key.wedge[i]]);
    return w;
}

int KostantComplex::key_homogeneity(int degree, const ChainKey &key) const {
    int h = grading_->adapted_degree(key.value);
    for (int i = 0; i < degree; ++i)
        h += grading_->adapted_degree(y_[key.wedge[i]]);
    return h;
}

void KostantComplex::push_differential(const ChainKey &key, int d, const Scalar &coef,
                                       ChainElement &out) const {
    const std::size_t P = y_.size();
    // sum_i (-1)^i [V_bi, alpha(... omit bi ...)]
    for (std::size_t b = 0; b < P; ++b) {
        Wedge nw;
        int pos = insert_sorted(key.wedge, d, static_cast<std::uint16_t>(b), nw);
        if (pos < 0)
            continue;
        Scalar sign = parity(pos) * coef;
        for (const auto &t : mv_[b * n_ + key.value])
            out.add(ChainKey{nw, static_cast<std::uint16_t>(t.index)}, sign * t.coeff);
    }
    // sum_{i<j} (-1)^{i+j} alpha([V_bi, V_bj], ...)
    for (int p = 0; p < d; ++p) {
        const std::uint16_t c = key.wedge[p];
        Wedge rest = remove_at(key.wedge, d, p);
        for (const auto &[qr, s] : mm_[c]) {
            auto [q, r] = qr;
            if (contains(rest, d - 1, q) || contains(rest, d - 1, r))
                continue;
            Wedge w1, w2;
            insert_sorted(rest, d - 1, q, w1);
            insert_sorted(w1, d, r, w2);
            int iq = 0, ir = 0;
            for (int i = 0; i <= d; ++i) {
                if (w2[i] == q)
                    iq = i;
                if (w2[i] == r)
                    ir = i;
            }
            out.add(ChainKey{w2, key.value}, parity(iq + ir + p) * s * coef);
        }
    }
}

void KostantComplex::push_codifferential(const ChainKey &key, int d, const Scalar &coef,
                                         ChainElement &out) const {
    const std::size_t P = y_.size();
    // sum_i (-1)^i (omit Y_i) ⊗ [Y_i, X], i counted from 1
    for (int p = 0; p < d; ++p) {
        Wedge rest = remove_at(key.wedge, d, p);
        Scalar sign = parity(p + 1) * coef;
        for (const auto &t : table_[y_[key.wedge[p]] * n_ + key.value])
            out.add(ChainKey{rest, static_cast<std::uint16_t>(t.index)}, sign * t.coeff);
    }
    // sum_{i<j} (-1)^{i+j} [Y_i, Y_j] ^ (rest) ⊗ X
    for (int p = 0; p < d; ++p)
        for (int q = p + 1; q < d; ++q) {
            Wedge rest = remove_at(remove_at(key.wedge, d, q), d - 1, p);
            for (const auto &t : pp_[key.wedge[p] * P + key.wedge[q]]) {
                Wedge nw;
                int pos = insert_sorted(rest, d - 2, static_cast<std::uint16_t>(t.index), nw);
                if (pos < 0)
                    continue;
                out.add(ChainKey{nw, key.value}, parity(p + q + pos) * t.coeff * coef);
            }
        }
}

ChainElement KostantComplex::codifferential(const ChainElement &c) const {
    if (c.degree < 1 || c.degree > 3)
        throw Error("codifferential: degree must be 1..3");
    ChainElement out;
    out.degree = c.degree - 1;
    for (const auto &[k, v] : c.terms)
        push_codifferential(k, c.degree, v, out);
    return out;
}

ChainElement KostantComplex::differential(const ChainElement &c) const {
    if (c.degree < 0 || c.degree > 2)
        throw Error("differential: degree must be 0..2");
    ChainElement out;
    out.degree = c.degree + 1;
    for (const auto &[k, v] : c.terms)
        push_differential(k, c.degree, v, out);
    return out;
}

ChainElement KostantComplex::laplacian(const ChainElement &c) const {
    if (c.degree < 1 || c.degree > 2)
        throw Error("laplacian: degree must be 1 or 2");
    return codifferential(differential(c)) + differential(codifferential(c));
}

ChainElement KostantComplex::g0_action(const Vector &z, const ChainElement &c) const {
    const auto &rs = system();
    Vector zc = rs.adapted_coordinates(z);
    for (std::size_t s = 0; s < n_; ++s)
        if (sgn(zc[s]) != 0 && grading_->adapted_degree(s) != 0)
            throw Error("g0_action: element is not in g0");
    auto ad = [&](std::size_t j) {
        Vector out = zeros(n_);
        for (std::size_t s = 0; s < n_; ++s)
            if (sgn(zc[s]) != 0)
                for (const auto &t : table_[s * n_ + j])
                    out[t.index] += zc[s] * t.coeff;
        return out;
    };
    ChainElement out;
    out.degree = c.degree;
    for (const auto &[key, coef] : c.terms) {
        for (int p = 0; p < c.degree; ++p) {
            Vector img = ad(y_[key.wedge[p]]);
            Wedge rest = remove_at(key.wedge, c.degree, p);
            for (std::size_t t = 0; t < n_; ++t) {
                if (sgn(img[t]) == 0)
                    continue;
                auto a = y_index(t);
                if (!a)
                    throw Error("g0_action: p+ not preserved");
                Wedge nw;
                int pos = insert_sorted(rest, c.degree - 1, static_cast<std::uint16_t>(*a), nw);
                if (pos < 0)
                    continue;
                // slot p moves to pos
                out.add(ChainKey{nw, key.value}, parity(p + pos) * img[t] * coef);
            }
        }
        Vector img = ad(key.value);
        for (std::size_t t = 0; t < n_; ++t)
            if (sgn(img[t]) != 0)
                out.add(ChainKey{key.wedge, static_cast<std::uint16_t>(t)}, img[t] * coef);
    }
    return out;
}

bool KostantComplex::is_lowest_weight(const ChainElement &c) const {
    const auto &rs = system();
    for (auto nu : grading_->g0_negative_roots())
        for (const auto &z : rs.root_space(nu))
            if (!g0_action(z, c).is_zero())
                return false;
    return true;
}

Vector KostantComplex::pairing(const Vector &x) const {
    Vector out(y_.size());
    for (std::size_t a = 0; a < y_.size(); ++a)
        out[a] = dot(y_lower_[a], x);
    return out;
}

Vector KostantComplex::evaluate(const ChainElement &c, const std::vector<Vector> &xs) const {
    if (xs.size() != static_cast<std::size_t>(c.degree))
        throw Error("evaluate: wrong number of arguments");
    const auto &adapted = system().adapted_basis();
    std::vector<Vector> pair;
    for (const auto &x : xs)
        pair.push_back(pairing(x));
    Vector out = zeros(n_);
    for (const auto &[key, coef] : c.terms) {
        Matrix m(c.degree, c.degree);
        for (int i = 0; i < c.degree; ++i)
            for (int j = 0; j < c.degree; ++j)
                m(i, j) = pair[j][key.wedge[i]];
        Scalar det = c.degree == 0 ? Scalar(1) : determinant(m);
        if (sgn(det) != 0)
            axpy(out, det * coef, adapted[key.value]);
    }
    return out;
}

ChainElement KostantComplex::make_chain(const std::vector<Term> &terms) const {
    const auto &rs = system();
    auto wedge_coords = [&](const Vector &x) {
        Vector ac = rs.adapted_coordinates(x);
        Vector out(y_.size());
        for (std::size_t j = 0; j < n_; ++j) {
            if (sgn(ac[j]) == 0)
                continue;
            auto a = y_index(j);
            if (!a)
                throw Error("make_chain: wedge factor is not in p+");
            out[*a] = ac[j];
        }
        return out;
    };
    ChainElement c;
    c.degree = 2;
    for (const auto &t : terms) {
        Vector b = wedge_coords(t.beta), g = wedge_coords(t.gamma);
        Vector z = rs.adapted_coordinates(t.zeta);
        for (std::size_t i = 0; i < y_.size(); ++i) {
            if (sgn(b[i]) == 0)
                continue;
            for (std::size_t j = 0; j < y_.size(); ++j) {
                if (i == j || sgn(g[j]) == 0)
                    continue;
                Scalar f = t.coeff * b[i] * g[j] * (i < j ? 1 : -1);
                Wedge w{};
                w[0] = static_cast<std::uint16_t>(std::min(i, j));
                w[1] = static_cast<std::uint16_t>(std::max(i, j));
                for (std::size_t v = 0; v < n_; ++v)
                    if (sgn(z[v]) != 0)
                        c.add(ChainKey{w, static_cast<std::uint16_t>(v)}, f * z[v]);
            }
        }
    }
    return c;
}

std::vector<ChainKey> KostantComplex::block(int degree, const Covector &weight) const {
    const auto &rs = system();
    std::vector<ChainKey> out;
    combinations(y_.size(), degree, [&](const Wedge &w) {
        Covector rest = weight;
        for (int i = 0; i < degree; ++i)
            rest = rest - rs.adapted_weight(y_[w[i]]);
        auto it = by_weight_.find(rest);
        if (it == by_weight_.end())
            return;
        for (auto j : it->second)
            out.push_back(ChainKey{w, static_cast<std::uint16_t>(j)});
    });
    return out;
}

std::vector<Covector> KostantComplex::weights(int degree, int homogeneity) const {
    const auto &rs = system();
    std::set<Covector> found;
    combinations(y_.size(), degree, [&](const Wedge &w) {
        Covector wa(rs.rank());
        int h = 0;
        for (int i = 0; i < degree; ++i) {
            wa = wa + rs.adapted_weight(y_[w[i]]);
            h += grading_->adapted_degree(y_[w[i]]);
        }
        for (const auto &[wt, idx] : by_weight_)
            if (h + grading_->adapted_degree(idx.front()) == homogeneity)
                found.insert(wa + wt);
    });
    return {found.begin(), found.end()};
}

std::vector<int> KostantComplex::homogeneities(int degree) const {
    std::set<int> hs;
    combinations(y_.size(), degree, [&](const Wedge &w) {
        int h = 0;
        for (int i = 0; i < degree; ++i)
            h += grading_->adapted_degree(y_[w[i]]);
        for (const auto &[wt, idx] : by_weight_)
            hs.insert(h + grading_->adapted_degree(idx.front()));
    });
    return {hs.begin(), hs.end()};
}

Matrix KostantComplex::operator_matrix(const std::vector<ChainKey> &from, int from_degree,
                                       const std::vector<ChainKey> &to, int op) const {
    std::map<ChainKey, std::size_t> row;
    for (std::size_t i = 0; i < to.size(); ++i)
        row[to[i]] = i;
    Matrix m(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
        ChainElement out;
        if (op == 0)
            push_differential(from[c], from_degree, 1, out);
        else
            push_codifferential(from[c], from_degree, 1, out);
        for (const auto &[k, v] : out.terms) {
            auto it = row.find(k);
            if (it == row.end())
                throw AuditFailure("operator leaves its weight block");
            m(it->second, c) = v;
        }
    }
    return m;
}

namespace {

bool is_zero_matrix(const Matrix &m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (sgn(m(r, c)) != 0)
                return false;
    return true;
}

Matrix add(const Matrix &a, const Matrix &b) {
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = a(i, j) + b(i, j);
    return r;
}

// rank of the column span of the union of two vector families
std::size_t joint_rank(const std::vector<Vector> &a, const std::vector<Vector> &b, std::size_t n) {
    Subspace s(n);
    for (const auto &v : a)
        s.add(v);
    for (const auto &v : b)
        s.add(v);
    return s.dim();
}

std::vector<Vector> column_basis(const Matrix &m) {
    Subspace s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c)
        s.add(m.column(c));
    return s.basis();
}

} // namespace

HodgeBlock KostantComplex::hodge_audit(int k, int h) const {
    if (k < 1 || k > 2)
        throw Error("hodge_audit: degree must be 1 or 2");
    HodgeBlock rep;
    rep.degree = k;
    rep.homogeneity = h;
    for (const auto &w : weights(k, h)) {
        auto bk = block(k, w), bprev = block(k - 1, w), bnext = block(k + 1, w);
        const std::size_t dim = bk.size();
        if (dim == 0)
            continue;
        ++rep.weights;
        Matrix dprev = operator_matrix(bprev, k - 1, bk, 0);
        Matrix d = operator_matrix(bk, k, bnext, 0);
        Matrix s = operator_matrix(bk, k, bprev, 1);
        Matrix snext = operator_matrix(bnext, k + 1, bk, 1);
        auto label = [&](const std::string &what) {
            return "degree " + std::to_string(k) + " homogeneity " + std::to_string(h) +
                   " weight " + system().render(w) + ": " + what;
        };
        if ((bnext.size() && bprev.size() && !is_zero_matrix(d * dprev)) ||
            (bnext.size() && bprev.size() && !is_zero_matrix(s * snext)))
            throw AuditFailure(label("square of an operator is nonzero"));
        Matrix lap = Matrix(dim, dim);
        if (bnext.size())
            lap = snext * d;
        if (bprev.size())
            lap = add(lap, dprev * s);
        auto ker_lap = kernel(lap);
        auto im_d = bprev.empty() ? std::vector<Vector>{} : column_basis(dprev);
        auto im_s = bnext.empty() ? std::vector<Vector>{} : column_basis(snext);
        std::size_t ker_d = bnext.empty() ? dim : dim - rank(d);
        std::size_t ker_s = bprev.empty() ? dim : dim - rank(s);
        for (const auto &v : ker_lap) {
            if ((bnext.size() && !is_zero(d * v)) || (bprev.size() && !is_zero(s * v)))
                throw AuditFailure(label("harmonic element not closed"));
        }
        if (im_d.size() + ker_lap.size() + im_s.size() != dim)
            throw AuditFailure(label("Hodge dimensions do not add up"));
        if (joint_rank(im_d, ker_lap, dim) != im_d.size() + ker_lap.size() ||
            im_d.size() + ker_lap.size() != ker_d)
            throw AuditFailure(label("ker d is not im d plus harmonic"));
        if (joint_rank(im_s, ker_lap, dim) != im_s.size() + ker_lap.size() ||
            im_s.size() + ker_lap.size() != ker_s)
            throw AuditFailure(label("ker d* is not im d* plus harmonic"));
        rep.dim += dim;
        rep.im_d += im_d.size();
        rep.ker_box += ker_lap.size();
        rep.im_dstar += im_s.size();
        rep.ker_d += ker_d;
        rep.ker_dstar += ker_s;
    }
    return rep;
}

bool KostantComplex::is_split() const {
    const auto &rs = system();
    if (rs.zero_space().dim() != rs.rank())
        return false;
    for (std::size_t i = 0; i < rs.roots().size(); ++i)
        if (rs.root_space(i).size() != 1)
            return false;
    return true;
}

std::vector<Candidate> KostantComplex::scan_triple(std::size_t bi, std::size_t gi,
                                                   std::size_t zi) const {
    const auto &rs = system();
    auto ys = [&](std::size_t root) {
        std::vector<std::uint16_t> out;
        for (std::size_t k = 0; k < rs.root_space(root).size(); ++k)
            out.push_back(static_cast<std::uint16_t>(*y_index(rs.adapted_offset(root) + k)));
        return out;
    };
    auto yb = ys(bi), yg = ys(gi);
    std::vector<ChainKey> cols;
    for (std::size_t zk = 0; zk < rs.root_space(zi).size(); ++zk) {
        auto v = static_cast<std::uint16_t>(rs.adapted_offset(zi) + zk);
        for (auto a : yb)
            for (auto b : yg) {
                if (bi == gi && a >= b)
                    continue;
                ChainKey key{};
                key.wedge[0] = std::min(a, b);
                key.wedge[1] = std::max(a, b);
                key.value = v;
                cols.push_back(key);
            }
    }
    if (cols.empty())
        return {};
    // stack the Laplacian and all lowering operators
    std::map<std::pair<int, ChainKey>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> entries(cols.size());
    auto collect = [&](int block_id, std::size_t col, const ChainElement &img) {
        for (const auto &[k, v] : img.terms) {
            auto [it, fresh] = rows.try_emplace({block_id, k}, rows.size());
            entries[col].push_back({it->second, v});
        }
    };
    for (std::size_t c = 0; c < cols.size(); ++c) {
        ChainElement e;
        e.degree = 2;
        e.add(cols[c], 1);
        collect(0, c, laplacian(e));
        int id = 1;
        for (auto nu : grading_->g0_negative_roots())
            for (const auto &z : rs.root_space(nu))
                collect(id++, c, g0_action(z, e));
    }
    Matrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto &[r, v] : entries[c])
            m(r, c) += v;
    std::vector<Candidate> out;
    for (const auto &x : kernel(m)) {
        Candidate cand;
        cand.beta = rs.roots()[bi];
        cand.gamma = rs.roots()[gi];
        cand.zeta = rs.roots()[zi];
        cand.chain.degree = 2;
        for (std::size_t c = 0; c < cols.size(); ++c)
            cand.chain.add(cols[c], x[c]);
        cand.zeta_opposes = cand.zeta == -cand.beta || cand.zeta == -cand.gamma;
        out.push_back(std::move(cand));
    }
    return out;
}

std::vector<Candidate> KostantComplex::enumerate_candidates(unsigned parallel) const {
    const auto &rs = system();
    const auto &roots = rs.roots();
    const auto &dpp = grading_->delta_plus_p();
    std::vector<std::vector<Candidate>> slots;

    if (is_split()) {
        const auto &simples = rs.simples();
        Covector mu = rs.highest_root();
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < simples.size(); ++i)
            for (std::size_t j = 0; j < simples.size(); ++j)
                if (i != j)
                    pairs.push_back({i, j});
        slots.resize(pairs.size());
        run_parallel(pairs.size(), parallel, [&](std::size_t p) {
            const Covector &ai = roots[simples[pairs[p].first]];
            const Covector &aj = roots[simples[pairs[p].second]];
            Covector beta = ai, gamma = rs.reflect(ai, aj);
            Covector zeta = -rs.reflect(ai, rs.reflect(aj, mu));
            if (!grading_->in_delta_plus_p(beta) || !grading_->in_delta_plus_p(gamma))
                return;
            auto zi = rs.index_of(zeta);
            if (!zi || sgn(grading_->homogeneity(beta + gamma + zeta)) <= 0)
                return;
            std::size_t bi = *rs.index_of(beta), gi = *rs.index_of(gamma);
            ChainElement c = make_chain({{rs.root_space(bi)[0], rs.root_space(gi)[0],
                                          rs.root_space(*zi)[0], Scalar(1)}});
            if (c.is_zero() || !laplacian(c).is_zero() || !is_lowest_weight(c))
                return;
            Candidate cand{beta, gamma, zeta, c, true, zeta == -beta || zeta == -gamma};
            slots[p].push_back(std::move(cand));
        });
    } else {
        std::vector<std::array<std::size_t, 3>> triples;
        for (std::size_t x = 0; x < dpp.size(); ++x)
            for (std::size_t y = x; y < dpp.size(); ++y)
                for (std::size_t z = 0; z < roots.size(); ++z) {
                    Covector w = roots[dpp[x]] + roots[dpp[y]] + roots[z];
                    if (sgn(grading_->homogeneity(w)) > 0)
                        triples.push_back({dpp[x], dpp[y], z});
                }
        slots.resize(triples.size());
        run_parallel(triples.size(), parallel, [&](std::size_t t) {
            slots[t] = scan_triple(triples[t][0], triples[t][1], triples[t][2]);
        });
    }
    // commuting simple reflections give the same Weyl element twice
    std::vector<Candidate> out;
    std::set<std::array<Covector, 3>> seen;
    for (auto &s : slots)
        for (auto &c : s) {
            std::array<Covector, 3> key{std::min(c.beta, c.gamma), std::max(c.beta, c.gamma), c.zeta};
            if (c.bbw && !seen.insert(key).second)
                continue;
            out.push_back(std::move(c));
        }
    return out;
}

LemmaCheck KostantComplex::lemma_assume_check(const Covector &beta_in, const Covector &gamma_in,
                                              const Covector &zeta,
                                              const ChainElement &c) const {
    const auto &rs = system();
    Covector beta = beta_in, gamma = gamma_in;
    if (rs.is_positive_root(beta - gamma))
        std::swap(beta, gamma);
    LemmaCheck out;
    if (!grading_->in_delta_plus_p(beta) || !grading_->in_delta_plus_p(gamma)) {
        out.detail = "beta or gamma is not in delta+(p+)";
        return out;
    }
    if (!rs.is_root(zeta) || grading_->in_delta_plus_p(zeta)) {
        out.detail = "zeta is not a root outside delta+(p+)";
        return out;
    }
    if (c.degree != 2 || c.is_zero() || sgn(grading_->homogeneity(beta + gamma + zeta)) <= 0) {
        out.detail = "chain is not a nonzero 2-chain of positive homogeneity";
        return out;
    }
    if (!laplacian(c).is_zero() || !is_lowest_weight(c)) {
        out.detail = "chain is not a harmonic lowest weight vector";
        return out;
    }
    if (rs.is_positive_root(zeta)) {
        out.verdict = LemmaVerdict::Violation;
        out.detail = "zeta is a positive root";
        return out;
    }
    if (!rs.is_simple_root(beta)) {
        out.verdict = LemmaVerdict::Violation;
        out.detail = "beta = " + rs.render(beta) + " is not simple";
        return out;
    }
    out.verdict = LemmaVerdict::Passed;
    out.detail = "zeta = " + rs.render(zeta) + " negative, beta = " + rs.render(beta) + " simple";
    return out;
}

std::string KostantComplex::render(const ChainElement &c) const {
    if (c.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[key, coef] : c.terms) {
        if (!first)
            os << " + ";
        first = false;
        os << to_string(coef) << " ";
        for (int i = 0; i < c.degree; ++i)
            os << (i ? "^" : "") << adapted_label(y_[key.wedge[i]]);
        os << (c.degree ? " x " : "") << adapted_label(key.value);
    }
    return os.str();
}

ChainElement KostantComplex::random_chain(int degree, std::uint32_t seed, std::size_t terms) const {
    std::mt19937 rng(seed);
    ChainElement c;
    c.degree = degree;
    const std::size_t P = y_.size();
    if (static_cast<std::size_t>(degree) > P)
        return c;
    std::uniform_int_distribution<int> coef(-5, 5), den(1, 4);
    std::uniform_int_distribution<std::size_t> yd(0, P - 1), vd(0, n_ - 1);
    for (std::size_t t = 0; t < terms; ++t) {
        std::set<std::uint16_t> s;
        while (s.size() < static_cast<std::size_t>(degree))
            s.insert(static_cast<std::uint16_t>(yd(rng)));
        ChainKey key{};
        int i = 0;
        for (auto x : s)
            key.wedge[i++] = x;
        key.value = static_cast<std::uint16_t>(vd(rng));
        Scalar x(coef(rng), den(rng));
        x.canonicalize();
        c.add(key, x);
    }
    return c;
}

} // namespace curvtree
