#include "curvtree/builders.hpp"

#include "curvtree/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace curvtree {

const Scalar &Quaternion::operator[](int c) const {
    switch (c) {
    case 0:
        return w;
    case 1:
        return x;
    case 2:
        return y;
    default:
        return z;
    }
}

Scalar &Quaternion::operator[](int c) {
    return const_cast<Scalar &>(static_cast<const Quaternion &>(*this)[c]);
}

Quaternion operator+(const Quaternion &a, const Quaternion &b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

Quaternion operator-(const Quaternion &a, const Quaternion &b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

Quaternion operator-(const Quaternion &a) { return {-a.w, -a.x, -a.y, -a.z}; }

Quaternion operator*(const Quaternion &a, const Quaternion &b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion operator*(const Scalar &s, const Quaternion &a) {
    return {s * a.w, s * a.x, s * a.y, s * a.z};
}

Quaternion QMatrix::get(std::size_t r, std::size_t c) const {
    auto it = e_.find({r, c});
    return it == e_.end() ? Quaternion{} : it->second;
}

void QMatrix::set(std::size_t r, std::size_t c, const Quaternion &q) {
    if (r >= n_ || c >= n_)
        throw std::out_of_range("QMatrix::set");
    if (q.is_zero())
        e_.erase({r, c});
    else
        e_[{r, c}] = q;
}

void QMatrix::add(std::size_t r, std::size_t c, const Quaternion &q) { set(r, c, get(r, c) + q); }

QMatrix QMatrix::operator*(const QMatrix &o) const {
    QMatrix out(n_);
    for (const auto &[rc, a] : e_)
        for (std::size_t c = 0; c < n_; ++c) {
            auto it = o.e_.find({rc.second, c});
            if (it != o.e_.end())
                out.add(rc.first, c, a * it->second);
        }
    return out;
}

QMatrix QMatrix::operator+(const QMatrix &o) const {
    QMatrix out = *this;
    for (const auto &[rc, q] : o.e_)
        out.add(rc.first, rc.second, q);
    return out;
}

QMatrix QMatrix::operator-(const QMatrix &o) const {
    QMatrix out = *this;
    for (const auto &[rc, q] : o.e_)
        out.add(rc.first, rc.second, -q);
    return out;
}

QMatrix QMatrix::conj_transpose() const {
    QMatrix out(n_);
    for (const auto &[rc, q] : e_)
        out.set(rc.second, rc.first, q.conj());
    return out;
}

QMatrix operator*(const Scalar &s, const QMatrix &m) {
    QMatrix out(m.size());
    for (const auto &[rc, q] : m.entries())
        out.set(rc.first, rc.second, s * q);
    return out;
}

QMatrix commutator(const QMatrix &a, const QMatrix &b) { return a * b - b * a; }

QMatrix real_matrix(const std::vector<std::vector<Scalar>> &rows) {
    QMatrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m.set(r, c, Quaternion::real(rows[r][c]));
    return m;
}

QMatrix diagonal(const std::vector<Scalar> &d) {
    QMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m.set(i, i, Quaternion::real(d[i]));
    return m;
}

QMatrix traceless(const QMatrix &m) {
    Scalar tr = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        tr += m.get(i, i).w;
    QMatrix out = m;
    Scalar shift = tr / static_cast<long>(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        out.add(i, i, Quaternion::real(-shift));
    return out;
}

MatrixRealization::MatrixRealization(std::size_t size, int components, std::vector<QMatrix> basis)
    : size_(size), comps_(components), basis_(std::move(basis)) {
    const std::size_t d = basis_.size();
    const std::size_t flat_dim = size_ * size_ * static_cast<std::size_t>(comps_);
    Matrix rows(d, flat_dim);
    for (std::size_t k = 0; k < d; ++k)
        for (const auto &[rc, q] : basis_[k].entries())
            for (int c = 0; c < 4; ++c) {
                if (sgn(q[c]) == 0)
                    continue;
                if (c >= comps_)
                    throw Error("MatrixRealization: quaternionic entry in a real realization");
                rows(k, flat(rc.first, rc.second, c)) = q[c];
            }
    Echelon e = rref(rows);
    if (e.pivots.size() != d)
        throw Error("MatrixRealization: basis matrices are linearly dependent");
    Matrix p(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        pivot_slot_[e.pivots[j]] = j;
        for (std::size_t k = 0; k < d; ++k)
            p(j, k) = rows(k, e.pivots[j]);
    }
    auto inv = inverse(p);
    if (!inv)
        throw Error("MatrixRealization: pivot block is singular");
    pinv_ = *inv;
}

QMatrix MatrixRealization::matrix(const Vector &coords) const {
    QMatrix m(size_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (sgn(coords[k]) == 0)
            continue;
        for (const auto &[rc, q] : basis_[k].entries())
            m.add(rc.first, rc.second, coords[k] * q);
    }
    return m;
}

Vector MatrixRealization::coordinates(const QMatrix &m) const {
    const std::size_t d = basis_.size();
    Vector x(d);
    for (const auto &[rc, q] : m.entries())
        for (int c = 0; c < 4; ++c) {
            if (sgn(q[c]) == 0)
                continue;
            if (c >= comps_)
                throw NotClosed("matrix has quaternionic entries outside a real realization");
            auto it = pivot_slot_.find(flat(rc.first, rc.second, c));
            if (it == pivot_slot_.end())
                continue;
            for (std::size_t k = 0; k < d; ++k)
                if (sgn(pinv_(k, it->second)) != 0)
                    x[k] += pinv_(k, it->second) * q[c];
        }
    if (!(matrix(x) == m))
        throw NotClosed("matrix lies outside the realized Lie algebra");
    return x;
}

std::vector<SparseVector> MatrixRealization::structure_table() const {
    const std::size_t d = basis_.size();
    std::vector<SparseVector> table(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            Vector c = coordinates(commutator(basis_[i], basis_[j]));
            table[i * d + j] = sparsify(c);
            table[j * d + i] = sparsify(-c);
        }
    return table;
}

namespace {

std::string index_label(int i, int j, int m) {
    if (m < 10)
        return std::to_string(i) + std::to_string(j);
    return std::to_string(i) + "," + std::to_string(j);
}

Matrix theta_matrix(const MatrixRealization &mr) {
    const std::size_t d = mr.dim();
    Matrix th(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        Vector c = mr.coordinates(Scalar(-1) * mr.basis()[k].conj_transpose());
        for (std::size_t r = 0; r < d; ++r)
            th(r, k) = c[r];
    }
    return th;
}

} // namespace

Realization build_sl(int m) {
    if (m < 2)
        throw ParseError("sl:M requires M >= 2", 0);
    const auto um = static_cast<std::size_t>(m);
    std::vector<QMatrix> basis;
    std::vector<std::string> labels;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            if (i == j)
                continue;
            QMatrix e(um);
            e.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1),
                  Quaternion::real(1));
            basis.push_back(e);
            labels.push_back("E" + index_label(i, j, m));
        }
    const std::size_t off = basis.size();
    for (int b = 1; b < m; ++b) {
        QMatrix h(um);
        h.set(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(b - 1), Quaternion::real(1));
        h.set(static_cast<std::size_t>(b), static_cast<std::size_t>(b), Quaternion::real(-1));
        basis.push_back(h);
        labels.push_back("H" + std::to_string(b));
    }
    auto mr = std::make_shared<MatrixRealization>(um, 1, basis);
    auto algebra = std::make_shared<LieAlgebra>(labels, mr->structure_table());
    const std::size_t d = basis.size();

    std::vector<Vector> cartan;
    for (std::size_t b = 0; b + 1 < um; ++b)
        cartan.push_back(unit(d, off + b));
    RootSystemOptions opt;
    opt.theta = theta_matrix(*mr);
    EpsilonFrame eps;
    for (std::size_t i = 0; i < um; ++i) {
        eps.labels.push_back("e" + std::to_string(i + 1));
        Covector v(um - 1);
        if (i < um - 1)
            v[i] += 1;
        if (i > 0)
            v[i - 1] -= 1;
        eps.values.push_back(v);
    }
    opt.epsilon = eps;
    std::vector<Scalar> ord(um);
    for (std::size_t i = 0; i < um; ++i)
        ord[i] = Scalar(static_cast<long>(um - 1 - i));
    Vector h = mr->coordinates(traceless(diagonal(ord)));
    opt.ordering = Vector(h.begin() + static_cast<long>(off), h.end());

    Realization r;
    r.descriptor = "sl:" + std::to_string(m);
    r.algebra = algebra;
    r.roots = RestrictedRootSystem::decompose(algebra, cartan, opt);
    r.matrices = mr;
    return r;
}

namespace {

const std::array<std::string, 4> kUnitNames = {"1", "i", "j", "k"};

Quaternion unit_quaternion(int c) {
    Quaternion q;
    q[c] = 1;
    return q;
}

// eta_{e0-e1,q} and eta_{-2e1,q} exactly as displayed for the quaternionic family
QMatrix eta_beta(std::size_t m, std::size_t n, const Quaternion &q) {
    const std::size_t N = m + n + 2;
    QMatrix x(N);
    x.set(0, 1, q);
    x.set(0, m + 1, q);
    x.set(1, N - 1, -q.conj());
    x.set(m + 1, N - 1, q.conj());
    return x;
}

QMatrix eta_zeta(std::size_t m, std::size_t n, const Quaternion &q) {
    const std::size_t N = m + n + 2;
    QMatrix x(N);
    x.set(1, 1, q);
    x.set(1, m + 1, q);
    x.set(m + 1, 1, -q);
    x.set(m + 1, m + 1, -q);
    return x;
}

std::string weight_label(const Vector &w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (sgn(w[i]) == 0)
            continue;
        Scalar a = abs(w[i]);
        if (sgn(w[i]) < 0)
            s += "-";
        else if (!s.empty())
            s += "+";
        if (a != 1)
            s += a.get_str();
        s += "e" + std::to_string(i);
    }
    return s;
}

} // namespace

Realization build_quaternionic(int m_in, int n_in) {
    if (m_in < 2 || n_in < m_in)
        throw ParseError("qc:M,N requires N >= M > 1", 0);
    const auto m = static_cast<std::size_t>(m_in);
    const auto n = static_cast<std::size_t>(n_in);
    const std::size_t N = m + n + 2;
    QMatrix J(N);
    J.set(0, N - 1, Quaternion::real(1));
    J.set(N - 1, 0, Quaternion::real(1));
    for (std::size_t l = 1; l <= m; ++l)
        J.set(l, l, Quaternion::real(1));
    for (std::size_t l = m + 1; l <= m + n; ++l)
        J.set(l, l, Quaternion::real(-1));

    // g = {X : X^* J + J X = 0}
    const std::size_t flat = 4 * N * N;
    auto flat_index = [N](std::size_t r, std::size_t c, int comp) {
        return (r * N + c) * 4 + static_cast<std::size_t>(comp);
    };
    Matrix cond(flat, flat);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            for (int comp = 0; comp < 4; ++comp) {
                QMatrix x(N);
                x.set(r, c, unit_quaternion(comp));
                QMatrix img = x.conj_transpose() * J + J * x;
                for (const auto &[rc, q] : img.entries())
                    for (int k = 0; k < 4; ++k)
                        cond(flat_index(rc.first, rc.second, k), flat_index(r, c, comp)) = q[k];
            }
    std::vector<QMatrix> raw;
    for (const auto &v : kernel(cond)) {
        QMatrix x(N);
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) {
                Quaternion q;
                for (int comp = 0; comp < 4; ++comp)
                    q[comp] = v[flat_index(r, c, comp)];
                x.set(r, c, q);
            }
        raw.push_back(x);
    }
    if (raw.size() != N * (2 * N + 1))
        throw Error("quaternionic builder: unexpected dimension " + std::to_string(raw.size()));
    MatrixRealization raw_real(N, 4, raw);

    std::vector<QMatrix> a_mats;
    {
        QMatrix a0(N);
        a0.set(0, 0, Quaternion::real(1));
        a0.set(N - 1, N - 1, Quaternion::real(-1));
        a_mats.push_back(a0);
        for (std::size_t l = 1; l <= m; ++l) {
            QMatrix al(N);
            al.set(l, m + l, Quaternion::real(1));
            al.set(m + l, l, Quaternion::real(1));
            a_mats.push_back(al);
        }
    }
    std::vector<Matrix> ops;
    for (const auto &a : a_mats) {
        Matrix op(raw.size(), raw.size());
        for (std::size_t k = 0; k < raw.size(); ++k) {
            Vector c = raw_real.coordinates(commutator(a, raw[k]));
            for (std::size_t r = 0; r < raw.size(); ++r)
                op(r, k) = c[r];
        }
        ops.push_back(op);
    }
    auto pieces = joint_eigenspaces(ops, raw.size());
    auto to_matrix = [&](const Vector &coords) { return raw_real.matrix(coords); };

    Vector beta_w(m + 1), zeta_w(m + 1);
    beta_w[0] = 1;
    beta_w[1] = -1;
    zeta_w[1] = -2;

    std::vector<QMatrix> basis;
    std::vector<std::string> labels;
    for (std::size_t l = 0; l <= m; ++l) {
        basis.push_back(a_mats[l]);
        labels.push_back(l == 0 ? "a0" : "d" + std::to_string(l));
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const JointEigenspace &a, const JointEigenspace &b) { return a.weight > b.weight; });
    // zero space complement of a
    for (const auto &p : pieces) {
        if (!is_zero(p.weight))
            continue;
        Subspace span(raw.size());
        for (const auto &a : a_mats)
            span.add(raw_real.coordinates(a));
        std::size_t extra = 0;
        for (const auto &v : p.basis)
            if (span.add(v)) {
                basis.push_back(to_matrix(v));
                labels.push_back("m" + std::to_string(++extra));
            }
        if (basis.size() != p.basis.size())
            throw Error("quaternionic builder: a is not inside the centralizer");
    }
    for (const auto &p : pieces) {
        if (is_zero(p.weight))
            continue;
        std::vector<QMatrix> vecs;
        std::vector<std::string> labs;
        if (p.weight == beta_w || p.weight == zeta_w) {
            const bool beta = p.weight == beta_w;
            for (int c = beta ? 0 : 1; c < 4; ++c) {
                vecs.push_back(beta ? eta_beta(m, n, unit_quaternion(c))
                                    : eta_zeta(m, n, unit_quaternion(c)));
                labs.push_back("eta[" + weight_label(p.weight) + "," + kUnitNames[c] + "]");
            }
            // the pinned generators must span the computed eigenspace
            Subspace computed(raw.size());
            for (const auto &v : p.basis)
                computed.add(v);
            Subspace pinned(raw.size());
            for (const auto &x : vecs)
                pinned.add(raw_real.coordinates(x));
            if (pinned.dim() != computed.dim() || !computed.contains(pinned))
                throw Error("quaternionic builder: pinned generators do not span g_" +
                            weight_label(p.weight));
        } else {
            for (std::size_t k = 0; k < p.basis.size(); ++k) {
                vecs.push_back(to_matrix(p.basis[k]));
                labs.push_back("x[" + weight_label(p.weight) + "]" + std::to_string(k + 1));
            }
        }
        basis.insert(basis.end(), vecs.begin(), vecs.end());
        labels.insert(labels.end(), labs.begin(), labs.end());
    }

    auto mr = std::make_shared<MatrixRealization>(N, 4, basis);
    auto algebra = std::make_shared<LieAlgebra>(labels, mr->structure_table());
    const std::size_t d = basis.size();
    std::vector<Vector> cartan;
    for (std::size_t l = 0; l <= m; ++l)
        cartan.push_back(unit(d, l));
    RootSystemOptions opt;
    opt.theta = theta_matrix(*mr);
    EpsilonFrame eps;
    for (std::size_t l = 0; l <= m; ++l) {
        eps.labels.push_back("e" + std::to_string(l));
        eps.values.push_back(unit(m + 1, l));
    }
    opt.epsilon = eps;
    Vector ord(m + 1);
    for (std::size_t l = 0; l <= m; ++l)
        ord[l] = Scalar(static_cast<long>(m + 1 - l));
    opt.ordering = ord;

    Realization r;
    r.descriptor = "qc:" + std::to_string(m_in) + "," + std::to_string(n_in);
    r.algebra = algebra;
    r.roots = RestrictedRootSystem::decompose(algebra, cartan, opt);
    r.matrices = mr;
    return r;
}

LoadedAlgebra parse_structure_constants(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long dim = -1;
    std::map<std::array<long, 3>, std::pair<Scalar, int>> entries;
    LoadedAlgebra out;
    std::vector<Vector> cartan;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        if (dim < 0) {
            if (tok.size() != 2 || tok[0] != "dim")
                throw ParseError("expected 'dim N' header", lineno);
            try {
                std::size_t used = 0;
                dim = std::stol(tok[1], &used);
                if (used != tok[1].size())
                    throw std::invalid_argument("trailing");
            } catch (const std::exception &) {
                throw ParseError("malformed dimension '" + tok[1] + "'", lineno);
            }
            if (dim <= 0)
                throw ParseError("dimension must be positive", lineno);
            continue;
        }
        if (tok[0] == "cartan") {
            if (tok.size() != static_cast<std::size_t>(dim) + 1)
                throw ParseError("cartan line needs " + std::to_string(dim) + " coordinates",
                                 lineno);
            Vector v;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                try {
                    v.push_back(parse_scalar(tok[i]));
                } catch (const std::invalid_argument &e) {
                    throw ParseError(e.what(), lineno);
                }
            }
            cartan.push_back(v);
            continue;
        }
        if (tok.size() != 4)
            throw ParseError("expected 'i j k p/q'", lineno);
        std::array<long, 3> idx{};
        for (int t = 0; t < 3; ++t) {
            try {
                std::size_t used = 0;
                idx[t] = std::stol(tok[t], &used);
                if (used != tok[t].size())
                    throw std::invalid_argument("trailing");
            } catch (const std::exception &) {
                throw ParseError("malformed index '" + tok[t] + "'", lineno);
            }
            if (idx[t] < 1 || idx[t] > dim)
                throw ParseError("index " + tok[t] + " out of range 1.." + std::to_string(dim),
                                 lineno);
        }
        Scalar val;
        try {
            val = parse_scalar(tok[3]);
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what(), lineno);
        }
        if (idx[0] == idx[1]) {
            if (sgn(val) != 0)
                throw ParseError("c[i][i] must vanish", lineno);
            continue;
        }
        if (entries.count(idx))
            throw ParseError("duplicate entry", lineno);
        std::array<long, 3> mirror{idx[1], idx[0], idx[2]};
        auto it = entries.find(mirror);
        if (it != entries.end() && it->second.first != -val)
            throw ParseError("antisymmetry violation: c[" + tok[0] + "][" + tok[1] +
                                 "] != -c[" + tok[1] + "][" + tok[0] + "] (see line " +
                                 std::to_string(it->second.second) + ")",
                             lineno);
        entries[idx] = {val, lineno};
    }
    if (dim < 0)
        throw ParseError("missing 'dim N' header", lineno);
    const auto d = static_cast<std::size_t>(dim);
    std::vector<Vector> dense(d * d, Vector(d));
    for (const auto &[idx, vl] : entries) {
        auto i = static_cast<std::size_t>(idx[0] - 1), j = static_cast<std::size_t>(idx[1] - 1),
             k = static_cast<std::size_t>(idx[2] - 1);
        dense[i * d + j][k] = vl.first;
        dense[j * d + i][k] = -vl.first;
    }
    std::vector<SparseVector> table;
    for (const auto &v : dense)
        table.push_back(sparsify(v));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < d; ++i)
        labels.push_back("e" + std::to_string(i + 1));
    out.algebra = std::make_shared<LieAlgebra>(labels, std::move(table));
    out.cartan = std::move(cartan);
    return out;
}

LoadedAlgebra load_structure_constants(const std::string &path) {
    std::ifstream f(path);
    if (!f)
        throw ParseError("cannot open '" + path + "'", 0);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_structure_constants(ss.str());
}

Realization realize_loaded(const LoadedAlgebra &loaded, const std::string &descriptor) {
    Realization r;
    r.descriptor = descriptor;
    r.algebra = loaded.algebra;
    if (!loaded.cartan.empty())
        r.roots = RestrictedRootSystem::decompose(loaded.algebra, loaded.cartan);
    return r;
}

Realization build_from_descriptor(const std::string &descriptor) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos)
        throw ParseError("algebra descriptor must be sl:M, qc:M,N or file:PATH", 0);
    std::string kind = descriptor.substr(0, colon), arg = descriptor.substr(colon + 1);
    auto integer = [&](const std::string &s) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != s.size() || s.empty() || v > 64)
            throw ParseError("malformed integer '" + s + "' in descriptor '" + descriptor + "'", 0);
        return static_cast<int>(v);
    };
    if (kind == "sl")
        return build_sl(integer(arg));
    if (kind == "qc") {
        auto comma = arg.find(',');
        if (comma == std::string::npos)
            throw ParseError("qc descriptor needs M,N", 0);
        return build_quaternionic(integer(arg.substr(0, comma)), integer(arg.substr(comma + 1)));
    }
    if (kind == "file")
        return realize_loaded(load_structure_constants(arg), descriptor);
    throw ParseError("unknown algebra kind '" + kind + "'", 0);
}

} // namespace curvtree
