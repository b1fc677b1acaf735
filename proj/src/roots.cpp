#include "curvtree/roots.hpp"

#include "curvtree/errors.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <stdexcept>

namespace curvtree {

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    if (n > mpz_class("1000000000000"))
        throw NotSimultaneouslyDiagonalizable("eigenvalue search: coefficient too large to factor");
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n)
                large.push_back(n / d);
        }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Scalar eval_poly(const Vector &c, const Scalar &x) {
    Scalar r = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        r = r * x + c[i];
    return r;
}

} // namespace

std::vector<Scalar> rational_roots(const Vector &coeffs) {
    Vector c = coeffs;
    while (!c.empty() && sgn(c.back()) == 0)
        c.pop_back();
    std::vector<Scalar> out;
    if (c.size() <= 1)
        return out;
    std::size_t low = 0;
    while (sgn(c[low]) == 0)
        ++low;
    if (low > 0) {
        out.push_back(0);
        c.erase(c.begin(), c.begin() + static_cast<long>(low));
    }
    if (c.size() <= 1)
        return out;
    mpz_class l = 1;
    for (const auto &x : c)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    Vector ic(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        ic[i] = c[i] * l;
    auto ps = divisors(ic.front().get_num());
    auto qs = divisors(ic.back().get_num());
    std::vector<Scalar> found;
    for (const auto &p : ps)
        for (const auto &q : qs)
            for (int s : {1, -1}) {
                Scalar x(s * p, q);
                x.canonicalize();
                if (std::find(found.begin(), found.end(), x) == found.end() &&
                    sgn(eval_poly(ic, x)) == 0)
                    found.push_back(x);
            }
    out.insert(out.end(), found.begin(), found.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// eigen-split of a w x w matrix over Q; returns (eigenvalue, eigenvectors)
std::vector<std::pair<Scalar, std::vector<Vector>>> split_operator(const Matrix &m) {
    const std::size_t w = m.rows();
    Subspace found(w);
    std::vector<std::pair<Scalar, std::vector<Vector>>> out;
    for (std::size_t start = 0; start < w && found.dim() < w; ++start) {
        Vector v = unit(w, start);
        if (found.contains(v))
            continue;
        // Krylov minimal polynomial of v
        Subspace krylov(w);
        Vector cur = v;
        std::vector<Vector> seq;
        while (krylov.add(cur)) {
            seq.push_back(cur);
            cur = m * cur;
        }
        Vector c = krylov.coordinates(cur);
        Vector poly(seq.size() + 1);
        for (std::size_t i = 0; i < seq.size(); ++i)
            poly[i] = -c[i];
        poly[seq.size()] = 1;
        auto roots = rational_roots(poly);
        if (roots.size() != seq.size())
            throw NotSimultaneouslyDiagonalizable(
                "operator has eigenvalues outside Q or is not diagonalizable");
        for (const auto &lambda : roots) {
            bool known = std::any_of(out.begin(), out.end(),
                                     [&](const auto &e) { return e.first == lambda; });
            if (known)
                continue;
            Matrix shifted = m;
            for (std::size_t i = 0; i < w; ++i)
                shifted(i, i) -= lambda;
            auto vecs = kernel(shifted);
            for (const auto &x : vecs)
                found.add(x);
            out.emplace_back(lambda, std::move(vecs));
        }
    }
    if (found.dim() != w)
        throw NotSimultaneouslyDiagonalizable("eigenspaces do not span");
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

} // namespace

std::vector<JointEigenspace> joint_eigenspaces(const std::vector<Matrix> &ops, std::size_t n) {
    std::vector<JointEigenspace> pieces;
    {
        JointEigenspace all;
        for (std::size_t i = 0; i < n; ++i)
            all.basis.push_back(unit(n, i));
        pieces.push_back(std::move(all));
    }
    for (std::size_t o = 0; o < ops.size(); ++o) {
        std::vector<JointEigenspace> next;
        for (auto &piece : pieces) {
            const std::size_t w = piece.basis.size();
            Subspace span(n, piece.basis);
            Matrix restricted(w, w);
            for (std::size_t c = 0; c < w; ++c) {
                Vector image = ops[o] * piece.basis[c];
                Vector coords;
                try {
                    coords = span.coordinates(image);
                } catch (const NotClosed &) {
                    throw NotSimultaneouslyDiagonalizable("operator " + std::to_string(o) +
                                                          " does not preserve a joint eigenspace "
                                                          "(operators do not commute)");
                }
                for (std::size_t r = 0; r < w; ++r)
                    restricted(r, c) = coords[r];
            }
            std::vector<std::pair<Scalar, std::vector<Vector>>> split;
            try {
                split = split_operator(restricted);
            } catch (const NotSimultaneouslyDiagonalizable &e) {
                throw NotSimultaneouslyDiagonalizable("operator " + std::to_string(o) + ": " +
                                                      e.what());
            }
            for (auto &[lambda, vecs] : split) {
                JointEigenspace e;
                e.weight = piece.weight;
                e.weight.push_back(lambda);
                for (const auto &x : vecs) {
                    Vector v(n);
                    for (std::size_t k = 0; k < w; ++k)
                        axpy(v, x[k], piece.basis[k]);
                    e.basis.push_back(std::move(v));
                }
                next.push_back(std::move(e));
            }
        }
        pieces = std::move(next);
    }
    return pieces;
}

std::shared_ptr<const RestrictedRootSystem>
RestrictedRootSystem::decompose(std::shared_ptr<const LieAlgebra> algebra,
                                const std::vector<Vector> &cartan, RootSystemOptions options) {
    const LieAlgebra &g = *algebra;
    const std::size_t n = g.dim();
    std::shared_ptr<RestrictedRootSystem> rs(new RestrictedRootSystem());
    rs->algebra_ = algebra;
    rs->cartan_ = Subspace(n, cartan);
    if (rs->cartan_.dim() != cartan.size())
        throw Error("decompose: supplied a-basis is linearly dependent");
    const std::size_t r = cartan.size();
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            if (!is_zero(g.bracket(cartan[a], cartan[b])))
                throw Error("decompose: a is not abelian");

    std::vector<Matrix> ops;
    for (const auto &h : cartan)
        ops.push_back(g.ad(h));
    auto pieces = joint_eigenspaces(ops, n);

    rs->zero_space_ = Subspace(n);
    std::vector<JointEigenspace> root_pieces;
    for (auto &p : pieces) {
        if (is_zero(p.weight))
            rs->zero_space_ = Subspace(n, p.basis);
        else
            root_pieces.push_back(std::move(p));
    }

    // Killing gram on a
    rs->gram_ = Matrix(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            rs->gram_(a, b) = g.killing_form(cartan[a], cartan[b]);
    rs->gram_inverse_ = inverse(rs->gram_);

    if (options.epsilon) {
        rs->epsilon_ = *options.epsilon;
    } else {
        for (std::size_t a = 0; a < r; ++a) {
            rs->epsilon_.labels.push_back("w" + std::to_string(a + 1));
            rs->epsilon_.values.push_back(unit(r, a));
        }
    }
    if (r > 0) {
        const std::size_t m = rs->epsilon_.values.size();
        Matrix f(r, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t a = 0; a < r; ++a)
                f(a, i) = rs->epsilon_.values[i][a];
        auto ffinv = inverse(f * f.transpose());
        if (!ffinv)
            throw Error("decompose: epsilon frame does not span the dual of a");
        rs->eps_pinv_ = f.transpose() * *ffinv;
    }

    // positivity
    std::vector<Vector> weights;
    for (const auto &p : root_pieces)
        weights.push_back(p.weight);
    auto regular = [&](const Vector &h) {
        return std::all_of(weights.begin(), weights.end(),
                           [&](const Vector &w) { return sgn(dot(w, h)) != 0; });
    };
    if (options.ordering) {
        if (options.ordering->size() != r || !regular(*options.ordering))
            throw Error("decompose: ordering element is not regular");
        rs->ordering_ = *options.ordering;
    } else {
        for (long base = 2;; ++base) {
            Vector h(r);
            Scalar p = 1;
            for (std::size_t a = r; a-- > 0;) {
                h[a] = p;
                p *= base;
            }
            if (regular(h)) {
                rs->ordering_ = h;
                break;
            }
        }
    }

    std::vector<std::size_t> pos;
    std::map<Vector, std::size_t> where;
    for (std::size_t i = 0; i < root_pieces.size(); ++i) {
        where[root_pieces[i].weight] = i;
        if (sgn(dot(root_pieces[i].weight, rs->ordering_)) > 0)
            pos.push_back(i);
    }
    if (pos.size() * 2 != root_pieces.size())
        throw Error("decompose: root set is not symmetric");
    std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
        return rs->epsilon_coordinates(root_pieces[a].weight) >
               rs->epsilon_coordinates(root_pieces[b].weight);
    });
    for (std::size_t i : pos) {
        rs->roots_.push_back(root_pieces[i].weight);
        rs->spaces_.push_back(root_pieces[i].basis);
    }
    for (std::size_t i : pos) {
        auto it = where.find(-root_pieces[i].weight);
        if (it == where.end())
            throw Error("decompose: root set is not symmetric");
        rs->roots_.push_back(root_pieces[it->second].weight);
        rs->spaces_.push_back(root_pieces[it->second].basis);
    }

    // simples: positive roots that are not sums of two positive roots
    const std::size_t np = pos.size();
    for (std::size_t i = 0; i < np; ++i) {
        bool decomposable = false;
        for (std::size_t a = 0; a < np && !decomposable; ++a) {
            Vector rest = rs->roots_[i] - rs->roots_[a];
            auto k = rs->index_of(rest);
            decomposable = k && *k < np;
        }
        if (!decomposable)
            rs->simples_.push_back(i);
    }

    if (options.theta) {
        const Matrix &th = *options.theta;
        if (th.rows() != n || th.cols() != n)
            throw Error("decompose: theta has the wrong shape");
        for (const auto &h : cartan)
            if (th * h != -h)
                throw Error("decompose: theta does not act as -1 on a");
        for (std::size_t i = 0; i < rs->roots_.size(); ++i) {
            std::size_t opp = i < np ? i + np : i - np;
            Subspace target(n, rs->spaces_[opp]);
            Subspace image(n);
            for (const auto &x : rs->spaces_[i])
                image.add(th * x);
            if (image.dim() != target.dim() || !target.contains(image))
                throw Error("decompose: theta does not map g_nu onto g_-nu for nu = " +
                            rs->render(rs->roots_[i]));
        }
        rs->theta_ = th;
    }

    // adapted basis
    for (const auto &v : rs->zero_space_.basis()) {
        rs->adapted_.push_back(v);
        rs->adapted_weight_.push_back(Vector(r));
        rs->adapted_root_.push_back(-1);
    }
    for (std::size_t i = 0; i < rs->roots_.size(); ++i) {
        rs->offsets_.push_back(rs->adapted_.size());
        for (const auto &v : rs->spaces_[i]) {
            rs->adapted_.push_back(v);
            rs->adapted_weight_.push_back(rs->roots_[i]);
            rs->adapted_root_.push_back(static_cast<long>(i));
        }
    }
    if (rs->adapted_.size() != n)
        throw NotSimultaneouslyDiagonalizable("dimension audit failed: eigenspaces do not span g");
    auto inv = inverse(Matrix::from_columns(rs->adapted_, n));
    if (!inv)
        throw NotSimultaneouslyDiagonalizable("adapted basis is singular");
    rs->adapted_inverse_ = *inv;
    return rs;
}

std::optional<std::size_t> RestrictedRootSystem::index_of(const Covector &nu) const {
    for (std::size_t i = 0; i < roots_.size(); ++i)
        if (roots_[i] == nu)
            return i;
    return std::nullopt;
}

bool RestrictedRootSystem::is_positive_root(const Covector &nu) const {
    auto i = index_of(nu);
    return i && *i < num_positive();
}

bool RestrictedRootSystem::is_simple_root(const Covector &nu) const {
    auto i = index_of(nu);
    return i && std::find(simples_.begin(), simples_.end(), *i) != simples_.end();
}

Vector RestrictedRootSystem::from_a(const Vector &coords) const {
    Vector h(algebra_->dim());
    for (std::size_t a = 0; a < rank(); ++a)
        axpy(h, coords[a], cartan_[a]);
    return h;
}

Vector RestrictedRootSystem::a_coordinates(const Vector &h) const {
    return cartan_.coordinates(h);
}

Scalar RestrictedRootSystem::evaluate(const Covector &nu, const Vector &h) const {
    return dot(nu, a_coordinates(h));
}

Vector RestrictedRootSystem::dual(const Covector &nu) const {
    if (!gram_inverse_)
        throw DegenerateForm("Killing form is degenerate on a");
    return from_a(*gram_inverse_ * nu);
}

Covector RestrictedRootSystem::lower(const Vector &h) const {
    return gram_ * a_coordinates(h);
}

Scalar RestrictedRootSystem::inner(const Covector &a, const Covector &b) const {
    if (!gram_inverse_)
        throw DegenerateForm("Killing form is degenerate on a");
    return dot(a, *gram_inverse_ * b);
}

Covector RestrictedRootSystem::reflect(const Covector &alpha, const Covector &nu) const {
    Scalar aa = inner(alpha, alpha);
    if (sgn(aa) == 0)
        throw IsotropicRoot("reflection in an isotropic covector");
    Scalar f = 2 * inner(alpha, nu) / aa;
    return nu - f * alpha;
}

Covector RestrictedRootSystem::highest_root() const {
    std::vector<std::size_t> tops;
    for (std::size_t i = 0; i < num_positive(); ++i) {
        bool top = true;
        for (auto s : simples_)
            if (is_root(roots_[i] + roots_[s]))
                top = false;
        if (top)
            tops.push_back(i);
    }
    if (tops.size() != 1)
        throw NotSimple("root system is empty or decomposes; no unique highest root");
    return roots_[tops[0]];
}

Covector RestrictedRootSystem::from_epsilon(const Vector &coeffs) const {
    if (coeffs.size() != epsilon_.values.size())
        throw ParseError("expected " + std::to_string(epsilon_.values.size()) +
                             " epsilon coefficients, got " + std::to_string(coeffs.size()),
                         0);
    Covector nu(rank());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        axpy(nu, coeffs[i], epsilon_.values[i]);
    return nu;
}

Vector RestrictedRootSystem::epsilon_coordinates(const Covector &nu) const {
    if (rank() == 0)
        return {};
    return eps_pinv_ * nu;
}

std::string RestrictedRootSystem::render(const Covector &nu) const {
    Vector c = epsilon_coordinates(nu);
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (sgn(c[i]) == 0)
            continue;
        Scalar a = abs(c[i]);
        if (sgn(c[i]) < 0)
            s += "-";
        else if (!s.empty())
            s += "+";
        if (a != 1)
            s += a.get_str();
        s += epsilon_.labels[i];
    }
    return s.empty() ? "0" : s;
}

Covector RestrictedRootSystem::parse_root(const std::string &expr) const {
    std::string t;
    for (char ch : expr)
        if (ch != ' ')
            t.push_back(ch);
    if (t == "0")
        return Covector(rank());
    static const std::regex term(R"(([+-]?)(\d+(?:/\d+)?)?([A-Za-z]+\d+))");
    Vector coeffs(epsilon_.labels.size());
    std::size_t pos = 0;
    auto begin = std::sregex_iterator(t.begin(), t.end(), term);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const auto &m = *it;
        if (static_cast<std::size_t>(m.position()) != pos || (pos > 0 && m[1].length() == 0))
            throw ParseError("malformed root expression '" + expr + "'", 0);
        pos += static_cast<std::size_t>(m.length());
        Scalar c = m[2].matched ? parse_scalar(m[2].str()) : Scalar(1);
        if (m[1].str() == "-")
            c = -c;
        auto lab = std::find(epsilon_.labels.begin(), epsilon_.labels.end(), m[3].str());
        if (lab == epsilon_.labels.end())
            throw ParseError("unknown coordinate '" + m[3].str() + "' in '" + expr + "'", 0);
        coeffs[static_cast<std::size_t>(lab - epsilon_.labels.begin())] += c;
    }
    if (pos != t.size() || t.empty())
        throw ParseError("malformed root expression '" + expr + "'", 0);
    return from_epsilon(coeffs);
}

} // namespace curvtree
