#include "curvtree/parabolic.hpp"

#include "curvtree/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace curvtree {

namespace {

int to_int(const Scalar &x, const std::string &what) {
    if (x.get_den() != 1 || !x.get_num().fits_sint_p())
        throw Error(what + " is not an integer: " + to_string(x));
    return static_cast<int>(x.get_num().get_si());
}

} // namespace

std::shared_ptr<const ParabolicGrading>
ParabolicGrading::grade(std::shared_ptr<const RestrictedRootSystem> system,
                        std::vector<std::size_t> crossed) {
    const auto &rs = *system;
    const auto &simples = rs.simples();
    if (crossed.empty())
        throw Error("no simple roots crossed");
    std::sort(crossed.begin(), crossed.end());
    crossed.erase(std::unique(crossed.begin(), crossed.end()), crossed.end());
    for (auto c : crossed)
        if (c >= simples.size())
            throw Error("crossed simple index " + std::to_string(c + 1) + " out of range (" +
                        std::to_string(simples.size()) + " simples)");

    auto g = std::shared_ptr<ParabolicGrading>(new ParabolicGrading());
    g->system_ = system;
    g->crossed_ = crossed;

    const std::size_t r = rs.rank();
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t s = 0; s < simples.size(); ++s) {
        rows.push_back(rs.roots()[simples[s]]);
        rhs.push_back(std::binary_search(crossed.begin(), crossed.end(), s) ? 1 : 0);
    }
    auto sol = solve_affine(Matrix::from_rows(rows, r), rhs);
    if (!sol || !sol->homogeneous.empty())
        throw Error("simple roots do not determine a grading element");
    g->e_gr_ = rs.from_a(sol->particular);

    const auto &roots = rs.roots();
    g->root_degree_.resize(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        int d = to_int(rs.evaluate(roots[i], g->e_gr_), "root degree");
        g->root_degree_[i] = d;
        g->depth_ = std::max(g->depth_, std::abs(d));
        if (d > 0)
            g->delta_plus_p_.push_back(i);
        else if (d == 0) {
            g->g0_roots_.push_back(i);
            if (i >= rs.num_positive())
                g->g0_negative_.push_back(i);
        }
    }

    const std::size_t n = rs.algebra().dim();
    for (int i = -g->depth_; i <= g->depth_; ++i)
        g->components_[i] = Subspace(n);
    g->g_minus_ = Subspace(n);
    g->p_plus_ = Subspace(n);
    g->p_ = Subspace(n);
    const auto &adapted = rs.adapted_basis();
    for (std::size_t j = 0; j < adapted.size(); ++j) {
        int d = g->adapted_degree(j);
        g->components_[d].add(adapted[j]);
        if (d < 0)
            g->g_minus_.add(adapted[j]);
        else
            g->p_.add(adapted[j]);
        if (d > 0)
            g->p_plus_.add(adapted[j]);
    }

    // z(g0)∩a: common kernel of the g0 roots; g0ss∩a: its kappa-orthocomplement in a
    std::vector<Vector> g0rows;
    for (auto i : g->g0_roots_)
        g0rows.push_back(roots[i]);
    std::vector<Vector> zc = g0rows.empty() ? std::vector<Vector>{}
                                            : kernel(Matrix::from_rows(g0rows, r));
    if (g0rows.empty())
        for (std::size_t a = 0; a < r; ++a)
            zc.push_back(unit(r, a));
    std::vector<Vector> zr;
    for (const auto &z : zc)
        zr.push_back(rs.gram() * z);
    std::vector<Vector> sc = zr.empty() ? std::vector<Vector>{} : kernel(Matrix::from_rows(zr, r));
    if (zr.empty())
        for (std::size_t a = 0; a < r; ++a)
            sc.push_back(unit(r, a));
    g->z_g0_a_ = Subspace(n);
    for (const auto &z : zc)
        g->z_g0_a_.add(rs.from_a(z));
    g->g0ss_a_ = Subspace(n);
    for (const auto &s : sc)
        g->g0ss_a_.add(rs.from_a(s));
    return g;
}

int ParabolicGrading::degree(const Covector &nu) const {
    return to_int(system_->evaluate(nu, e_gr_), "weight degree");
}

int ParabolicGrading::adapted_degree(std::size_t j) const {
    long root = system_->adapted_root(j);
    return root < 0 ? 0 : root_degree_[static_cast<std::size_t>(root)];
}

bool ParabolicGrading::in_delta_plus_p(const Covector &nu) const {
    auto idx = system_->index_of(nu);
    return idx && root_degree_[*idx] > 0;
}

Vector ParabolicGrading::project_g0ss(const Vector &h) const {
    const auto &rs = *system_;
    std::vector<Vector> sub;
    for (const auto &s : g0ss_a_.basis())
        sub.push_back(rs.a_coordinates(s));
    if (sub.empty())
        return zeros(h.size());
    return rs.from_a(project_orthogonal(rs.a_coordinates(h), sub, rs.gram()));
}

bool ParabolicGrading::in_z_g0(const Vector &z) const { return z_g0_a_.contains(z); }

bool ParabolicGrading::is_scaling_element(const Vector &z) const {
    if (!in_z_g0(z))
        return false;
    for (auto i : delta_plus_p_)
        if (sgn(system_->evaluate(system_->roots()[i], z)) == 0)
            return false;
    return true;
}

std::vector<AuditLine> audit_grading(const ParabolicGrading &gr) {
    const auto &rs = gr.system();
    const auto &g = rs.algebra();
    const auto &adapted = rs.adapted_basis();
    const std::size_t n = g.dim();
    std::vector<AuditLine> out;

    AuditLine eig{"grading element eigenvalues", true, ""};
    for (std::size_t j = 0; j < n && eig.pass; ++j) {
        auto lhs = g.bracket(gr.grading_element(), adapted[j]);
        if (lhs != Scalar(gr.adapted_degree(j)) * adapted[j]) {
            eig.pass = false;
            eig.detail = "basis vector " + std::to_string(j);
        }
    }
    out.push_back(eig);

    AuditLine br{"bracket grading [g_i,g_j] in g_(i+j)", true, ""};
    for (std::size_t a = 0; a < n && br.pass; ++a)
        for (std::size_t b = a + 1; b < n && br.pass; ++b) {
            int d = gr.adapted_degree(a) + gr.adapted_degree(b);
            auto c = rs.adapted_coordinates(g.bracket(adapted[a], adapted[b]));
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(c[k]) != 0 && gr.adapted_degree(k) != d) {
                    br.pass = false;
                    br.detail = "pair " + std::to_string(a) + "," + std::to_string(b);
                    break;
                }
        }
    out.push_back(br);

    AuditLine kp{"Killing pairing of g_i and g_j vanishes unless i+j=0", true, ""};
    Matrix basis = Matrix::from_columns(adapted, n);
    Matrix kb = g.killing_matrix() * basis;
    for (std::size_t a = 0; a < n && kp.pass; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (gr.adapted_degree(a) + gr.adapted_degree(b) == 0)
                continue;
            Scalar s = 0;
            for (std::size_t k = 0; k < n; ++k)
                s += adapted[a][k] * kb(k, b);
            if (sgn(s) != 0) {
                kp.pass = false;
                kp.detail = "pair " + std::to_string(a) + "," + std::to_string(b);
                break;
            }
        }
    out.push_back(kp);

    AuditLine gen{"p+ and g- generated by g_1 and g_-1", true, ""};
    for (int sign : {1, -1}) {
        for (int i = 1; i < gr.depth() && gen.pass; ++i) {
            Subspace next(n);
            for (const auto &x : gr.component(sign).basis())
                for (const auto &y : gr.component(sign * i).basis())
                    next.add(g.bracket(x, y));
            const auto &target = gr.component(sign * (i + 1));
            if (next.dim() != target.dim() || !next.contains(target)) {
                gen.pass = false;
                gen.detail = "degree " + std::to_string(sign * (i + 1));
            }
        }
    }
    out.push_back(gen);

    AuditLine sp{"a splits as z(g0)∩a plus g0ss∩a", true, ""};
    if (gr.z_g0_a().dim() + gr.g0ss_a().dim() != rs.rank() ||
        intersect(gr.z_g0_a(), gr.g0ss_a()).dim() != 0) {
        sp.pass = false;
        sp.detail = "dimensions " + std::to_string(gr.z_g0_a().dim()) + "+" +
                    std::to_string(gr.g0ss_a().dim());
    }
    if (sp.pass && !gr.is_scaling_element(gr.grading_element())) {
        sp.pass = false;
        sp.detail = "grading element is not a scaling element";
    }
    out.push_back(sp);

    AuditLine pos{"delta+(p+) inside delta+", true, ""};
    for (auto i : gr.delta_plus_p())
        if (i >= rs.num_positive()) {
            pos.pass = false;
            pos.detail = rs.render(rs.roots()[i]);
            break;
        }
    out.push_back(pos);
    return out;
}

} // namespace curvtree
