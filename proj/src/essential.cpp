#include "curvtree/essential.hpp"

#include "curvtree/errors.hpp"

#include <set>

namespace curvtree {

namespace {

std::vector<Vector> a_basis(const RestrictedRootSystem &rs, const Subspace &s) {
    std::vector<Vector> out;
    for (const auto &v : s.basis())
        out.push_back(rs.a_coordinates(v));
    return out;
}

// roots to try: the hint first, then delta+(p+) in canonical order
std::vector<Covector> ordered(const ParabolicGrading &g, const std::optional<Covector> &hint) {
    const auto &rs = g.system();
    std::vector<Covector> out;
    if (hint && g.in_delta_plus_p(*hint))
        out.push_back(*hint);
    for (auto i : g.delta_plus_p())
        if (!hint || rs.roots()[i] != *hint)
            out.push_back(rs.roots()[i]);
    return out;
}

// R in g0ss∩a with weight(R) = b1 and nu0(R) = b2
std::optional<Vector> solve_r(const ParabolicGrading &g, const Covector &weight,
                              const Covector &nu0, const Scalar &b1, const Scalar &b2) {
    const auto &rs = g.system();
    auto basis = a_basis(rs, g.g0ss_a());
    if (basis.empty())
        return std::nullopt;
    Matrix m(2, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        m(0, i) = dot(weight, basis[i]);
        m(1, i) = dot(nu0, basis[i]);
    }
    auto sol = solve_affine(m, {b1, b2});
    if (!sol)
        return std::nullopt;
    Vector r = zeros(rs.rank());
    for (std::size_t i = 0; i < basis.size(); ++i)
        axpy(r, sol->particular[i], basis[i]);
    return rs.from_a(r);
}

A0Certificate make_a0(const ParabolicGrading &g, const Covector &alpha, const Covector &nu0,
                      const Vector &r, const std::string &strategy) {
    const auto &rs = g.system();
    A0Certificate c;
    c.found = true;
    c.strategy = strategy;
    c.alpha = alpha;
    c.nu0 = nu0;
    c.r = r;
    c.a0 = rs.dual(alpha) + r;
    c.fixed_x = rs.root_space(*rs.index_of(-nu0)).front();
    return c;
}

} // namespace

Subspace weight_kernel(const ParabolicGrading &g, const Covector &weight) {
    const auto &rs = g.system();
    Subspace out(rs.algebra().dim());
    if (is_zero(weight)) {
        for (const auto &v : rs.cartan().basis())
            out.add(v);
        return out;
    }
    for (const auto &v : kernel(Matrix::from_rows({weight}, rs.rank())))
        out.add(rs.from_a(v));
    return out;
}

bool weight_is_scaling(const ParabolicGrading &g, const Covector &weight) {
    return g.is_scaling_element(g.system().dual(weight));
}

bool verify_a0(const ParabolicGrading &g, const Covector &weight, const Covector &alpha,
               const Covector &nu0, const Vector &r) {
    const auto &rs = g.system();
    if (!g.in_delta_plus_p(alpha) || !g.in_delta_plus_p(nu0))
        return false;
    if (!is_zero(r) && !g.g0ss_a().contains(r))
        return false;
    Vector a0 = rs.dual(alpha) + r;
    return sgn(rs.evaluate(weight, a0)) == 0 && sgn(rs.evaluate(nu0, a0)) == 0;
}

A0Certificate find_a0(const ParabolicGrading &g, const Covector &weight, const A0Hints &hints) {
    const auto &rs = g.system();
    A0Certificate none;
    if (weight_is_scaling(g, weight)) {
        none.reason = "weight is scaling element";
        return none;
    }
    const Vector wk = rs.dual(weight);
    const auto alphas = ordered(g, hints.alpha);
    const auto nus = ordered(g, hints.nu0);
    const std::size_t ss = g.g0ss_a().dim();

    auto accept = [&](const Covector &alpha, const Covector &nu0, const Vector &r,
                      const std::string &strategy) -> std::optional<A0Certificate> {
        if (!verify_a0(g, weight, alpha, nu0, r))
            return std::nullopt;
        return make_a0(g, alpha, nu0, r, strategy);
    };

    // (1) weight dual central but not scaling: some alpha has kappa(weight, alpha) = 0
    if (g.in_z_g0(wk)) {
        for (const auto &alpha : alphas) {
            if (sgn(rs.inner(weight, alpha)) != 0)
                continue;
            if (ss == 0) {
                for (const auto &nu0 : nus)
                    if (sgn(rs.inner(nu0, alpha)) == 0)
                        if (auto c = accept(alpha, nu0, zeros(wk.size()), "central"))
                            return *c;
            } else {
                for (const auto &nu0 : nus) {
                    Vector pr = g.project_g0ss(rs.dual(nu0));
                    Scalar den = rs.evaluate(nu0, pr);
                    if (is_zero(pr) || sgn(den) == 0)
                        continue;
                    Vector r = (-rs.inner(nu0, alpha) / den) * pr;
                    if (auto c = accept(alpha, nu0, r, "central"))
                        return *c;
                }
            }
        }
    }
    // (2) weight dual not central and dim(g0ss∩a) > 1: two linear equations for R
    if (!g.in_z_g0(wk) && ss > 1) {
        Vector prw = g.project_g0ss(wk);
        for (const auto &alpha : alphas)
            for (const auto &nu0 : nus) {
                Vector prn = g.project_g0ss(rs.dual(nu0));
                if (Subspace(prw.size(), {prw}).contains(prn))
                    continue;
                auto r = solve_r(g, weight, nu0, -rs.inner(weight, alpha), -rs.inner(nu0, alpha));
                if (r)
                    if (auto c = accept(alpha, nu0, *r, "big-g0"))
                        return *c;
            }
    }
    // (3) dim(g0ss∩a) = 1: kappa-orthogonal alpha, nu0 and R along pr(weight dual)
    if (ss == 1) {
        Vector prw = g.project_g0ss(wk);
        Scalar den = rs.evaluate(weight, prw);
        if (sgn(den) != 0)
            for (const auto &alpha : alphas)
                for (const auto &nu0 : nus) {
                    if (sgn(rs.inner(alpha, nu0)) != 0)
                        continue;
                    Vector r = (-rs.inner(weight, alpha) / den) * prw;
                    if (auto c = accept(alpha, nu0, r, "rank-one"))
                        return *c;
                }
    }
    // (4) exhaustive: every (alpha, nu0) pair
    for (const auto &alpha : alphas)
        for (const auto &nu0 : nus) {
            Vector r = zeros(wk.size());
            if (ss > 0) {
                auto sol = solve_r(g, weight, nu0, -rs.inner(weight, alpha), -rs.inner(nu0, alpha));
                if (!sol)
                    continue;
                r = *sol;
            }
            if (auto c = accept(alpha, nu0, r, "exhaustive"))
                return *c;
        }
    none.reason = "no alpha, nu0 and R satisfy both kernel conditions";
    return none;
}

bool verify_c0(const ParabolicGrading &g, const Covector &weight, const Vector &c0) {
    const auto &rs = g.system();
    if (!rs.cartan().contains(c0) || sgn(rs.evaluate(weight, c0)) != 0)
        return false;
    for (auto i : g.delta_plus_p())
        if (sgn(rs.evaluate(rs.roots()[i], c0)) <= 0)
            return false;
    return true;
}

C0Certificate find_c0(const ParabolicGrading &g, const Covector &weight) {
    const auto &rs = g.system();
    C0Certificate c;
    const Vector &e = g.grading_element();
    Scalar we = rs.evaluate(weight, e);
    Scalar ww = rs.inner(weight, weight);
    std::vector<Covector> degree_one;
    for (auto i : g.delta_plus_p())
        if (g.root_degree(i) == 1)
            degree_one.push_back(rs.roots()[i]);
    if (sgn(we) != 0 && sgn(ww) != 0) {
        c.ratio = ww / we;
        c.projection = e - (we / ww) * rs.dual(weight);
        bool first = true;
        for (const auto &nu : degree_one) {
            Scalar p = rs.inner(weight, nu);
            if (first || p > c.max_pairing)
                c.max_pairing = p;
            first = false;
        }
        c.projection_accepted = !first && c.max_pairing < c.ratio;
        if (c.projection_accepted) {
            if (!verify_c0(g, weight, c.projection))
                throw AuditFailure("projection accepted by the inequality test but fails validation");
            c.found = true;
            c.strategy = "projection";
            c.c0 = c.projection;
            return c;
        }
    }
    std::vector<Constraint> eq{{weight, 0}}, strict;
    for (const auto &nu : degree_one)
        strict.push_back({nu, 0});
    auto x = linear_feasibility(rs.rank(), eq, strict);
    if (!x) {
        c.reason = "no element of ker(weight) is positive on delta+(p+)";
        return c;
    }
    Vector c0 = rs.from_a(*x);
    if (!verify_c0(g, weight, c0)) {
        c.reason = "feasibility witness fails validation";
        return c;
    }
    c.found = true;
    c.strategy = "feasibility";
    c.c0 = c0;
    return c;
}

namespace {

bool ad_nilpotent(const LieAlgebra &g, const Vector &x) {
    Matrix m = g.ad(x);
    const std::size_t n = g.dim();
    for (std::size_t power = 1; power < n; power *= 2) {
        bool zero = true;
        for (std::size_t i = 0; i < n && zero; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(m(i, j)) != 0) {
                    zero = false;
                    break;
                }
        if (zero)
            return true;
        m = m * m;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(m(i, j)) != 0)
                return false;
    return true;
}

} // namespace

HolonomyReport holonomy_algebra(const KostantComplex &k, const Seed &seed) {
    const auto &rs = k.system();
    const auto &g = rs.algebra();
    const std::size_t n = g.dim();
    HolonomyReport h;
    auto oik = omega_image_kernel(k, seed.omega);
    h.hol = Subspace(n);
    for (const auto &v : oik.image.basis())
        h.hol.add(v);
    const auto &gm = k.grading().g_minus().basis();
    std::size_t processed = 0;
    while (processed < h.hol.dim()) {
        ++h.steps;
        std::size_t end = h.hol.dim();
        for (std::size_t i = processed; i < end; ++i)
            for (const auto &x : gm)
                h.hol.add(g.bracket(x, h.hol[i]));
        processed = end;
    }
    h.closed = true;
    for (const auto &v : h.hol.basis())
        for (const auto &x : gm)
            if (!h.hol.contains(g.bracket(x, v)))
                h.closed = false;
    h.contains_image = h.hol.contains(oik.image);

    std::set<Covector> support;
    for (const auto &v : h.hol.basis()) {
        Vector ac = rs.adapted_coordinates(v);
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(ac[j]) != 0)
                support.insert(rs.adapted_weight(j));
    }
    h.support.assign(support.begin(), support.end());
    h.support_ok = true;
    const int bound = 4 * k.grading().depth() + 4;
    for (const auto &w : h.support) {
        bool hit = false;
        for (int i = 0; i <= bound && !hit; ++i)
            for (int j = 0; j <= bound && !hit; ++j)
                hit = w == seed.zeta - Scalar(i) * seed.beta - Scalar(j) * seed.gamma;
        if (!hit)
            h.support_ok = false;
    }
    Subspace kw = weight_kernel(k.grading(), seed.beta + seed.gamma + seed.zeta);
    h.transversal = intersect(kw, h.hol).dim() == 0;
    h.nilpotent = true;
    for (const auto &v : h.hol.basis())
        if (!ad_nilpotent(g, v)) {
            h.nilpotent = false;
            break;
        }
    return h;
}

EssentialityCheck check_essential(const ParabolicGrading &g, const A0Certificate &a0) {
    const auto &rs = g.system();
    EssentialityCheck e;
    if (!a0.found) {
        e.detail = "no a0";
        return e;
    }
    if (!g.in_delta_plus_p(a0.alpha)) {
        e.detail = "alpha not in delta+(p+)";
        return e;
    }
    for (const auto &z : g.z_g0_a().basis()) {
        if (sgn(g.algebra().killing_form(z, a0.r)) != 0) {
            e.detail = "R is not orthogonal to z(g0)∩a";
            return e;
        }
        if (g.algebra().killing_form(z, a0.a0) != rs.evaluate(a0.alpha, z)) {
            e.detail = "lambda(a0) differs from alpha on z(g0)∩a";
            return e;
        }
    }
    if (!g.is_scaling_element(g.grading_element())) {
        e.detail = "no scaling element";
        return e;
    }
    e.ok = true;
    e.detail = "lambda(a0) = alpha(Z) != 0 for every scaling Z";
    return e;
}

ConstructionCertificate certify_construction(const KostantComplex &k, const Seed &seed,
                                             const A0Hints &hints) {
    ConstructionCertificate c;
    const auto &g = k.grading();
    const Covector w = seed.beta + seed.gamma + seed.zeta;
    auto fail = [&](const std::string &why) {
        if (c.failed.empty())
            c.failed = why;
    };
    c.seed = certify_harmonic_seed(k, seed);
    if (c.seed.verdict != SeedVerdict::HarmonicSeed) {
        fail(c.seed.reason);
        return c;
    }
    c.weight_scaling = weight_is_scaling(g, w);
    if (c.weight_scaling) {
        c.a0.reason = "weight is scaling element";
        fail("weight is scaling element");
        return c;
    }
    c.a0 = find_a0(g, w, hints);
    if (!c.a0.found)
        fail("a0: " + c.a0.reason);
    c.essential = check_essential(g, c.a0);
    if (c.a0.found && !c.essential.ok)
        fail("essentiality: " + c.essential.detail);
    c.c0 = find_c0(g, w);
    if (!c.c0.found)
        fail("c0: " + c.c0.reason);
    c.holonomy = holonomy_algebra(k, seed);
    if (!c.holonomy->closed)
        fail("holonomy not closed under g-");
    if (!c.holonomy->support_ok)
        fail("holonomy weights outside zeta - i beta - j gamma");
    if (!c.holonomy->transversal)
        fail("holonomy meets ker(beta+gamma+zeta)");
    if (!c.holonomy->nilpotent)
        fail("holonomy is not nilpotent");
    c.pass = c.failed.empty();
    return c;
}

} // namespace curvtree
